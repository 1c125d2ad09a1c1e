//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] is a map from exponent vectors to nonzero rational
//! coefficients. Terms are kept in graded-lex order, which is also the order
//! used for serialization. A [`PolyMap`] is an n-tuple of polynomials in n
//! variables; it is read either as the endomorphism `x_i -> f_i` or as the
//! derivation `f_1 d_1 + ... + f_n d_n` (see `lsalg`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector `x_1^{s_1} ... x_n^{s_n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// The monomial with the exponent of `index` lowered by one, together
    /// with the old exponent; `None` when the variable does not occur.
    fn lower(&self, index: usize) -> Option<(Monomial, u32)> {
        let e = self.exps[index];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[index] -= 1;
        Some((
            Monomial {
                exps,
                degree: self.degree - 1,
            },
            e,
        ))
    }
}

/// Graded lexicographic: total degree first, then exponent vectors compared
/// left to right.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of `Q[x_1, ..., x_n]`.
///
/// The arithmetic operators panic on a variable-count mismatch; the
/// `try_*` methods report it as an error instead.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_index` (0-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, index), Rational::one());
        p
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    /// Sums the given terms; repeated monomials are combined and zeros dropped.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::VarCountMismatch {
                    left: nvars,
                    right: exps.len(),
                });
            }
            p.add_term(Monomial::new(exps), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree -1.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .next_back()
            .map_or(-1, |m| i64::from(m.degree()))
    }

    /// Smallest total degree of a term, or `None` for zero.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Does `x_index` occur in any term?
    pub fn involves(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exps[index] > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `x_index` (0-based).
    pub fn partial(&self, index: usize) -> Result<Polynomial> {
        if index >= self.nvars {
            return Err(Error::VarIndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((lowered, e)) = m.lower(index) {
                out.add_term(lowered, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        Ok(out)
    }

    /// `p(images_1, ..., images_n)`, fully expanded.
    pub fn substitute(&self, images: &PolyMap) -> Result<Polynomial> {
        if images.nvars() != self.nvars {
            return Err(Error::VarCountMismatch {
                left: self.nvars,
                right: images.nvars(),
            });
        }
        let target = images.components[0].nvars;
        let mut powers: Vec<Vec<Polynomial>> = images
            .components
            .iter()
            .map(|f| vec![Polynomial::one(target), f.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (j, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[j];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Replaces `x_index` by the constant `value`; the variable count is kept.
    pub fn specialize(&self, index: usize, value: &Rational) -> Result<Polynomial> {
        if index >= self.nvars {
            return Err(Error::VarIndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            let e = std::mem::replace(&mut exps[index], 0);
            let factor = num_traits::pow(value.clone(), e as usize);
            out.add_term(Monomial::new(exps), c * factor);
        }
        Ok(out)
    }

    /// Coefficients of the `t`-expansion of `p(x_1 + t f_1, ..., x_n + t f_n)`.
    ///
    /// The returned series is exact: entry `i` is the coefficient of `t^i`
    /// and has `max(deg p, 0) + 1` entries, since a term of degree `k`
    /// contributes to powers `t^0..t^k` only.
    pub fn shift_expand(&self, map: &PolyMap) -> Result<TSeries> {
        if map.nvars() != self.nvars {
            return Err(Error::VarCountMismatch {
                left: self.nvars,
                right: map.nvars(),
            });
        }
        let images: Vec<TSeries> = map
            .components
            .iter()
            .enumerate()
            .map(|(j, f)| TSeries::exact(vec![Polynomial::var(self.nvars, j), f.clone()]))
            .collect();
        let mut out = substitute_series(self, &images, None)?;
        let len = self.degree().max(0) as usize + 1;
        out.coeffs.resize(len, Polynomial::zero(self.nvars));
        Ok(out)
    }

    /// Keeps only the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial addition");
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

/// Displays with the variable names `x1, ..., xn`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.format(&names))
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl Polynomial {
    /// Canonical text: terms in descending graded-lex order, explicit `*`
    /// and `^`, `0` for the zero polynomial.
    pub fn format<S: AsRef<str>>(&self, names: &[S]) -> String {
        assert_eq!(names.len(), self.nvars, "one name per variable");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(format_rational(&abs));
            }
            for (j, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[j].as_ref().to_string()),
                    _ => factors.push(format!("{}^{e}", names[j].as_ref())),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// An n-tuple of polynomials in n variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMap {
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::MapShape {
                components: 0,
                nvars: 0,
            });
        }
        if let Some(bad) = components.iter().find(|p| p.nvars != n) {
            return Err(Error::MapShape {
                components: n,
                nvars: bad.nvars,
            });
        }
        Ok(PolyMap { components })
    }

    /// The identity tuple `X = (x_1, ..., x_n)`.
    pub fn identity(nvars: usize) -> Self {
        PolyMap {
            components: (0..nvars).map(|i| Polynomial::var(nvars, i)).collect(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        PolyMap {
            components: vec![Polynomial::zero(nvars); nvars],
        }
    }

    /// The tuple with `p` in slot `index` and zeros elsewhere.
    pub fn unit(nvars: usize, index: usize, p: Polynomial) -> Self {
        let mut m = Self::zero(nvars);
        m.components[index] = p;
        m
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Largest total degree of a component (-1 for the zero map).
    pub fn degree(&self) -> i64 {
        self.components.iter().map(Polynomial::degree).max().unwrap_or(-1)
    }

    pub(crate) fn check_same(&self, other: &PolyMap) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::VarCountMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_poly(&self, p: &Polynomial) -> Result<()> {
        if self.nvars() != p.nvars {
            return Err(Error::VarCountMismatch {
                left: self.nvars(),
                right: p.nvars,
            });
        }
        Ok(())
    }

    pub fn map<F: FnMut(&Polynomial) -> Polynomial>(&self, f: F) -> PolyMap {
        PolyMap {
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn try_map<F>(&self, f: F) -> Result<PolyMap>
    where
        F: FnMut(&Polynomial) -> Result<Polynomial>,
    {
        Ok(PolyMap {
            components: self.components.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn scale(&self, c: &Rational) -> PolyMap {
        self.map(|p| p.scale(c))
    }

    /// Multiplies every component by the polynomial `p`.
    pub fn mul_poly(&self, p: &Polynomial) -> PolyMap {
        self.map(|f| f * p)
    }

    /// The composed endomorphism: component `i` is `f_i(images)`.
    pub fn substitute(&self, images: &PolyMap) -> Result<PolyMap> {
        self.try_map(|f| f.substitute(images))
    }

    pub fn specialize(&self, index: usize, value: &Rational) -> Result<PolyMap> {
        self.try_map(|f| f.specialize(index, value))
    }

    /// Formats as `(f_1, ..., f_n)` with the given variable names.
    pub fn format<S: AsRef<str>>(&self, names: &[S]) -> String {
        let parts: Vec<String> = self.components.iter().map(|p| p.format(names)).collect();
        format!("({})", parts.join(", "))
    }
}

impl Add for &PolyMap {
    type Output = PolyMap;
    fn add(self, rhs: &PolyMap) -> PolyMap {
        assert_eq!(self.nvars(), rhs.nvars(), "polynomial map addition");
        PolyMap {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &PolyMap {
    type Output = PolyMap;
    fn sub(self, rhs: &PolyMap) -> PolyMap {
        assert_eq!(self.nvars(), rhs.nvars(), "polynomial map subtraction");
        PolyMap {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &PolyMap {
    type Output = PolyMap;
    fn neg(self) -> PolyMap {
        self.map(|p| -p)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.format(&names))
    }
}

/// A power series in an auxiliary parameter `t` with polynomial coefficients.
///
/// `order` is `None` for an exact (finite) expansion, or `Some(M)` when every
/// coefficient past `t^M` has been discarded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TSeries {
    nvars: usize,
    coeffs: Vec<Polynomial>,
    order: Option<usize>,
}

impl TSeries {
    /// An exact series; `coeffs` must be nonempty.
    pub fn exact(coeffs: Vec<Polynomial>) -> Self {
        let nvars = coeffs[0].nvars;
        TSeries {
            nvars,
            coeffs,
            order: None,
        }
    }

    pub fn truncated(mut coeffs: Vec<Polynomial>, order: usize) -> Self {
        let nvars = coeffs[0].nvars;
        coeffs.truncate(order + 1);
        TSeries {
            nvars,
            coeffs,
            order: Some(order),
        }
    }

    pub fn constant(p: Polynomial, order: Option<usize>) -> Self {
        TSeries {
            nvars: p.nvars,
            coeffs: vec![p],
            order,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Polynomial> {
        self.coeffs
    }

    /// Coefficient of `t^i`; zero past the stored length.
    pub fn coeff(&self, i: usize) -> Polynomial {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn min_order(a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        let order = Self::min_order(self.order, other.order);
        let mut len = self.coeffs.len().max(other.coeffs.len());
        if let Some(m) = order {
            len = len.min(m + 1);
        }
        let coeffs = (0..len).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        TSeries {
            nvars: self.nvars,
            coeffs,
            order,
        }
    }

    /// Cauchy product, truncated at the smaller declared order.
    pub fn mul(&self, other: &TSeries) -> TSeries {
        let order = Self::min_order(self.order, other.order);
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(m) = order {
            len = len.min(m + 1);
        }
        let mut coeffs = vec![Polynomial::zero(self.nvars); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let slot = std::mem::replace(&mut coeffs[i + j], Polynomial::zero(self.nvars));
                coeffs[i + j] = slot + prod;
            }
        }
        TSeries {
            nvars: self.nvars,
            coeffs,
            order,
        }
    }

    pub fn scale(&self, c: &Rational) -> TSeries {
        TSeries {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
            order: self.order,
        }
    }
}

/// `p(s_1, ..., s_n)` where each `s_j` is a `t`-series. The result is truncated
/// at `order` when given (in addition to any truncation carried by the images).
pub fn substitute_series(p: &Polynomial, images: &[TSeries], order: Option<usize>) -> Result<TSeries> {
    if images.len() != p.nvars {
        return Err(Error::VarCountMismatch {
            left: p.nvars,
            right: images.len(),
        });
    }
    let target = images.first().map_or(p.nvars, TSeries::nvars);
    let one = TSeries::constant(Polynomial::one(target), order);
    let mut powers: Vec<Vec<TSeries>> = images
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.order = TSeries::min_order(s.order, order);
            if let Some(m) = s.order {
                s.coeffs.truncate(m + 1);
            }
            vec![one.clone(), s]
        })
        .collect();
    let mut out = TSeries::constant(Polynomial::zero(target), order);
    for (m, c) in p.terms() {
        let mut term = one.scale(c);
        for (j, &e) in m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let cache = &mut powers[j];
            while cache.len() <= e as usize {
                let next = cache[cache.len() - 1].mul(&cache[1]);
                cache.push(next);
            }
            term = term.mul(&cache[e as usize]);
        }
        out = out.add(&term);
    }
    Ok(out)
}
