//! The action of NSymm on polynomials through `X + tF`, and the formal
//! inverse `(X + tF)^{-1} = X + t F_1 + t^2 F_2 + ...` computed three ways.
//!
//! `Z_i` acts on `a` as the coefficient of `t^i` in `a(x + tF)`; a word acts by
//! composing these operators, rightmost letter first.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::nsymm::composition::{compositions_of, Composition};
use crate::nsymm::element::NSymmElement;
use crate::nsymm::families::{generator, Family};
use crate::polyring::{substitute_series, PolyMap, Polynomial, Rational, TSeries};

/// `lambda(Z_i)(a)`: the `t^i` coefficient of `a(x + tF)`. `Z_0` acts as the
/// identity.
pub fn lambda_z(i: u32, a: &Polynomial, f: &PolyMap) -> Result<Polynomial> {
    Ok(a.shift_expand(f)?.coeff(i as usize))
}

/// `lambda(Z_{i_1}) ... lambda(Z_{i_m})(a)`.
pub fn lambda_word(word: &[u32], a: &Polynomial, f: &PolyMap) -> Result<Polynomial> {
    let mut acc = a.clone();
    for &i in word.iter().rev() {
        if acc.is_zero() {
            break;
        }
        acc = lambda_z(i, &acc, f)?;
    }
    Ok(acc)
}

/// `lambda(x)(a)` for a combination of words.
pub fn lambda_element(x: &NSymmElement, a: &Polynomial, f: &PolyMap) -> Result<Polynomial> {
    let mut out = Polynomial::zero(a.nvars());
    for (w, c) in x.terms() {
        out = out + lambda_word(w, a, f)?.scale(c);
    }
    Ok(out)
}

/// Memoized `lambda(Z^w)(X)`, sharing work between words with a common suffix.
#[derive(Debug)]
pub struct ActionOnX {
    f: PolyMap,
    values: HashMap<Vec<u32>, PolyMap>,
    expansions: HashMap<Vec<u32>, Vec<TSeries>>,
}

impl ActionOnX {
    pub fn new(f: &PolyMap) -> Self {
        ActionOnX {
            f: f.clone(),
            values: HashMap::new(),
            expansions: HashMap::new(),
        }
    }

    pub fn base(&self) -> &PolyMap {
        &self.f
    }

    /// `lambda(Z^w)(X)`, componentwise.
    pub fn word(&mut self, w: &[u32]) -> Result<PolyMap> {
        if w.is_empty() {
            return Ok(PolyMap::identity(self.f.nvars()));
        }
        if let Some(v) = self.values.get(w) {
            return Ok(v.clone());
        }
        let rest = &w[1..];
        if !self.expansions.contains_key(rest) {
            let inner = self.word(rest)?;
            let series = inner
                .components()
                .iter()
                .map(|p| p.shift_expand(&self.f))
                .collect::<Result<Vec<_>>>()?;
            self.expansions.insert(rest.to_vec(), series);
        }
        let comps = self.expansions[rest]
            .iter()
            .map(|s| s.coeff(w[0] as usize))
            .collect();
        let value = PolyMap::new(comps)?;
        self.values.insert(w.to_vec(), value.clone());
        Ok(value)
    }

    /// `lambda(x)(X)`.
    pub fn element(&mut self, x: &NSymmElement) -> Result<PolyMap> {
        let mut out = PolyMap::zero(self.f.nvars());
        for (w, c) in x.terms() {
            out = &out + &self.word(w)?.scale(c);
        }
        Ok(out)
    }
}

/// Which algorithm produced a formal inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Route {
    /// Order-by-order solving of `G(X + tF) = X`.
    Direct,
    /// `F_m = -lambda(Psi_m)(X)`.
    Psi,
    /// The sum over m-reduced compositions and their refinements, evaluated
    /// with right powers.
    Reduced,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Direct, Route::Psi, Route::Reduced];

    pub fn name(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Psi => "psi",
            Route::Reduced => "reduced",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Route::Direct),
            "psi" => Ok(Route::Psi),
            "reduced" => Ok(Route::Reduced),
            other => Err(Error::InvalidArgument(format!("unknown route `{other}`"))),
        }
    }
}

/// `F_1, ..., F_M` of `(X + tF)^{-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalInverse {
    pub base: PolyMap,
    pub order: usize,
    /// `coefficients[m - 1] = F_m`.
    pub coefficients: Vec<PolyMap>,
    pub route: Route,
    pub notes: Vec<String>,
}

/// Result of composing the truncated inverse with `X + tF` on both sides.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InverseCheck {
    /// `H(X + tF) = X mod t^{M+1}`.
    pub left: bool,
    /// `(X + tF)(H) = X mod t^{M+1}`.
    pub right: bool,
}

impl InverseCheck {
    pub fn holds(&self) -> bool {
        self.left && self.right
    }
}

fn t_power(nvars: usize, k: usize, order: usize) -> TSeries {
    let mut coeffs = vec![Polynomial::zero(nvars); k + 1];
    coeffs[k] = Polynomial::one(nvars);
    TSeries::truncated(coeffs, order)
}

fn is_identity_mod(series: &[TSeries], nvars: usize, order: usize) -> bool {
    series.iter().enumerate().all(|(j, s)| {
        (0..=order).all(|i| {
            let expected = if i == 0 {
                Polynomial::var(nvars, j)
            } else {
                Polynomial::zero(nvars)
            };
            s.coeff(i) == expected
        })
    })
}

impl FormalInverse {
    /// `F_m` for `1 <= m <= order`.
    pub fn coefficient(&self, m: usize) -> &PolyMap {
        &self.coefficients[m - 1]
    }

    /// `X + t F_1 + ... + t^M F_M`, one series per component.
    pub fn series(&self) -> Vec<TSeries> {
        let n = self.base.nvars();
        (0..n)
            .map(|j| {
                let mut coeffs = vec![Polynomial::var(n, j)];
                coeffs.extend(self.coefficients.iter().map(|c| c.component(j).clone()));
                TSeries::truncated(coeffs, self.order)
            })
            .collect()
    }

    /// Composes with `X + tF` in both orders, modulo `t^{M+1}`.
    pub fn verify(&self) -> Result<InverseCheck> {
        let n = self.base.nvars();
        let m = self.order;
        let h = self.series();
        let k: Vec<TSeries> = (0..n)
            .map(|j| TSeries::truncated(vec![Polynomial::var(n, j), self.base.component(j).clone()], m))
            .collect();
        let t = t_power(n, 1, m);

        let mut left = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = k[j].clone();
            for (idx, c) in self.coefficients.iter().enumerate() {
                let part = substitute_series(c.component(j), &k, Some(m))?;
                acc = acc.add(&part.mul(&t_power(n, idx + 1, m)));
            }
            left.push(acc);
        }

        let mut right = Vec::with_capacity(n);
        for j in 0..n {
            let fj = substitute_series(self.base.component(j), &h, Some(m))?;
            right.push(h[j].add(&fj.mul(&t)));
        }

        Ok(InverseCheck {
            left: is_identity_mod(&left, n, m),
            right: is_identity_mod(&right, n, m),
        })
    }

    /// The first `m` where the two results differ.
    pub fn first_difference(&self, other: &FormalInverse) -> Option<usize> {
        let common = self.order.min(other.order);
        (1..=common).find(|&m| self.coefficient(m) != other.coefficient(m))
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidArgument("the order must be at least 1".into()));
    }
    Ok(())
}

/// Solves `G(X + tF) = X` one power of `t` at a time:
/// `G_1 = -F` and `G_m = -sum_{k<m} lambda(Z_{m-k})(G_k)`.
pub fn formal_inverse_direct(f: &PolyMap, order: usize) -> Result<FormalInverse> {
    check_order(order)?;
    let n = f.nvars();
    let mut coefficients: Vec<PolyMap> = Vec::with_capacity(order);
    let mut expansions: Vec<Vec<TSeries>> = Vec::with_capacity(order);
    for m in 1..=order {
        let mut g = if m == 1 { -f } else { PolyMap::zero(n) };
        for (k, series) in expansions.iter().enumerate() {
            let shift = m - (k + 1);
            let contribution = PolyMap::new(series.iter().map(|s| s.coeff(shift)).collect())?;
            g = &g - &contribution;
        }
        expansions.push(
            g.components()
                .iter()
                .map(|p| p.shift_expand(f))
                .collect::<Result<Vec<_>>>()?,
        );
        coefficients.push(g);
    }
    Ok(FormalInverse {
        base: f.clone(),
        order,
        coefficients,
        route: Route::Direct,
        notes: Vec::new(),
    })
}

/// `F_m = -lambda(Psi_m)(X)`.
pub fn formal_inverse_psi(f: &PolyMap, order: usize) -> Result<FormalInverse> {
    check_order(order)?;
    let bound = order as u32;
    let mut action = ActionOnX::new(f);
    let mut coefficients = Vec::with_capacity(order);
    for m in 1..=bound {
        let psi = generator(Family::Psi, m, bound)?;
        coefficients.push(-&action.element(&psi)?);
    }
    Ok(FormalInverse {
        base: f.clone(),
        order,
        coefficients,
        route: Route::Psi,
        notes: Vec::new(),
    })
}

/// The m-reduced compositions of weight `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MReducedSet {
    pub m: u32,
    pub n: u32,
    pub members: Vec<Composition>,
}

/// With the parts written `(i_k, ..., i_1)` (so `i_1` is the last part and acts
/// on `X` first): `i_1 = 1` and `i_j <= (i_1 + ... + i_{j-1})(m - 1) + 1` for
/// `j >= 2`. For `j = 2` the bound reads `i_2 <= m`.
pub fn is_m_reduced(parts: &[u32], m: u32) -> bool {
    let mut read = parts.iter().rev();
    if read.next() != Some(&1) {
        return false;
    }
    let mut partial: i64 = 1;
    for &p in read {
        if i64::from(p) > partial * (i64::from(m) - 1) + 1 {
            return false;
        }
        partial += i64::from(p);
    }
    true
}

pub fn enumerate_m_reduced(m: u32, n: u32) -> MReducedSet {
    let members = compositions_of(n)
        .into_iter()
        .filter(|c| !c.is_empty() && is_m_reduced(c, m))
        .map(|c| Composition::new(c).expect("positive parts"))
        .collect();
    MReducedSet { m, n, members }
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `(J, coefficient)` pairs of the reduced formula for `F_i`:
/// `(-1)^{l(I) + |J| - l(J)} / pi_u(mirror J, mirror I)` summed over
/// `I` m-reduced of weight `i` and `J` refining `I`. Refinements with a part
/// `>= p` are dropped when `truncate = Some(p)`.
pub fn reduced_terms(i: u32, m: u32, truncate: Option<usize>) -> Vec<(Vec<u32>, Rational)> {
    let mut acc: HashMap<Vec<u32>, Rational> = HashMap::new();
    for big_i in enumerate_m_reduced(m, i).members {
        for r in big_i.refinements() {
            if let Some(p) = truncate {
                if r.fine.parts().iter().any(|&j| j as usize >= p) {
                    continue;
                }
            }
            let exponent = big_i.len() + r.fine.weight() as usize - r.fine.len();
            let c = sign(exponent) * r.inverse_mirrored_pi_u();
            *acc.entry(r.fine.into_parts()).or_insert_with(Rational::zero) += c;
        }
    }
    let mut out: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort();
    out
}

/// Right powers `D^{[1..=order]}` and the certificate `p` with `D^{[p]} = 0`,
/// if one occurs within the computed range.
fn right_powers_with_certificate(f: &PolyMap, order: usize) -> (Vec<PolyMap>, Option<usize>) {
    let powers = f.right_powers(order.max(2));
    let p = powers.iter().position(PolyMap::is_zero).map(|k| (k + 1).max(2));
    (powers, p)
}

/// `D^{[j_1]}(D^{[j_2]}(... D^{[j_s]}(X)))`, memoized by suffix.
struct PowerWords<'a> {
    powers: &'a [PolyMap],
    memo: HashMap<Vec<u32>, PolyMap>,
}

impl PowerWords<'_> {
    fn eval(&mut self, j: &[u32]) -> Result<PolyMap> {
        if let Some(v) = self.memo.get(j) {
            return Ok(v.clone());
        }
        let power = &self.powers[j[0] as usize - 1];
        let value = if j.len() == 1 {
            power.clone()
        } else {
            let inner = self.eval(&j[1..])?;
            if power.is_zero() || inner.is_zero() {
                PolyMap::zero(inner.nvars())
            } else {
                power.apply_to_map(&inner)?
            }
        };
        self.memo.insert(j.to_vec(), value.clone());
        Ok(value)
    }
}

/// `F_i` from the composition sum over m-reduced `I` and `J` refining `I`,
/// with `D^J` read as the operator composition of right powers applied to `X`.
///
/// When `D^{[p]} = 0` for some `p <= max(order, 2)`, every `J` with a part
/// `>= p` is skipped. Otherwise the full sum is taken and a note says so.
pub fn formal_inverse_reduced(f: &PolyMap, order: usize) -> Result<FormalInverse> {
    check_order(order)?;
    let m = f.degree().max(0) as u32;
    let (powers, p) = right_powers_with_certificate(f, order);
    let mut notes = Vec::new();
    match p {
        Some(p) => notes.push(format!(
            "D^[{p}] = 0; refinements with a part >= {p} are skipped"
        )),
        None => notes.push(format!(
            "warning: no right-nilpotency certificate up to {}; summed over all refinements",
            order.max(2)
        )),
    }
    let mut words = PowerWords {
        powers: &powers,
        memo: HashMap::new(),
    };
    let n = f.nvars();
    let mut coefficients = Vec::with_capacity(order);
    for i in 1..=order as u32 {
        let mut acc = PolyMap::zero(n);
        for (j, c) in reduced_terms(i, m, p) {
            acc = &acc + &words.eval(&j)?.scale(&c);
        }
        coefficients.push(acc);
    }
    Ok(FormalInverse {
        base: f.clone(),
        order,
        coefficients,
        route: Route::Reduced,
        notes,
    })
}

pub fn formal_inverse(f: &PolyMap, order: usize, route: Route) -> Result<FormalInverse> {
    match route {
        Route::Direct => formal_inverse_direct(f, order),
        Route::Psi => formal_inverse_psi(f, order),
        Route::Reduced => formal_inverse_reduced(f, order),
    }
}

/// The same composition sum with `D^J` replaced by the left-normed
/// left-symmetric product `((D^{[j_1]} D^{[j_2]}) ...) D^{[j_s]}`.
///
/// Exploratory: nothing asserts that this reproduces the inverse.
pub fn left_normed_variant(f: &PolyMap, order: usize) -> Result<Vec<PolyMap>> {
    check_order(order)?;
    let m = f.degree().max(0) as u32;
    let (powers, p) = right_powers_with_certificate(f, order);
    let n = f.nvars();
    let mut out = Vec::with_capacity(order);
    for i in 1..=order as u32 {
        let mut acc = PolyMap::zero(n);
        for (j, c) in reduced_terms(i, m, p) {
            let mut prod = powers[j[0] as usize - 1].clone();
            for &part in &j[1..] {
                prod = prod.ls_product(&powers[part as usize - 1])?;
            }
            acc = &acc + &prod.scale(&c);
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parse::parse_polynomial;
    use crate::polyring::int;

    fn map(texts: &[&str], vars: &[&str]) -> PolyMap {
        PolyMap::new(texts.iter().map(|t| parse_polynomial(t, vars).unwrap()).collect()).unwrap()
    }

    #[test]
    fn z1_acts_as_the_derivation() {
        let (d, _) = fixtures::bass_derivation();
        let w = fixtures::bass_w();
        assert_eq!(lambda_z(1, &w, &d).unwrap(), d.apply(&w).unwrap());
        assert_eq!(lambda_z(0, &w, &d).unwrap(), w);
    }

    #[test]
    fn degree_one_inputs_stop_at_t() {
        let (d, _) = fixtures::essen_gorni_zampieri();
        for j in 0..4 {
            let xj = Polynomial::var(4, j);
            assert!(lambda_z(2, &xj, &d).unwrap().is_zero());
            assert!(lambda_z(7, &xj, &d).unwrap().is_zero());
        }
    }

    #[test]
    fn empty_word_is_identity() {
        let (d, _) = fixtures::bass_derivation();
        let w = fixtures::bass_w();
        assert_eq!(lambda_word(&[], &w, &d).unwrap(), w);
    }

    #[test]
    fn linear_nilpotent_inverse() {
        let v = ["x", "y"];
        let f = map(&["y", "0"], &v);
        for route in Route::ALL {
            let inv = formal_inverse(&f, 5, route).unwrap();
            assert_eq!(inv.coefficient(1), &-&f);
            for m in 2..=5 {
                assert!(inv.coefficient(m).is_zero(), "{route} F_{m}");
            }
            assert!(inv.verify().unwrap().holds());
        }
    }

    #[test]
    fn second_coefficient_is_jf() {
        let v = ["x", "y"];
        let f = map(&["x^2 + y", "x*y - 1"], &v);
        let inv = formal_inverse_direct(&f, 2).unwrap();
        assert_eq!(inv.coefficient(2), &f.ls_product(&f).unwrap());
    }

    #[test]
    fn routes_agree_on_the_example() {
        let (f, _) = fixtures::essen_gorni_zampieri();
        let direct = formal_inverse_direct(&f, 6).unwrap();
        let psi = formal_inverse_psi(&f, 6).unwrap();
        let reduced = formal_inverse_reduced(&f, 6).unwrap();
        assert_eq!(direct.first_difference(&psi), None);
        assert_eq!(direct.first_difference(&reduced), None);
        assert!(reduced.notes[0].starts_with("D^[4] = 0"));
        assert!(direct.verify().unwrap().holds());
    }

    #[test]
    fn non_nilpotent_fallback_is_still_exact() {
        let (f, _) = fixtures::bass_derivation();
        let direct = formal_inverse_direct(&f, 4).unwrap();
        let reduced = formal_inverse_reduced(&f, 4).unwrap();
        assert!(reduced.notes[0].starts_with("warning"));
        assert_eq!(direct, FormalInverse { route: Route::Direct, notes: vec![], ..reduced });
    }

    #[test]
    fn broken_inverse_is_detected() {
        let v = ["x", "y"];
        let f = map(&["x^2", "y"], &v);
        let mut inv = formal_inverse_direct(&f, 3).unwrap();
        inv.coefficients[2] = inv.coefficients[2].scale(&int(2));
        let check = inv.verify().unwrap();
        assert!(!check.left && !check.right);
    }

    #[test]
    fn m_reduced_small_cases() {
        for m in 0..4 {
            assert_eq!(enumerate_m_reduced(m, 1).members, vec![Composition::new(vec![1]).unwrap()]);
        }
        let two = enumerate_m_reduced(1, 2).members;
        assert_eq!(two, vec![Composition::new(vec![1, 1]).unwrap()]);
        assert!(is_m_reduced(&[2, 1], 2));
        assert!(!is_m_reduced(&[1, 2], 3));
        assert!(!is_m_reduced(&[3, 1], 2));
        assert!(is_m_reduced(&[3, 2, 1], 2));
        assert!(!is_m_reduced(&[1, 1], 0));
    }

    #[test]
    fn order_must_be_positive() {
        let f = PolyMap::identity(2);
        for route in Route::ALL {
            assert!(formal_inverse(&f, 0, route).is_err());
        }
    }
}
