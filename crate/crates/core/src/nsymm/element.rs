use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::{format_rational, Rational};

use super::composition::compositions_of;

/// A word `Z_{i_1} ... Z_{i_m}`, stored as its index list. The empty word is
/// the unit.
pub type Word = Vec<u32>;

pub fn word_weight(w: &[u32]) -> u32 {
    w.iter().sum()
}

/// A rational combination of words in the free generators, truncated at a
/// weight bound: every product dropping past the bound is discarded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NSymmElement {
    bound: u32,
    terms: BTreeMap<Word, Rational>,
}

impl NSymmElement {
    pub fn zero(bound: u32) -> Self {
        NSymmElement {
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(bound: u32) -> Self {
        let mut x = Self::zero(bound);
        x.terms.insert(Word::new(), Rational::one());
        x
    }

    /// The single word `w` with coefficient 1.
    pub fn word(w: Word, bound: u32) -> Result<Self> {
        let weight = word_weight(&w);
        if weight > bound {
            return Err(Error::WeightOverBound { weight, bound });
        }
        if w.contains(&0) {
            return Err(Error::InvalidArgument("word letters must be positive".into()));
        }
        let mut x = Self::zero(bound);
        x.terms.insert(w, Rational::one());
        Ok(x)
    }

    /// Builds from terms; words above the bound are dropped.
    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(bound: u32, terms: I) -> Self {
        let mut x = Self::zero(bound);
        for (w, c) in terms {
            if word_weight(&w) <= bound {
                x.add_term(w, c);
            }
        }
        x
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn coeff(&self, w: &[u32]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn counit(&self) -> Rational {
        self.coeff(&[])
    }

    /// The weight shared by all terms, if there is exactly one.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(|w| word_weight(w));
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn homogeneous_part(&self, weight: u32) -> NSymmElement {
        NSymmElement {
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| word_weight(w) == weight)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check_bound(&self, other: &NSymmElement) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch {
                left: self.bound,
                right: other.bound,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &NSymmElement) -> Result<NSymmElement> {
        self.check_bound(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &NSymmElement) -> Result<NSymmElement> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    /// Concatenation product, truncated at the bound.
    pub fn try_mul(&self, other: &NSymmElement) -> Result<NSymmElement> {
        self.check_bound(other)?;
        let mut out = NSymmElement::zero(self.bound);
        for (a, ca) in &self.terms {
            let wa = word_weight(a);
            for (b, cb) in &other.terms {
                if wa + word_weight(b) > self.bound {
                    continue;
                }
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> NSymmElement {
        if c.is_zero() {
            return NSymmElement::zero(self.bound);
        }
        NSymmElement {
            bound: self.bound,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// The anti-automorphism fixing every generator: each word is reversed.
    pub fn reverse_words(&self) -> NSymmElement {
        NSymmElement {
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.iter().rev().copied().collect(), c.clone()))
                .collect(),
        }
    }

    /// Coproduct, extended multiplicatively from
    /// `Delta(Z_n) = sum_{i+j=n} Z_i (x) Z_j` with `Z_0 = 1`.
    pub fn coproduct(&self) -> NSymmTensor {
        let mut out = NSymmTensor::zero(self.bound);
        for (w, c) in &self.terms {
            let mut acc: BTreeMap<(Word, Word), Rational> = BTreeMap::new();
            acc.insert((Word::new(), Word::new()), c.clone());
            for &letter in w {
                let mut next = BTreeMap::new();
                for ((l, r), coef) in &acc {
                    for i in 0..=letter {
                        let mut l2 = l.clone();
                        let mut r2 = r.clone();
                        if i > 0 {
                            l2.push(i);
                        }
                        if letter - i > 0 {
                            r2.push(letter - i);
                        }
                        let e = next.entry((l2, r2)).or_insert_with(Rational::zero);
                        *e += coef;
                    }
                }
                acc = next;
            }
            for (k, v) in acc {
                out.add_term(k, v);
            }
        }
        out
    }

    /// Antipode: the anti-homomorphism with
    /// `S(Z_n) = sum over compositions (i_1..i_p) of n of (-1)^p Z_{i_1}...Z_{i_p}`.
    pub fn antipode(&self) -> NSymmElement {
        let mut cache: BTreeMap<u32, NSymmElement> = BTreeMap::new();
        let mut out = NSymmElement::zero(self.bound);
        for (w, c) in &self.terms {
            let mut acc = NSymmElement::one(self.bound).scale(c);
            for &letter in w.iter().rev() {
                let s = cache
                    .entry(letter)
                    .or_insert_with(|| antipode_of_generator(letter, self.bound));
                acc = acc.try_mul(s).expect("same bound");
            }
            out = out.try_add(&acc).expect("same bound");
        }
        out
    }

    /// `Delta(x) == x (x) 1 + 1 (x) x`.
    pub fn is_primitive(&self) -> bool {
        let mut residual = self.coproduct();
        for (w, c) in &self.terms {
            residual.add_term((w.clone(), Word::new()), -c);
            residual.add_term((Word::new(), w.clone()), -c);
        }
        residual.is_zero()
    }

    /// Terms ordered by weight, then length, then lexicographically.
    pub fn sorted_terms(&self) -> Vec<(&Word, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| display_key(a.0).cmp(&display_key(b.0)));
        v
    }

    /// Text form with the generators written `{symbol}{index}`, e.g.
    /// `3*Z3 - 2*Z1*Z2 - Z2*Z1 + Z1*Z1*Z1`.
    pub fn format(&self, symbol: &str) -> String {
        format_linear_combination(self.sorted_terms().into_iter(), |w| format_word(w, symbol))
    }
}

fn antipode_of_generator(n: u32, bound: u32) -> NSymmElement {
    NSymmElement::from_terms(
        bound,
        compositions_of(n).into_iter().map(|w| {
            let sign = if w.len() % 2 == 0 { 1 } else { -1 };
            (w, Rational::from_integer(sign.into()))
        }),
    )
}

pub(crate) fn display_key(w: &[u32]) -> (u32, usize, Vec<u32>) {
    (word_weight(w), w.len(), w.to_vec())
}

pub(crate) fn format_word(w: &[u32], symbol: &str) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|i| format!("{symbol}{i}"))
        .collect::<Vec<_>>()
        .join("*")
}

/// Joins `c_1*m_1 + c_2*m_2 - ...`, omitting unit coefficients.
pub(crate) fn format_linear_combination<'a, T: 'a, I, F>(terms: I, mut render: F) -> String
where
    I: Iterator<Item = (&'a T, &'a Rational)>,
    F: FnMut(&T) -> String,
{
    let mut out = String::new();
    for (k, (item, c)) in terms.enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let body = render(item);
        let abs = c.abs();
        if abs.is_one() {
            out.push_str(&body);
        } else if body == "1" {
            out.push_str(&format_rational(&abs));
        } else {
            out.push_str(&format_rational(&abs));
            out.push('*');
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for NSymmElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("Z"))
    }
}

/// An element of the truncated tensor square, as a combination of word pairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NSymmTensor {
    bound: u32,
    terms: BTreeMap<(Word, Word), Rational>,
}

impl NSymmTensor {
    pub fn zero(bound: u32) -> Self {
        NSymmTensor {
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), Rational> {
        &self.terms
    }

    pub fn coeff(&self, left: &[u32], right: &[u32]) -> Rational {
        self.terms
            .get(&(left.to_vec(), right.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, key: (Word, Word), c: Rational) {
        if c.is_zero() || word_weight(&key.0) + word_weight(&key.1) > self.bound {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `sum c (a . b)` after mapping the left factors through `left`.
    pub fn contract<F: FnMut(&Word) -> NSymmElement>(&self, mut left: F) -> NSymmElement {
        let mut out = NSymmElement::zero(self.bound);
        for ((a, b), c) in &self.terms {
            let la = left(a);
            let rb = NSymmElement::word(b.clone(), self.bound).expect("within bound");
            out = out
                .try_add(&la.try_mul(&rb).expect("same bound").scale(c))
                .expect("same bound");
        }
        out
    }

    pub fn format(&self, symbol: &str) -> String {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            (display_key(&a.0 .0), display_key(&a.0 .1))
                .cmp(&(display_key(&b.0 .0), display_key(&b.0 .1)))
                .reverse()
        });
        format_linear_combination(v.into_iter(), |(l, r)| {
            format!("{} (x) {}", format_word(l, symbol), format_word(r, symbol))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, rat};

    fn z(w: &[u32]) -> NSymmElement {
        NSymmElement::word(w.to_vec(), 8).unwrap()
    }

    #[test]
    fn unit_is_neutral() {
        let x = z(&[2, 1]).try_add(&z(&[3]).scale(&rat(1, 3))).unwrap();
        assert_eq!(NSymmElement::one(8).try_mul(&x).unwrap(), x);
        assert_eq!(x.try_mul(&NSymmElement::one(8)).unwrap(), x);
    }

    #[test]
    fn concatenation() {
        assert_eq!(z(&[1]).try_mul(&z(&[2])).unwrap(), z(&[1, 2]));
    }

    #[test]
    fn truncated_product() {
        let bound = 3;
        let a = NSymmElement::from_terms(bound, vec![(vec![2], int(1)), (vec![1, 1], rat(-1, 2))]);
        let b = NSymmElement::word(vec![1], bound).unwrap();
        let p = a.try_mul(&b).unwrap();
        let expected =
            NSymmElement::from_terms(bound, vec![(vec![2, 1], int(1)), (vec![1, 1, 1], rat(-1, 2))]);
        assert_eq!(p, expected);
        // and one more factor falls off the truncation entirely
        assert!(p.try_mul(&b).unwrap().is_zero());
    }

    #[test]
    fn bound_checks() {
        assert_eq!(
            NSymmElement::word(vec![5, 4], 8).unwrap_err(),
            Error::WeightOverBound { weight: 9, bound: 8 }
        );
        let a = NSymmElement::one(3);
        let b = NSymmElement::one(4);
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn coproduct_of_z2() {
        let d = z(&[2]).coproduct();
        assert_eq!(d.terms().len(), 3);
        assert_eq!(d.coeff(&[2], &[]), int(1));
        assert_eq!(d.coeff(&[1], &[1]), int(1));
        assert_eq!(d.coeff(&[], &[2]), int(1));
        assert_eq!(d.format("Z"), "Z2 (x) 1 + Z1 (x) Z1 + 1 (x) Z2");
    }

    #[test]
    fn antipode_of_low_generators() {
        assert_eq!(z(&[1]).antipode(), z(&[1]).scale(&int(-1)));
        let expected = z(&[1, 1]).try_sub(&z(&[2])).unwrap();
        assert_eq!(z(&[2]).antipode(), expected);
    }

    #[test]
    fn z2_is_not_primitive() {
        assert!(!z(&[2]).is_primitive());
        assert!(z(&[1]).is_primitive());
        assert!(!NSymmElement::one(8).is_primitive());
    }

    #[test]
    fn formatting() {
        let x = NSymmElement::from_terms(
            8,
            vec![(vec![1, 1, 1], int(1)), (vec![3], int(3)), (vec![2, 1], int(-1)), (vec![1, 2], int(-2))],
        );
        assert_eq!(x.format("Z"), "3*Z3 - 2*Z1*Z2 - Z2*Z1 + Z1*Z1*Z1");
        assert_eq!(NSymmElement::zero(2).to_string(), "0");
        assert_eq!(NSymmElement::one(2).scale(&rat(1, 2)).to_string(), "1/2");
    }
}
