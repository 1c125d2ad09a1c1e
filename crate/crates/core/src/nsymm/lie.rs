//! Lie-polynomial expressions over the Lyndon bracket basis.
//!
//! Letters are the generator indices, ordered with larger indices first
//! (`... < 3 < 2 < 1`), so that the Lyndon words of weight 4 are `(4)`,
//! `(3,1)` and `(2,1,1)` with bracketings `Theta4`, `[Theta3, Theta1]` and
//! `[[Theta2, Theta1], Theta1]`.

use std::cmp::{Ordering, Reverse};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::Rational;

use super::element::{display_key, format_linear_combination, NSymmElement, Word};
use super::families::{BasisElement, Family};

/// Compares words in the reversed letter order.
pub fn lyndon_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let ka = a.iter().map(|&x| Reverse(x));
    let kb = b.iter().map(|&x| Reverse(x));
    ka.cmp(kb)
}

/// `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[u32]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|k| {
        let mut rot = w[k..].to_vec();
        rot.extend_from_slice(&w[..k]);
        lyndon_cmp(w, &rot) == Ordering::Less
    })
}

/// A bracket tree over the generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LieTerm {
    Letter(u32),
    Bracket(Box<LieTerm>, Box<LieTerm>),
}

impl LieTerm {
    /// The standard bracketing of a Lyndon word: `[u, v]` where `v` is the
    /// longest proper suffix that is itself Lyndon.
    pub fn standard(w: &[u32]) -> LieTerm {
        if w.len() == 1 {
            return LieTerm::Letter(w[0]);
        }
        let split = (1..w.len())
            .find(|&k| is_lyndon(&w[k..]))
            .expect("the last letter is a Lyndon suffix");
        LieTerm::Bracket(
            Box::new(LieTerm::standard(&w[..split])),
            Box::new(LieTerm::standard(&w[split..])),
        )
    }

    /// Expands `[a, b] = ab - ba` into words over the generators.
    pub fn expand(&self, bound: u32) -> NSymmElement {
        match self {
            LieTerm::Letter(i) => NSymmElement::word(vec![*i], bound).expect("within bound"),
            LieTerm::Bracket(a, b) => {
                let x = a.expand(bound);
                let y = b.expand(bound);
                let xy = x.try_mul(&y).expect("same bound");
                let yx = y.try_mul(&x).expect("same bound");
                xy.try_sub(&yx).expect("same bound")
            }
        }
    }

    pub fn format(&self, symbol: &str) -> String {
        match self {
            LieTerm::Letter(i) => format!("{symbol}{i}"),
            LieTerm::Bracket(a, b) => format!("[{}, {}]", a.format(symbol), b.format(symbol)),
        }
    }
}

/// A rational combination of standard Lyndon brackets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieExpression {
    pub family: Family,
    /// `(Lyndon word, coefficient)` in display order.
    pub terms: Vec<(Word, Rational)>,
}

impl LieExpression {
    pub fn coeff(&self, w: &[u32]) -> Rational {
        self.terms
            .iter()
            .find(|(x, _)| x == w)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    pub fn brackets(&self) -> Vec<(LieTerm, Rational)> {
        self.terms
            .iter()
            .map(|(w, c)| (LieTerm::standard(w), c.clone()))
            .collect()
    }

    /// Expands back into words of the family.
    pub fn expand(&self, bound: u32) -> BasisElement {
        let mut out = NSymmElement::zero(bound);
        for (w, c) in &self.terms {
            out = out
                .try_add(&LieTerm::standard(w).expand(bound).scale(c))
                .expect("same bound");
        }
        BasisElement::new(self.family, out)
    }

    pub fn format(&self) -> String {
        let symbol = self.family.symbol();
        let rendered: Vec<(String, Rational)> = self
            .terms
            .iter()
            .map(|(w, c)| (LieTerm::standard(w).format(symbol), c.clone()))
            .collect();
        format_linear_combination(rendered.iter().map(|(s, c)| (s, c)), |s: &String| s.clone())
    }
}

impl fmt::Display for LieExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// Writes `x` over the Lyndon bracket basis, or fails when `x` is not a Lie
/// polynomial in its generators.
///
/// The expansion of a standard bracket is its Lyndon word plus larger words,
/// so the smallest remaining word must be Lyndon and fixes its coefficient.
pub fn lie_express(x: &BasisElement) -> Result<LieExpression> {
    let bound = x.bound();
    let mut residual = x.words.clone();
    let mut terms: Vec<(Word, Rational)> = Vec::new();
    while let Some((w, c)) = residual
        .terms()
        .iter()
        .min_by(|a, b| lyndon_cmp(a.0, b.0))
        .map(|(w, c)| (w.clone(), c.clone()))
    {
        if !is_lyndon(&w) {
            return Err(Error::NotLieElement {
                residual_terms: residual.terms().len(),
                first_word: w,
            });
        }
        let p = LieTerm::standard(&w).expand(bound).scale(&c);
        residual = residual.try_sub(&p).expect("same bound");
        terms.push((w, c));
    }
    terms.sort_by(|a, b| display_key(&a.0).cmp(&display_key(&b.0)));
    Ok(LieExpression {
        family: x.family,
        terms,
    })
}

/// The Lyndon words of weight `n` in the reversed letter order, sorted by
/// length and then letters.
pub fn lyndon_words_of_weight(n: u32) -> Vec<Word> {
    let mut out: Vec<Word> = super::composition::compositions_of(n)
        .into_iter()
        .filter(|w| is_lyndon(w))
        .collect();
    out.sort_by(|a, b| display_key(a).cmp(&display_key(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nsymm::families::{convert, generator};
    use crate::polyring::rat;

    #[test]
    fn lyndon_words_in_reversed_order() {
        assert!(is_lyndon(&[2, 1]));
        assert!(!is_lyndon(&[1, 2]));
        assert!(is_lyndon(&[2, 1, 1]));
        assert!(!is_lyndon(&[2, 2]));
        assert!(is_lyndon(&[3]));
        assert_eq!(lyndon_words_of_weight(4), vec![vec![4], vec![3, 1], vec![2, 1, 1]]);
    }

    #[test]
    fn standard_bracketing() {
        assert_eq!(LieTerm::standard(&[2, 1, 1]).format("Theta"), "[[Theta2, Theta1], Theta1]");
        assert_eq!(LieTerm::standard(&[3, 1]).format("Theta"), "[Theta3, Theta1]");
    }

    #[test]
    fn psi3() {
        let psi = generator(Family::Psi, 3, 6).unwrap();
        let e = lie_express(&convert(&psi, Family::Theta)).unwrap();
        assert_eq!(e.to_string(), "Theta3 + 1/2*[Theta2, Theta1]");
        assert_eq!(e.coeff(&[2, 1]), rat(1, 2));
    }

    #[test]
    fn product_is_not_a_lie_element() {
        let x = NSymmElement::word(vec![1, 2], 4).unwrap();
        let err = lie_express(&BasisElement::new(Family::Theta, x)).unwrap_err();
        assert!(matches!(err, Error::NotLieElement { .. }));
    }

    #[test]
    fn expansion_roundtrip() {
        let psi = generator(Family::Psi, 5, 5).unwrap();
        let in_theta = convert(&psi, Family::Theta);
        let e = lie_express(&in_theta).unwrap();
        assert_eq!(e.expand(5), in_theta);
    }
}
