use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polyring::Rational;

/// An ordered list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Composition(Vec<u32>);

/// The statistics of a single composition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompositionStats {
    pub weight: u32,
    pub length: usize,
    pub pi_u: BigInt,
    pub lp: u32,
    pub mirror: Composition,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("a composition needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("composition parts must be positive".into()));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of the partial sums `i_1 (i_1 + i_2) ... (i_1 + ... + i_m)`.
    pub fn pi_u(&self) -> BigInt {
        let mut acc = BigInt::from(1);
        let mut partial = 0u64;
        for &p in &self.0 {
            partial += u64::from(p);
            acc *= partial;
        }
        acc
    }

    /// The last part.
    pub fn lp(&self) -> u32 {
        *self.0.last().expect("nonempty")
    }

    /// The composition read right to left.
    pub fn mirror(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn stats(&self) -> CompositionStats {
        CompositionStats {
            weight: self.weight(),
            length: self.len(),
            pi_u: self.pi_u(),
            lp: self.lp(),
            mirror: self.mirror(),
        }
    }

    /// All compositions of `n`, in lexicographic order (`2^{n-1}` of them).
    pub fn all_of_weight(n: u32) -> Vec<Composition> {
        compositions_of(n).into_iter().map(Composition).collect()
    }

    /// Splits `finer` into consecutive blocks of weights `i_1, ..., i_m`;
    /// `Some(blocks)` exactly when `self` is refined by `finer`.
    pub fn blocks_of(&self, finer: &Composition) -> Option<Vec<Composition>> {
        let mut blocks = Vec::with_capacity(self.len());
        let mut rest = finer.0.as_slice();
        for &target in &self.0 {
            let mut sum = 0;
            let mut take = 0;
            while sum < target {
                let &p = rest.get(take)?;
                sum += p;
                take += 1;
            }
            if sum != target {
                return None;
            }
            blocks.push(Composition(rest[..take].to_vec()));
            rest = &rest[take..];
        }
        rest.is_empty().then_some(blocks)
    }

    pub fn is_refined_by(&self, finer: &Composition) -> bool {
        self.blocks_of(finer).is_some()
    }

    /// Every `J` with `self` refined by `J`, together with its blocks.
    pub fn refinements(&self) -> Vec<Refinement> {
        let per_part: Vec<Vec<Vec<u32>>> = self.0.iter().map(|&p| compositions_of(p)).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; per_part.len()];
        loop {
            let blocks: Vec<Composition> = choice
                .iter()
                .zip(&per_part)
                .map(|(&c, options)| Composition(options[c].clone()))
                .collect();
            let fine = Composition(blocks.iter().flat_map(|b| b.0.iter().copied()).collect());
            out.push(Refinement { fine, blocks });
            // odometer over the per-part choices, last part fastest
            let mut k = per_part.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < per_part[k].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A refinement `I <= J` with `J` cut into blocks `J_1, ..., J_m`, `|J_k| = i_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Refinement {
    pub fine: Composition,
    pub blocks: Vec<Composition>,
}

impl Refinement {
    /// `pi_u(J, I) = prod_k pi_u(J_k)`.
    pub fn pi_u(&self) -> BigInt {
        self.blocks.iter().map(Composition::pi_u).product()
    }

    /// `lp(J, I) = prod_k lp(J_k)`.
    pub fn lp(&self) -> BigInt {
        self.blocks.iter().map(|b| BigInt::from(b.lp())).product()
    }

    /// `pi_u(mirror J, mirror I)`: every block is read right to left.
    pub fn mirrored_pi_u(&self) -> BigInt {
        self.blocks.iter().map(|b| b.mirror().pi_u()).product()
    }

    /// `lp(mirror J, mirror I)`: the product of the first parts of the blocks.
    pub fn mirrored_lp(&self) -> BigInt {
        self.blocks.iter().map(|b| BigInt::from(b.0[0])).product()
    }

    pub fn inverse_pi_u(&self) -> Rational {
        Rational::new(BigInt::from(1), self.pi_u())
    }

    pub fn inverse_mirrored_pi_u(&self) -> Rational {
        Rational::new(BigInt::from(1), self.mirrored_pi_u())
    }
}

/// All compositions of `n` as raw part lists; `[[]]` for `n = 0`.
pub fn compositions_of(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::with_capacity(1 << (n - 1).min(20));
    for first in 1..=n {
        for mut rest in compositions_of(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn stats_of_121() {
        let s = c(&[1, 2, 1]).stats();
        assert_eq!(s.weight, 4);
        assert_eq!(s.length, 3);
        assert_eq!(s.pi_u, BigInt::from(12));
        assert_eq!(s.lp, 1);
        assert_eq!(s.mirror, c(&[1, 2, 1]));
    }

    #[test]
    fn single_part() {
        for n in 1..8 {
            let s = c(&[n]).stats();
            assert_eq!(s.pi_u, BigInt::from(n));
            assert_eq!(s.lp, n);
        }
    }

    #[test]
    fn mirror_reverses() {
        assert_eq!(c(&[2, 1, 2, 3, 1, 2]).mirror(), c(&[2, 1, 3, 2, 1, 2]));
    }

    #[test]
    fn refinement_relation() {
        let coarse = c(&[3, 2, 6]);
        let fine = c(&[2, 1, 2, 3, 1, 2]);
        assert_eq!(
            coarse.blocks_of(&fine),
            Some(vec![c(&[2, 1]), c(&[2]), c(&[3, 1, 2])])
        );
        assert!(!coarse.is_refined_by(&c(&[3, 3, 5])));
        assert!(!coarse.is_refined_by(&c(&[3, 2, 5])));
    }

    #[test]
    fn refinements_of_a_single_part_are_all_compositions() {
        for n in 1..9 {
            let r = c(&[n]).refinements();
            assert_eq!(r.len(), 1 << (n - 1));
            assert!(r.iter().all(|x| x.fine.weight() == n));
        }
    }

    #[test]
    fn refinements_of_two() {
        let r = c(&[2]).refinements();
        let fines: Vec<_> = r.iter().map(|x| x.fine.clone()).collect();
        assert_eq!(fines, vec![c(&[1, 1]), c(&[2])]);
        let split = &r[0];
        assert_eq!(split.pi_u(), BigInt::from(2));
        assert_eq!(split.lp(), BigInt::from(1));
    }

    #[test]
    fn refinement_counts_multiply() {
        let r = c(&[3, 1, 2]).refinements();
        assert_eq!(r.len(), 4 * 2);
        assert!(r.iter().all(|x| c(&[3, 1, 2]).blocks_of(&x.fine).as_ref() == Some(&x.blocks)));
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![1, 0]).is_err());
    }
}
