//! The left-symmetric algebra of derivations of `Q[x_1, ..., x_n]`.
//!
//! A derivation `D_F = f_1 d_1 + ... + f_n d_n` is stored as its tuple
//! `F = (f_1, ..., f_n)`, so [`Derivation`] is the same type as [`PolyMap`].
//! The product is `D_F . D_G = D_{D_F(G)} = D_{J(G) F}`; its commutator is the
//! usual bracket of vector fields.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polymatrix::PolyMatrix;
use crate::polyring::{PolyMap, Polynomial};

pub type Derivation = PolyMap;

/// Default search bound for right and left nilpotency.
pub const DEFAULT_POWER_BOUND: usize = 12;

impl PolyMap {
    /// The coordinate derivation `d/dx_index`.
    pub fn coordinate_derivation(nvars: usize, index: usize) -> Derivation {
        PolyMap::unit(nvars, index, Polynomial::one(nvars))
    }

    /// `D(a) = sum_i f_i * da/dx_i`.
    pub fn apply(&self, a: &Polynomial) -> Result<Polynomial> {
        self.check_poly(a)?;
        let mut out = Polynomial::zero(a.nvars());
        for (i, f) in self.components().iter().enumerate() {
            if f.is_zero() || !a.involves(i) {
                continue;
            }
            out = out + f * &a.partial(i)?;
        }
        Ok(out)
    }

    /// Applies the derivation to every component of `g`.
    pub fn apply_to_map(&self, g: &PolyMap) -> Result<PolyMap> {
        self.check_same(g)?;
        g.try_map(|p| self.apply(p))
    }

    /// The left-symmetric product `self . other = D_{self(G)}`.
    pub fn ls_product(&self, other: &Derivation) -> Result<Derivation> {
        self.apply_to_map(other)
    }

    /// The same product through the Jacobian: `J(G) F`.
    pub fn ls_product_via_jacobian(&self, other: &Derivation) -> Result<Derivation> {
        self.check_same(other)?;
        other.jacobian().mul_vec(self)
    }

    /// `[self, other] = self . other - other . self`.
    pub fn commutator(&self, other: &Derivation) -> Result<Derivation> {
        Ok(&self.ls_product(other)? - &other.ls_product(self)?)
    }

    /// `D^{[1]} = D`, `D^{[m+1]} = D^{[m]} . D`.
    pub fn right_power(&self, m: usize) -> Result<Derivation> {
        if m == 0 {
            return Err(Error::InvalidArgument("right powers start at 1".into()));
        }
        Ok(self.right_powers(m).pop().expect("m >= 1"))
    }

    /// `[D^{[1]}, ..., D^{[up_to]}]`. Once a power vanishes the rest are zero.
    pub fn right_powers(&self, up_to: usize) -> Vec<Derivation> {
        let mut out: Vec<Derivation> = Vec::with_capacity(up_to);
        for _ in 0..up_to {
            let next = match out.last() {
                None => self.clone(),
                Some(prev) if prev.is_zero() => prev.clone(),
                Some(prev) => prev.ls_product(self).expect("same variable count"),
            };
            out.push(next);
        }
        out
    }

    /// The tuple `H_m` with `D^m = D_{H_m}` for the left power
    /// `D^m = D(D(...(D D)))`: `H_1 = F`, `H_{m+1} = D(H_m)`.
    pub fn left_power_tuple(&self, m: usize) -> Result<PolyMap> {
        if m == 0 {
            return Err(Error::InvalidArgument("left powers start at 1".into()));
        }
        let mut h = self.clone();
        for _ in 1..m {
            if h.is_zero() {
                break;
            }
            h = self.apply_to_map(&h)?;
        }
        Ok(h)
    }

    /// Smallest `m` in `2..=bound` with `D^{[m]} = 0`.
    pub fn right_nilpotency_index(&self, bound: usize) -> Result<Option<usize>> {
        if bound < 2 {
            return Err(Error::InvalidArgument("nilpotency bound must be at least 2".into()));
        }
        Ok(self
            .right_powers(bound)
            .iter()
            .position(PolyMap::is_zero)
            .map(|i| (i + 1).max(2)))
    }

    /// Smallest `m` in `2..=bound` with `H_m = 0`, i.e. `D^m = 0`. Such an
    /// `m` exists exactly when `D` is locally nilpotent.
    pub fn left_nilpotency_index(&self, bound: usize) -> Result<Option<usize>> {
        if bound < 2 {
            return Err(Error::InvalidArgument("nilpotency bound must be at least 2".into()));
        }
        let mut h = self.clone();
        for m in 1..=bound {
            if h.is_zero() {
                return Ok(Some(m.max(2)));
            }
            if m < bound {
                h = self.apply_to_map(&h)?;
            }
        }
        Ok(None)
    }

    /// `J(F) = (d f_i / d x_j)`.
    pub fn jacobian(&self) -> PolyMatrix {
        let n = self.nvars();
        PolyMatrix::from_fn(n, n, |i, j| self.component(i).partial(j).expect("j < n"))
    }

    /// `div(D_F) = sum_i d f_i / d x_i`.
    pub fn divergence(&self) -> Polynomial {
        self.components()
            .iter()
            .enumerate()
            .fold(Polynomial::zero(self.nvars()), |acc, (i, f)| {
                acc + f.partial(i).expect("i < n")
            })
    }

    /// `R_{D_1} ... R_{D_m}(D) = (...(D . D_m) ...) . D_1`, evaluated with
    /// left-symmetric products.
    pub fn right_operator_chain(&self, chain: &[Derivation]) -> Result<Derivation> {
        let mut acc = self.clone();
        for d in chain.iter().rev() {
            acc = acc.ls_product(d)?;
        }
        Ok(acc)
    }

    /// The same chain evaluated as `D_{J(D_1) ... J(D_m) F}`.
    pub fn right_operator_chain_jacobian(&self, chain: &[Derivation]) -> Result<Derivation> {
        let mut acc = self.clone();
        for d in chain.iter().rev() {
            self.check_same(d)?;
            acc = d.jacobian().mul_vec(&acc)?;
        }
        Ok(acc)
    }

    /// `L_{D_1} ... L_{D_m}(D) = D_1 . (D_2 . (... (D_m . D)))`.
    pub fn left_operator_chain(&self, chain: &[Derivation]) -> Result<Derivation> {
        let mut acc = self.clone();
        for d in chain.iter().rev() {
            acc = d.ls_product(&acc)?;
        }
        Ok(acc)
    }

    /// The same chain read in the Weyl algebra: the tuple
    /// `D_1(D_2(... D_m(F)))` of iterated applications.
    pub fn left_operator_chain_weyl(&self, chain: &[Derivation]) -> Result<PolyMap> {
        let mut comps = self.components().to_vec();
        for d in chain.iter().rev() {
            self.check_same(d)?;
            comps = comps.iter().map(|p| d.apply(p)).collect::<Result<_>>()?;
        }
        PolyMap::new(comps)
    }

    /// Splits into homogeneous derivations keyed by degree, where `a d_j`
    /// with `a` of degree `s + 1` has degree `s`.
    pub fn homogeneous_components(&self) -> BTreeMap<i64, Derivation> {
        let n = self.nvars();
        let mut out: BTreeMap<i64, Derivation> = BTreeMap::new();
        for (i, f) in self.components().iter().enumerate() {
            let mut degrees: Vec<u32> = f.terms().map(|(m, _)| m.degree()).collect();
            degrees.dedup();
            for d in degrees {
                let part = f.homogeneous_part(d);
                let slot = out
                    .entry(i64::from(d) - 1)
                    .or_insert_with(|| PolyMap::zero(n));
                *slot = &*slot + &PolyMap::unit(n, i, part);
            }
        }
        out
    }
}
