//! Square matrices over the polynomial ring: products, traces, the
//! characteristic polynomial and the nilpotency decision for Jacobians.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::polyring::{PolyMap, Polynomial, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    dim: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

/// Outcome of the nilpotency decision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Nilpotency {
    pub nilpotent: bool,
    /// Smallest `s` with `A^s = 0`, when nilpotent.
    pub index: Option<usize>,
    /// `Tr(A^q)` for `q = 1..=dim`.
    pub traces: Vec<Polynomial>,
    /// First `q` (1-based) with `Tr(A^q) != 0`.
    pub first_nonzero_trace: Option<usize>,
}

impl PolyMatrix {
    pub fn zero(dim: usize, nvars: usize) -> Self {
        PolyMatrix {
            dim,
            nvars,
            entries: vec![Polynomial::zero(nvars); dim * dim],
        }
    }

    pub fn identity(dim: usize, nvars: usize) -> Self {
        Self::scalar(dim, &Polynomial::one(nvars))
    }

    /// `p` times the identity.
    pub fn scalar(dim: usize, p: &Polynomial) -> Self {
        let mut m = Self::zero(dim, p.nvars());
        for i in 0..dim {
            m.entries[i * dim + i] = p.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let dim = rows.len();
        let nvars = rows
            .first()
            .and_then(|r| r.first())
            .map_or(0, Polynomial::nvars);
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            for p in row {
                if p.nvars() != nvars {
                    return Err(Error::VarCountMismatch {
                        left: nvars,
                        right: p.nvars(),
                    });
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            dim,
            nvars,
            entries,
        })
    }

    /// Builds a matrix entrywise.
    pub fn from_fn<F: FnMut(usize, usize) -> Polynomial>(dim: usize, nvars: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = f(i, j);
                assert_eq!(p.nvars(), nvars, "entry ({i}, {j}) has the wrong variable count");
                entries.push(p);
            }
        }
        PolyMatrix {
            dim,
            nvars,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Polynomial]> {
        self.entries.chunks(self.dim.max(1))
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    fn check_same(&self, other: &PolyMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same(other)?;
        let n = self.dim;
        let mut out = PolyMatrix::zero(n, self.nvars);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.entries[i * n + j];
                    *slot = std::mem::replace(slot, Polynomial::zero(self.nvars)) + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with<F: Fn(&Polynomial, &Polynomial) -> Polynomial>(&self, other: &PolyMatrix, f: F) -> PolyMatrix {
        PolyMatrix {
            dim: self.dim,
            nvars: self.nvars,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn map<F: FnMut(&Polynomial) -> Polynomial>(&self, f: F) -> PolyMatrix {
        PolyMatrix {
            dim: self.dim,
            nvars: self.nvars,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, p: &Polynomial) -> PolyMatrix {
        self.map(|e| e * p)
    }

    pub fn trace(&self) -> Polynomial {
        (0..self.dim).fold(Polynomial::zero(self.nvars), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn pow(&self, k: u32) -> PolyMatrix {
        let mut acc = PolyMatrix::identity(self.dim, self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Matrix times column vector; `J(G) * F` when `self = J(G)`.
    pub fn mul_vec(&self, v: &PolyMap) -> Result<PolyMap> {
        if v.nvars() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.nvars(),
            });
        }
        PolyMap::new(
            self.rows()
                .map(|row| {
                    row.iter()
                        .zip(v.components())
                        .fold(Polynomial::zero(self.nvars), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    /// `[Tr(A), Tr(A^2), ..., Tr(A^max_q)]`.
    pub fn power_traces(&self, max_q: usize) -> Result<Vec<Polynomial>> {
        if max_q == 0 {
            return Err(Error::InvalidArgument("max_q must be at least 1".into()));
        }
        let mut out = Vec::with_capacity(max_q);
        let mut power = self.clone();
        for q in 1..=max_q {
            out.push(power.trace());
            if q < max_q {
                power = &power * self;
            }
        }
        Ok(out)
    }

    /// Decides nilpotency from the power traces `Tr(A^q)`, `q = 1..=dim`.
    /// Over a characteristic-zero domain these vanish exactly when the
    /// characteristic polynomial is `x^dim`. The index is then found by
    /// explicit powering.
    pub fn nilpotency(&self) -> Nilpotency {
        if self.dim == 0 {
            return Nilpotency {
                nilpotent: true,
                index: Some(0),
                traces: Vec::new(),
                first_nonzero_trace: None,
            };
        }
        let traces = self.power_traces(self.dim).expect("dim >= 1");
        let first_nonzero_trace = traces.iter().position(|t| !t.is_zero()).map(|q| q + 1);
        let nilpotent = first_nonzero_trace.is_none();
        let index = nilpotent.then(|| {
            let mut power = self.clone();
            let mut s = 1;
            while !power.is_zero() {
                power = &power * self;
                s += 1;
                assert!(s <= self.dim, "vanishing power traces without a vanishing power");
            }
            s
        });
        Nilpotency {
            nilpotent,
            index,
            traces,
            first_nonzero_trace,
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency().nilpotent
    }

    /// Coefficients `a_1, ..., a_n` of `det(xI - A) = x^n + a_1 x^{n-1} + ... + a_n`,
    /// by the Faddeev-LeVerrier recursion (only divisions by integers).
    pub fn charpoly(&self) -> Vec<Polynomial> {
        let n = self.dim;
        let mut coeffs = Vec::with_capacity(n);
        let mut m = PolyMatrix::identity(n, self.nvars);
        for k in 1..=n {
            if k > 1 {
                let prev = &coeffs[k - 2];
                m = (&(self * &m)).try_add(&PolyMatrix::scalar(n, prev)).expect("same shape");
            }
            let a_k = (self * &m).trace().scale(&-Rational::new(1.into(), (k as i64).into()));
            coeffs.push(a_k);
        }
        coeffs
    }

    /// `A^n + a_1 A^{n-1} + ... + a_n I` for the given coefficients (Horner).
    pub fn eval_monic(&self, coeffs: &[Polynomial]) -> PolyMatrix {
        let mut acc = PolyMatrix::identity(self.dim, self.nvars);
        for a in coeffs {
            acc = (&acc * self).try_add(&PolyMatrix::scalar(self.dim, a)).expect("same shape");
        }
        acc
    }

    /// Applies the derivation `d` to every entry.
    pub fn apply_derivation(&self, d: &PolyMap) -> Result<PolyMatrix> {
        if d.nvars() != self.nvars {
            return Err(Error::VarCountMismatch {
                left: self.nvars,
                right: d.nvars(),
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|p| d.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            dim: self.dim,
            nvars: self.nvars,
            entries,
        })
    }

    /// Applies the endomorphism `x_i -> images_i` entrywise.
    pub fn substitute(&self, images: &PolyMap) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.substitute(images))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            dim: self.dim,
            nvars: images.component(0).nvars(),
            entries,
        })
    }

    /// Entries as canonical strings, row-major.
    pub fn format<S: AsRef<str>>(&self, names: &[S]) -> Vec<Vec<String>> {
        self.rows()
            .map(|row| row.iter().map(|p| p.format(names)).collect())
            .collect()
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_mul(rhs).expect("matrix multiplication")
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_add(rhs).expect("matrix addition")
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_sub(rhs).expect("matrix subtraction")
    }
}
