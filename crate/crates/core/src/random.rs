//! Seeded random instances for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::polymatrix::PolyMatrix;
use crate::polyring::{rat, Monomial, PolyMap, Polynomial};

/// Shape of random polynomials.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_degree: u32,
    pub max_terms: usize,
    /// Numerators are drawn from `-coeff..=coeff`.
    pub coeff: i64,
    /// Denominators are drawn from `1..=denom`.
    pub denom: i64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_degree: 3,
            max_terms: 4,
            coeff: 3,
            denom: 1,
        }
    }
}

fn random_monomial<R: Rng + ?Sized>(rng: &mut R, vars: &[usize], nvars: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    if !vars.is_empty() {
        for _ in 0..degree {
            exps[*vars.choose(rng).expect("nonempty")] += 1;
        }
    }
    Monomial::new(exps)
}

/// A sparse polynomial in the variables listed in `vars`.
pub fn polynomial_in<R: Rng + ?Sized>(rng: &mut R, nvars: usize, vars: &[usize], shape: Shape) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    let terms = rng.gen_range(0..=shape.max_terms);
    for _ in 0..terms {
        let degree = if vars.is_empty() { 0 } else { rng.gen_range(0..=shape.max_degree) };
        let m = random_monomial(rng, vars, nvars, degree);
        let mut num = rng.gen_range(-shape.coeff..=shape.coeff);
        if num == 0 {
            num = 1;
        }
        let den = rng.gen_range(1..=shape.denom.max(1));
        p = p + Polynomial::monomial(m, rat(num, den));
    }
    p
}

pub fn polynomial<R: Rng + ?Sized>(rng: &mut R, nvars: usize, shape: Shape) -> Polynomial {
    let vars: Vec<usize> = (0..nvars).collect();
    polynomial_in(rng, nvars, &vars, shape)
}

/// A random map; at least one component is nonzero.
pub fn map<R: Rng + ?Sized>(rng: &mut R, nvars: usize, shape: Shape) -> PolyMap {
    loop {
        let comps: Vec<Polynomial> = (0..nvars).map(|_| polynomial(rng, nvars, shape)).collect();
        let m = PolyMap::new(comps).expect("component count equals nvars");
        if !m.is_zero() {
            return m;
        }
    }
}

/// A strongly triangular map: component `i` involves `x_0, ..., x_{i-1}` only,
/// so its Jacobian is strictly lower triangular. At least one non-constant
/// component is produced when `nvars >= 2`.
pub fn strongly_triangular<R: Rng + ?Sized>(rng: &mut R, nvars: usize, shape: Shape) -> PolyMap {
    loop {
        let comps: Vec<Polynomial> = (0..nvars)
            .map(|i| {
                let vars: Vec<usize> = (0..i).collect();
                polynomial_in(rng, nvars, &vars, shape)
            })
            .collect();
        let m = PolyMap::new(comps).expect("component count equals nvars");
        if nvars < 2 || m.degree() >= 1 {
            return m;
        }
    }
}

/// A random map whose Jacobian is not nilpotent.
pub fn non_nilpotent<R: Rng + ?Sized>(rng: &mut R, nvars: usize, shape: Shape) -> PolyMap {
    loop {
        let m = map(rng, nvars, shape);
        if !m.jacobian().is_nilpotent() {
            return m;
        }
    }
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize, nvars: usize, shape: Shape) -> PolyMatrix {
    PolyMatrix::from_fn(dim, nvars, |_, _| polynomial(rng, nvars, shape))
}
