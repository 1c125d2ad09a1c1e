use std::collections::BTreeMap;

use derivalg::liealg::{bracket_closure, BracketClosure, ClosureConfig, StructureTable};
use derivalg::random::{self, Shape};
use derivalg::{PolyMap, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shape() -> Shape {
    Shape {
        max_degree: 2,
        max_terms: 2,
        coeff: 3,
        denom: 2,
    }
}

fn closed(seed: u64, n: usize) -> Option<BracketClosure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = random::strongly_triangular(&mut rng, n, shape());
    let c = bracket_closure(&d, ClosureConfig::default()).unwrap();
    c.is_closed().then_some(c)
}

/// Rank by Gaussian elimination over coefficient vectors keyed by
/// (component, exponents).
fn rank(ds: &[PolyMap]) -> usize {
    let mut rows: Vec<BTreeMap<(usize, Vec<u32>), Rational>> = ds
        .iter()
        .map(|d| {
            let mut v = BTreeMap::new();
            for (i, p) in d.components().iter().enumerate() {
                for (m, c) in p.terms() {
                    v.insert((i, m.exponents().to_vec()), c.clone());
                }
            }
            v
        })
        .collect();
    let mut r = 0;
    while let Some(k) = rows[r..].iter().position(|v| !v.is_empty()) {
        rows.swap(r, r + k);
        let pivot = rows[r].keys().next().unwrap().clone();
        let pv = rows[r][&pivot].clone();
        for j in r + 1..rows.len() {
            if let Some(c) = rows[j].get(&pivot).cloned() {
                let f = c / &pv;
                let src = rows[r].clone();
                for (key, x) in src {
                    let e = rows[j].entry(key.clone()).or_insert_with(Rational::zero);
                    *e -= &f * x;
                    if e.is_zero() {
                        rows[j].remove(&key);
                    }
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closure_is_closed_under_brackets(seed in any::<u64>(), n in 2usize..=3) {
        if let Some(c) = closed(seed, n) {
            for a in &c.elements {
                for b in &c.elements {
                    prop_assert!(c.contains(&a.commutator(b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn structure_table_is_a_lie_algebra(seed in any::<u64>(), n in 2usize..=3) {
        if let Some(c) = closed(seed, n) {
            let t = StructureTable::from_closure(&c).unwrap();
            prop_assert_eq!(t.dim(), c.dim());
            prop_assert_eq!(t.jacobi_violations(), 0);
            prop_assert!(t.matches_realization().unwrap());
            for i in 0..t.dim() {
                prop_assert!(t.bracket_basis(i, i).iter().all(|x| x.is_zero()));
                for j in 0..t.dim() {
                    let neg: Vec<_> = t.bracket_basis(j, i).iter().map(|x| -x.clone()).collect();
                    prop_assert_eq!(t.bracket_basis(i, j), neg);
                }
            }
        }
    }

    /// dim [L, L] from the table equals the rank of all commutators of the realization.
    #[test]
    fn derived_algebra_dimension(seed in any::<u64>(), n in 2usize..=3) {
        if let Some(c) = closed(seed, n) {
            let t = StructureTable::from_closure(&c).unwrap();
            let series = t.lcs_and_derived_series();
            let mut comms = Vec::new();
            for a in &c.elements {
                for b in &c.elements {
                    comms.push(a.commutator(b).unwrap());
                }
            }
            if c.dim() > 0 {
                let want = rank(&comms);
                prop_assert_eq!(series.lower_central[1], want);
                prop_assert_eq!(series.derived[1], want);
                prop_assert_eq!(rank(&c.elements), c.dim());
            }
        }
    }
}

#[test]
fn random_triangular_closures_often_close() {
    let hits = (0..64u64).filter(|&s| closed(s, 2 + (s % 2) as usize).is_some_and(|c| c.dim() > 1)).count();
    assert!(hits >= 16, "only {hits} closed instances of dimension above 1");
}
