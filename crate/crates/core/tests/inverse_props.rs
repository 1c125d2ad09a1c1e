use derivalg::inverse::{
    enumerate_m_reduced, formal_inverse, lambda_element, lambda_word, lambda_z, ActionOnX, Route,
};
use derivalg::liealg::{bracket_closure, BracketClosure, ClosureConfig};
use derivalg::nsymm::composition::compositions_of;
use derivalg::nsymm::{generator, Family, NSymmElement};
use derivalg::polyring::{int, rat};
use derivalg::random::{self, Shape};
use derivalg::{PolyMap, Polynomial};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shape(max_degree: u32) -> Shape {
    Shape {
        max_degree,
        max_terms: 3,
        coeff: 3,
        denom: 2,
    }
}

fn setup(seed: u64, n: usize, degree: u32) -> (PolyMap, Polynomial, Polynomial) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random::map(&mut rng, n, shape(degree));
    let a = random::polynomial(&mut rng, n, shape(3));
    let b = random::polynomial(&mut rng, n, shape(2));
    (f, a, b)
}

fn nsymm_element(rng: &mut ChaCha8Rng, bound: u32) -> NSymmElement {
    let mut words = Vec::new();
    for n in 1..=bound {
        words.extend(compositions_of(n));
    }
    NSymmElement::from_terms(
        bound,
        (0..3).map(|_| (words.choose(rng).unwrap().clone(), rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)))),
    )
}

fn lift(p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(
        p.nvars() + 1,
        p.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.push(0);
            (e, c.clone())
        }),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lambda_z_is_multiplicative(seed in any::<u64>(), n in 1usize..=3, i in 0u32..=5) {
        let (f, a, b) = setup(seed, n, 2);
        let lhs = lambda_z(i, &(&a * &b), &f).unwrap();
        let mut rhs = Polynomial::zero(n);
        for r in 0..=i {
            rhs = &rhs + &(&lambda_z(r, &a, &f).unwrap() * &lambda_z(i - r, &b, &f).unwrap());
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lambda_is_an_algebra_map(seed in any::<u64>(), n in 1usize..=2) {
        let (f, a, _) = setup(seed, n, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        // weights up to 2 each, so no word of the product is truncated at 4
        let x = NSymmElement::from_terms(4, nsymm_element(&mut rng, 2).terms().clone());
        let y = NSymmElement::from_terms(4, nsymm_element(&mut rng, 2).terms().clone());
        let xy = x.try_mul(&y).unwrap();
        let lhs = lambda_element(&xy, &a, &f).unwrap();
        let rhs = lambda_element(&x, &lambda_element(&y, &a, &f).unwrap(), &f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_acts_as_signed_right_power(seed in any::<u64>(), n in 1usize..=2, m in 1u32..=5) {
        let (f, a, _) = setup(seed, n, 2);
        let theta = generator(Family::Theta, m, m).unwrap();
        let p = f.right_power(m as usize).unwrap();
        let sign = if m % 2 == 1 { int(1) } else { int(-1) };
        prop_assert_eq!(lambda_element(&theta, &a, &f).unwrap(), p.apply(&a).unwrap().scale(&sign));
        let on_x = ActionOnX::new(&f).element(&theta).unwrap();
        prop_assert_eq!(on_x, p.scale(&sign));
    }

    #[test]
    fn primitive_generators_act_as_derivations(seed in any::<u64>(), n in 1usize..=2, m in 1u32..=4, fam in 0usize..3) {
        let family = [Family::Theta, Family::Psi, Family::U][fam];
        let (f, a, b) = setup(seed, n, 2);
        let g = generator(family, m, m).unwrap();
        let act = |p: &Polynomial| lambda_element(&g, p, &f).unwrap();
        prop_assert_eq!(act(&(&a * &b)), &(&act(&a) * &b) + &(&a * &act(&b)));
    }

    /// deg lambda(Z_i)(a) <= deg a + i (deg F - 1) and lambda(Z_i)(a) = 0 for i > deg a.
    #[test]
    fn lambda_degree_bounds(seed in any::<u64>(), n in 1usize..=3, i in 1u32..=5) {
        let (f, a, _) = setup(seed, n, 3);
        let out = lambda_z(i, &a, &f).unwrap();
        if (i as i64) > a.degree() {
            prop_assert!(out.is_zero());
        }
        if !out.is_zero() {
            prop_assert!(out.degree() <= a.degree() + i as i64 * (f.degree() - 1));
        }
    }

    #[test]
    fn routes_agree(seed in any::<u64>(), n in 1usize..=2) {
        let (f, _, _) = setup(seed, n, 2);
        let order = 4;
        let direct = formal_inverse(&f, order, Route::Direct).unwrap();
        for route in [Route::Psi, Route::Reduced] {
            let other = formal_inverse(&f, order, route).unwrap();
            prop_assert_eq!(direct.first_difference(&other), None, "{}", route);
        }
        prop_assert_eq!(direct.coefficient(1), &f.scale(&int(-1)));
    }

    /// (X + sF) composed with X + sF_1 + ... + s^M F_M is X + O(s^{M+1}), with
    /// `s` an ordinary extra variable.
    #[test]
    fn inverse_composes_to_identity(seed in any::<u64>(), n in 1usize..=2) {
        let (f, _, _) = setup(seed, n, 2);
        let order = 4usize;
        let g = formal_inverse(&f, order, Route::Direct).unwrap();
        let s = Polynomial::var(n + 1, n);
        let mut comps = Vec::new();
        for i in 0..n {
            let mut c = Polynomial::var(n + 1, i);
            for m in 1..=order {
                c = &c + &(&lift(g.coefficient(m).component(i)) * &s.pow(m as u32));
            }
            comps.push(c);
        }
        comps.push(s.clone());
        let h = PolyMap::new(comps).unwrap();
        for i in 0..n {
            // x_i + s f_i evaluated at H
            let outer = &Polynomial::var(n + 1, i) + &(&s * &lift(f.component(i)));
            let composed = outer.substitute(&h).unwrap();
            let residual = &composed - &Polynomial::var(n + 1, i);
            for (m, _) in residual.terms() {
                prop_assert!(*m.exponents().last().unwrap() as usize > order);
            }
        }
    }

    #[test]
    fn inverse_degrees_are_bounded(seed in any::<u64>(), n in 1usize..=2) {
        let (f, _, _) = setup(seed, n, 3);
        let d = f.degree().max(1);
        let g = formal_inverse(&f, 4, Route::Direct).unwrap();
        for m in 1..=4 {
            let c = g.coefficient(m);
            prop_assert!(c.degree() <= (d - 1) * m as i64 + 1);
        }
    }

    #[test]
    fn non_reduced_words_vanish_on_x(seed in any::<u64>(), n in 1usize..=2, m in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random::map(&mut rng, n, Shape { max_degree: m, ..shape(m) });
        let m = f.degree().max(0) as u32;
        for w in 1..=5 {
            let reduced = enumerate_m_reduced(m, w);
            prop_assert!(reduced.members.iter().all(|c| c.lp() == 1 && c.weight() == w));
            for word in compositions_of(w) {
                let member = reduced.members.iter().any(|c| c.parts() == word.as_slice());
                if !member {
                    for i in 0..n {
                        let out = lambda_word(&word, &Polynomial::var(n, i), &f).unwrap();
                        prop_assert!(out.is_zero(), "{:?}", word);
                    }
                }
            }
        }
    }
}

/// The inverse coefficients generate the same bounded Lie algebra as the
/// right powers, for triangular maps whose closures close.
#[test]
fn inverse_coefficients_and_right_powers_generate_the_same_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let config = ClosureConfig::default();
    let mut checked = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=3);
        let d = random::strongly_triangular(&mut rng, n, shape(2));
        let powers = bracket_closure(&d, config).unwrap();
        if !powers.is_closed() {
            continue;
        }
        let index = d.right_nilpotency_index(config.power_bound).unwrap().expect("triangular maps are right nilpotent");
        let order = index + 2;
        let g = formal_inverse(&d, order, Route::Direct).unwrap();
        let gens: Vec<(String, PolyMap)> = (1..=order)
            .map(|m| (format!("F{m}"), g.coefficient(m).clone()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let coeffs = BracketClosure::from_generators(n, gens.clone(), config).unwrap();
        assert!(coeffs.is_closed());
        for (label, c) in &gens {
            assert!(powers.contains(c), "{label} outside the closure of the right powers of {d}");
        }
        for p in d.right_powers(index) {
            if !p.is_zero() {
                assert!(coeffs.contains(&p), "right power outside the closure of the coefficients of {d}");
            }
        }
        checked += 1;
        if checked == 20 {
            break;
        }
    }
    assert!(checked >= 10, "only {checked} closed instances");
}
