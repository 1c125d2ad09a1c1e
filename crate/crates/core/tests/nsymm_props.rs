use derivalg::nsymm::composition::compositions_of;
use derivalg::nsymm::lie::{lie_express, lyndon_words_of_weight, LieTerm};
use derivalg::nsymm::{convert, generator, BasisElement, Family, NSymmElement};
use derivalg::polyring::{int, rat};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BOUND: u32 = 6;

fn family(k: usize) -> Family {
    Family::ALL[k % 4]
}

/// A random combination of words of weight at most `BOUND`.
fn element(rng: &mut ChaCha8Rng) -> NSymmElement {
    let mut words = Vec::new();
    for n in 0..=BOUND {
        words.extend(compositions_of(n));
    }
    let k = rng.gen_range(1..=4);
    NSymmElement::from_terms(
        BOUND,
        (0..k).map(|_| {
            let w = words.choose(rng).unwrap().clone();
            (w, rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
        }),
    )
}

fn product(family: Family, word: &[u32]) -> NSymmElement {
    let mut acc = NSymmElement::one(BOUND);
    for &i in word {
        acc = acc.try_mul(&generator(family, i, BOUND).unwrap()).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn convert_roundtrips(seed in any::<u64>(), f in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = element(&mut rng);
        let b = convert(&x, family(f));
        prop_assert_eq!(b.to_z(), x.clone());
        // each family word expands by multiplying generators
        let mut rebuilt = NSymmElement::zero(BOUND);
        for (w, c) in b.words.terms() {
            rebuilt = rebuilt.try_add(&product(family(f), w).scale(c)).unwrap();
        }
        prop_assert_eq!(rebuilt, x);
    }

    #[test]
    fn antipode_is_an_involutive_antihomomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = element(&mut rng);
        let y = element(&mut rng);
        let xy = x.try_mul(&y).unwrap();
        prop_assert_eq!(xy.antipode(), y.antipode().try_mul(&x.antipode()).unwrap());
        prop_assert_eq!(x.antipode().antipode(), x);
    }

    /// m (S (x) id) Delta = m (id (x) S) Delta = counit.
    #[test]
    fn antipode_axiom(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = element(&mut rng);
        let delta = x.coproduct();
        let left = delta.contract(|a| NSymmElement::word(a.clone(), BOUND).unwrap().antipode());
        let unit = NSymmElement::one(BOUND).scale(&x.counit());
        prop_assert_eq!(left, unit.clone());
        let mut right = NSymmElement::zero(BOUND);
        for ((a, b), c) in delta.terms() {
            let term = NSymmElement::word(a.clone(), BOUND)
                .unwrap()
                .try_mul(&NSymmElement::word(b.clone(), BOUND).unwrap().antipode())
                .unwrap();
            right = right.try_add(&term.scale(c)).unwrap();
        }
        prop_assert_eq!(right, unit);
    }

    #[test]
    fn coproduct_is_multiplicative_on_counits(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = element(&mut rng);
        let y = element(&mut rng);
        prop_assert_eq!(x.try_mul(&y).unwrap().counit(), x.counit() * y.counit());
        // (counit (x) id) Delta = id
        let mut back = NSymmElement::zero(BOUND);
        for ((a, b), c) in x.coproduct().terms() {
            if a.is_empty() {
                back = back.try_add(&NSymmElement::word(b.clone(), BOUND).unwrap().scale(c)).unwrap();
            }
        }
        prop_assert_eq!(back, x);
    }

    /// Random combinations of Lyndon brackets are primitive and are recovered
    /// by `lie_express`.
    #[test]
    fn lie_combinations_are_recovered(seed in any::<u64>(), f in 1usize..4) {
        let fam = family(f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let words = lyndon_words_of_weight(n);
        let mut z = NSymmElement::zero(BOUND);
        let mut chosen = Vec::new();
        for w in &words {
            if rng.gen_bool(0.6) {
                let c = rat(rng.gen_range(-3..=3), rng.gen_range(1..=4));
                let br = BasisElement::new(fam, LieTerm::standard(w).expand(BOUND)).to_z();
                z = z.try_add(&br.scale(&c)).unwrap();
                chosen.push((w.clone(), c));
            }
        }
        prop_assert!(z.is_primitive());
        let e = lie_express(&convert(&z, fam)).unwrap();
        for (w, c) in &chosen {
            prop_assert_eq!(&e.coeff(w), c);
        }
        prop_assert_eq!(e.expand(BOUND).to_z(), z);
    }

    #[test]
    fn products_of_primitives_are_not_lie(n in 2u32..=BOUND) {
        let x = generator(Family::Psi, 1, BOUND).unwrap();
        let y = generator(Family::Psi, n - 1, BOUND).unwrap();
        let xy = x.try_mul(&y).unwrap();
        prop_assert!(!xy.is_primitive());
        prop_assert!(lie_express(&convert(&xy, Family::Psi)).is_err());
    }
}

#[test]
fn reversal_swaps_theta_and_psi() {
    for n in 1..=BOUND {
        let theta = generator(Family::Theta, n, BOUND).unwrap();
        let psi = generator(Family::Psi, n, BOUND).unwrap();
        assert_eq!(theta.reverse_words(), psi);
    }
}

#[test]
fn generators_are_primitive_and_negated_by_antipode() {
    for f in [Family::Theta, Family::Psi, Family::U] {
        for n in 1..=BOUND {
            let g = generator(f, n, BOUND).unwrap();
            assert!(g.is_primitive(), "{f}{n}");
            assert_eq!(g.antipode(), g.scale(&int(-1)), "{f}{n}");
        }
    }
}
