use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::Rational;

use super::composition::{compositions_of, Composition};
use super::element::{NSymmElement, Word};

/// A system of free generators of NSymm.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    Z,
    Theta,
    Psi,
    U,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Z, Family::Theta, Family::Psi, Family::U];

    pub fn symbol(self) -> &'static str {
        match self {
            Family::Z => "Z",
            Family::Theta => "Theta",
            Family::Psi => "Psi",
            Family::U => "U",
        }
    }

    /// Coefficient of `Z_n` in the `n`-th generator.
    fn leading(self, n: u32) -> Rational {
        match self {
            Family::Z | Family::U => Rational::one(),
            Family::Theta | Family::Psi => Rational::from_integer(n.into()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Family::Z),
            "theta" => Ok(Family::Theta),
            "psi" => Ok(Family::Psi),
            "u" => Ok(Family::U),
            other => Err(Error::InvalidArgument(format!("unknown family `{other}`"))),
        }
    }
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// The `n`-th generator of `family` expanded in Z-words:
///
/// - `Theta_n = sum (-1)^{k-1} r_1 Z_{r_1} ... Z_{r_k}`
/// - `Psi_n   = sum (-1)^{k-1} r_k Z_{r_1} ... Z_{r_k}`
/// - `U_n     = sum (-1)^{k-1} / k Z_{r_1} ... Z_{r_k}`
///
/// summed over the compositions `(r_1, ..., r_k)` of `n`.
pub fn generator(family: Family, n: u32, bound: u32) -> Result<NSymmElement> {
    if n == 0 {
        return Err(Error::InvalidArgument("generators are indexed from 1".into()));
    }
    if n > bound {
        return Err(Error::WeightOverBound { weight: n, bound });
    }
    if family == Family::Z {
        return NSymmElement::word(vec![n], bound);
    }
    let terms = compositions_of(n).into_iter().map(|r| {
        let k = r.len();
        let s = sign(k - 1);
        let c = match family {
            Family::Theta => s * Rational::from_integer(r[0].into()),
            Family::Psi => s * Rational::from_integer(r[k - 1].into()),
            Family::U => s / Rational::from_integer(k.into()),
            Family::Z => unreachable!(),
        };
        (r, c)
    });
    Ok(NSymmElement::from_terms(bound, terms))
}

/// Generators `1..=bound` of a family, indexed from 0.
pub fn generators(family: Family, bound: u32) -> Vec<NSymmElement> {
    (1..=bound)
        .map(|n| generator(family, n, bound).expect("n <= bound"))
        .collect()
}

/// `Theta_1..Theta_n` from `n Z_n = Theta_n + Theta_{n-1} Z_1 + ... + Theta_1 Z_{n-1}`.
pub fn theta_by_recursion(bound: u32) -> Vec<NSymmElement> {
    let mut out: Vec<NSymmElement> = Vec::new();
    for n in 1..=bound {
        let mut x = NSymmElement::word(vec![n], bound)
            .expect("n <= bound")
            .scale(&Rational::from_integer(n.into()));
        for i in 1..n {
            let zi = NSymmElement::word(vec![i], bound).expect("i <= bound");
            let t = out[(n - i - 1) as usize].try_mul(&zi).expect("same bound");
            x = x.try_sub(&t).expect("same bound");
        }
        out.push(x);
    }
    out
}

/// `Psi_1..Psi_n` from `n Z_n = Psi_n + Z_1 Psi_{n-1} + ... + Z_{n-1} Psi_1`.
pub fn psi_by_recursion(bound: u32) -> Vec<NSymmElement> {
    let mut out: Vec<NSymmElement> = Vec::new();
    for n in 1..=bound {
        let mut x = NSymmElement::word(vec![n], bound)
            .expect("n <= bound")
            .scale(&Rational::from_integer(n.into()));
        for i in 1..n {
            let zi = NSymmElement::word(vec![i], bound).expect("i <= bound");
            let t = zi.try_mul(&out[(n - i - 1) as usize]).expect("same bound");
            x = x.try_sub(&t).expect("same bound");
        }
        out.push(x);
    }
    out
}

/// An element written in the words of one generator family. The words are
/// kept in an [`NSymmElement`], read with `family` in place of `Z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisElement {
    pub family: Family,
    pub words: NSymmElement,
}

impl BasisElement {
    pub fn new(family: Family, words: NSymmElement) -> Self {
        BasisElement { family, words }
    }

    pub fn bound(&self) -> u32 {
        self.words.bound()
    }

    pub fn coeff(&self, w: &[u32]) -> Rational {
        self.words.coeff(w)
    }

    /// Expands every family word back into Z-words.
    pub fn to_z(&self) -> NSymmElement {
        let bound = self.bound();
        if self.family == Family::Z {
            return self.words.clone();
        }
        let gens = generators(self.family, bound);
        let mut out = NSymmElement::zero(bound);
        for (w, c) in self.words.terms() {
            let mut acc = NSymmElement::one(bound).scale(c);
            for &letter in w {
                acc = acc.try_mul(&gens[(letter - 1) as usize]).expect("same bound");
            }
            out = out.try_add(&acc).expect("same bound");
        }
        out
    }

    pub fn format(&self) -> String {
        self.words.format(self.family.symbol())
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// Rewrites a Z-word combination in the words of `family`.
///
/// A family word `G^J` equals `prod_j c_j Z^J` plus words of greater length,
/// where `c_j` is the leading coefficient of `G_j`; eliminating shortest words
/// first therefore terminates within each weight.
pub fn convert(x: &NSymmElement, family: Family) -> BasisElement {
    let bound = x.bound();
    if family == Family::Z {
        return BasisElement::new(family, x.clone());
    }
    let gens = generators(family, bound);
    let mut residual = x.clone();
    let mut out = NSymmElement::zero(bound);
    while let Some((w, c)) = residual
        .terms()
        .iter()
        .min_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)))
        .map(|(w, c)| (w.clone(), c.clone()))
    {
        let lead: Rational = w.iter().map(|&j| family.leading(j)).product();
        let a = c / lead;
        let mut g = NSymmElement::one(bound).scale(&a);
        for &letter in &w {
            g = g.try_mul(&gens[(letter - 1) as usize]).expect("same bound");
        }
        residual = residual.try_sub(&g).expect("same bound");
        out.add_term(w, a);
    }
    BasisElement::new(family, out)
}

/// `Z_1..Z_bound` written in Psi- or Theta-words by solving the recursions
/// for `n Z_n` directly in the family basis.
pub fn z_by_recursion(family: Family, bound: u32) -> Result<Vec<BasisElement>> {
    let left = match family {
        Family::Psi => false,
        Family::Theta => true,
        _ => {
            return Err(Error::InvalidArgument(
                "recursions exist for the Theta and Psi families only".into(),
            ))
        }
    };
    let mut out: Vec<NSymmElement> = Vec::new();
    for n in 1..=bound {
        let mut x = NSymmElement::word(vec![n], bound).expect("n <= bound");
        for i in 1..n {
            let g = NSymmElement::word(vec![n - i], bound).expect("within bound");
            let zi = &out[(i - 1) as usize];
            let t = if left { g.try_mul(zi) } else { zi.try_mul(&g) }.expect("same bound");
            x = x.try_add(&t).expect("same bound");
        }
        out.push(x.scale(&Rational::new(BigInt::one(), BigInt::from(n))));
    }
    Ok(out.into_iter().map(|x| BasisElement::new(family, x)).collect())
}

/// Which of the composition-sum formulas to evaluate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mirror {
    /// `pi_u(J, I)`, `lp(J, I)`: the Psi formulas.
    Plain,
    /// `pi_u(mirror J, mirror I)`, `lp(mirror J, mirror I)`: the Theta formulas.
    Mirrored,
}

fn inv(n: BigInt) -> Rational {
    Rational::new(BigInt::one(), n)
}

/// `Z^I = sum_{J >= I} 1/pi_u(J, I) Psi^J` (plain) or
/// `Z^I = sum_{J >= I} 1/pi_u(mirror J, mirror I) Theta^J` (mirrored).
pub fn z_word_in_family(i: &Composition, mirror: Mirror, bound: u32) -> Result<BasisElement> {
    check_weight(i.weight(), bound)?;
    let family = match mirror {
        Mirror::Plain => Family::Psi,
        Mirror::Mirrored => Family::Theta,
    };
    let terms = i.refinements().into_iter().map(|r| {
        let c = match mirror {
            Mirror::Plain => inv(r.pi_u()),
            Mirror::Mirrored => inv(r.mirrored_pi_u()),
        };
        (r.fine.into_parts(), c)
    });
    Ok(BasisElement::new(family, NSymmElement::from_terms(bound, terms)))
}

/// `Psi^I = sum_{J >= I} (-1)^{l(J)-l(I)} lp(J, I) Z^J` (plain) or
/// `Theta^I = sum_{J >= I} (-1)^{l(J)-l(I)} lp(mirror J, mirror I) Z^J` (mirrored).
pub fn family_word_in_z(i: &Composition, mirror: Mirror, bound: u32) -> Result<NSymmElement> {
    check_weight(i.weight(), bound)?;
    let terms = i.refinements().into_iter().map(|r| {
        let lp = match mirror {
            Mirror::Plain => r.lp(),
            Mirror::Mirrored => r.mirrored_lp(),
        };
        let c = sign(r.fine.len() - i.len()) * Rational::from_integer(lp);
        (r.fine.into_parts(), c)
    });
    Ok(NSymmElement::from_terms(bound, terms))
}

/// `Psi_n = sum_{J >= I, |I| = n} (-1)^{l(I)-1} lp(I) / pi_u(mirror J, mirror I) Theta^J`.
pub fn psi_in_theta(n: u32, bound: u32) -> Result<BasisElement> {
    check_weight(n, bound)?;
    let mut acc: BTreeMap<Word, Rational> = BTreeMap::new();
    for i in Composition::all_of_weight(n) {
        let outer = sign(i.len() - 1) * Rational::from_integer(i.lp().into());
        for r in i.refinements() {
            let e = acc.entry(r.fine.parts().to_vec()).or_insert_with(Rational::zero);
            *e += &outer * inv(r.mirrored_pi_u());
        }
    }
    Ok(BasisElement::new(Family::Theta, NSymmElement::from_terms(bound, acc)))
}

/// `Z_m = sum over compositions of m of 1/k! U_{i_1} ... U_{i_k}`, evaluated
/// by substituting the U-expansions.
pub fn z_from_u(m: u32, bound: u32) -> Result<NSymmElement> {
    check_weight(m, bound)?;
    let mut factorial = vec![Rational::one()];
    for k in 1..=m as usize {
        let next = &factorial[k - 1] * Rational::from_integer(k.into());
        factorial.push(next);
    }
    let words = NSymmElement::from_terms(
        bound,
        compositions_of(m)
            .into_iter()
            .map(|w| {
                let k = w.len();
                (w, Rational::one() / &factorial[k])
            }),
    );
    Ok(BasisElement::new(Family::U, words).to_z())
}

fn check_weight(n: u32, bound: u32) -> Result<()> {
    if n > bound {
        return Err(Error::WeightOverBound { weight: n, bound });
    }
    Ok(())
}
