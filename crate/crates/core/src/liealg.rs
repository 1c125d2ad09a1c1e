//! Bounded bracket closures of right powers, divergence audits, and finite
//! structure tables obtained by specializing a constant variable.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linear::{LinearSpan, SparseVec};
use crate::lsalg::{Derivation, DEFAULT_POWER_BOUND};
use crate::polyring::{format_rational, Monomial, PolyMap, Polynomial, Rational};

pub type Coords = SparseVec<(usize, Monomial)>;

/// The coefficient vector of a derivation, keyed by (component, monomial).
pub fn to_coords(d: &Derivation) -> Coords {
    let mut v = Coords::new();
    for (i, f) in d.components().iter().enumerate() {
        for (m, c) in f.terms() {
            v.insert((i, m.clone()), c.clone());
        }
    }
    v
}

pub fn from_coords(nvars: usize, v: &Coords) -> Derivation {
    let mut comps = vec![Polynomial::zero(nvars); nvars];
    for ((i, m), c) in v {
        comps[*i] = &comps[*i] + &Polynomial::monomial(m.clone(), c.clone());
    }
    PolyMap::new(comps).expect("nvars components")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureConfig {
    /// Bracketing rounds.
    pub depth: usize,
    /// Largest admitted total degree of a component.
    pub degree_cap: i64,
    /// How many right powers to try as generators.
    pub power_bound: usize,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            depth: 6,
            degree_cap: 24,
            power_bound: DEFAULT_POWER_BOUND,
        }
    }
}

/// A linearly independent spanning list of the brackets of some generators,
/// computed round by round.
#[derive(Clone, Debug)]
pub struct BracketClosure {
    pub generators: Vec<Derivation>,
    pub labels: Vec<String>,
    pub elements: Vec<Derivation>,
    /// Rounds performed.
    pub depth: usize,
    pub degree_cap: i64,
    /// The last round produced nothing new under the degree cap.
    pub stabilized: bool,
    /// Brackets (or generators) rejected for exceeding the degree cap.
    pub over_cap: usize,
    span: LinearSpan<(usize, Monomial)>,
    nvars: usize,
}

impl BracketClosure {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Stabilized and nothing was dropped by the degree cap.
    pub fn is_closed(&self) -> bool {
        self.stabilized && self.over_cap == 0
    }

    pub fn status(&self) -> String {
        match (self.stabilized, self.over_cap) {
            (true, 0) => format!("closed after {} rounds", self.depth),
            (true, k) => format!(
                "stabilized after {} rounds modulo the degree cap {} ({k} brackets over the cap)",
                self.depth, self.degree_cap
            ),
            (false, _) => format!("not closed within caps (depth {}, degree cap {})", self.depth, self.degree_cap),
        }
    }

    pub fn contains(&self, d: &Derivation) -> bool {
        self.span.contains(&to_coords(d))
    }

    /// Coordinates of `d` over `elements`.
    pub fn coordinates(&self, d: &Derivation) -> Option<Vec<Rational>> {
        self.span.coordinates(&to_coords(d))
    }

    fn admit(&mut self, d: Derivation, label: String) -> bool {
        if d.degree() > self.degree_cap {
            self.over_cap += 1;
            return false;
        }
        if self.span.insert(&to_coords(&d)).is_some() {
            self.elements.push(d);
            self.labels.push(label);
            true
        } else {
            false
        }
    }

    /// The closure of explicit generators.
    pub fn from_generators(
        nvars: usize,
        generators: Vec<(String, Derivation)>,
        config: ClosureConfig,
    ) -> Result<BracketClosure> {
        if config.depth == 0 {
            return Err(Error::InvalidArgument("closure depth must be at least 1".into()));
        }
        for (_, g) in &generators {
            if g.nvars() != nvars {
                return Err(Error::VarCountMismatch {
                    left: nvars,
                    right: g.nvars(),
                });
            }
        }
        let mut c = BracketClosure {
            generators: generators.iter().map(|(_, g)| g.clone()).collect(),
            labels: Vec::new(),
            elements: Vec::new(),
            depth: 0,
            degree_cap: config.degree_cap,
            stabilized: false,
            over_cap: 0,
            span: LinearSpan::new(),
            nvars,
        };
        for (label, g) in generators {
            c.admit(g, label);
        }
        let mut fresh_from = 0;
        while c.depth < config.depth {
            c.depth += 1;
            let before = c.elements.len();
            let mut added = false;
            for j in fresh_from..before {
                for i in 0..j {
                    let b = c.elements[i].commutator(&c.elements[j])?;
                    let label = format!("[{}, {}]", c.labels[i], c.labels[j]);
                    added |= c.admit(b, label);
                }
            }
            fresh_from = before;
            if !added {
                c.stabilized = true;
                break;
            }
        }
        Ok(c)
    }
}

/// The closure of the nonzero right powers `D^{[1]}, D^{[2]}, ...` up to the
/// first vanishing one or `config.power_bound`.
pub fn bracket_closure(d: &Derivation, config: ClosureConfig) -> Result<BracketClosure> {
    let gens: Vec<(String, Derivation)> = d
        .right_powers(config.power_bound.max(1))
        .into_iter()
        .enumerate()
        .take_while(|(_, p)| !p.is_zero())
        .map(|(k, p)| (format!("D^[{}]", k + 1), p))
        .collect();
    BracketClosure::from_generators(d.nvars(), gens, config)
}

/// Divergences of the elements of a closure.
#[derive(Clone, Debug)]
pub struct DivergenceAudit {
    pub entries: Vec<(String, Polynomial)>,
    /// Nilpotency of the Jacobian of the first generator, when one exists.
    pub jacobian_nilpotent: Option<bool>,
}

impl DivergenceAudit {
    pub fn all_zero(&self) -> bool {
        self.entries.iter().all(|(_, p)| p.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<&(String, Polynomial)> {
        self.entries.iter().find(|(_, p)| !p.is_zero())
    }

    /// A nilpotent Jacobian with a nonzero divergence would contradict the
    /// divergence criterion.
    pub fn consistent(&self) -> bool {
        self.jacobian_nilpotent != Some(true) || self.all_zero()
    }
}

pub fn divergence_audit(c: &BracketClosure) -> DivergenceAudit {
    DivergenceAudit {
        entries: c
            .labels
            .iter()
            .zip(&c.elements)
            .map(|(l, e)| (l.clone(), e.divergence()))
            .collect(),
        jacobian_nilpotent: c.generators.first().map(|g| g.jacobian().is_nilpotent()),
    }
}

/// Structure constants of a finite-dimensional Lie algebra over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub labels: Vec<String>,
    /// Realizations of the basis, when the table came from derivations.
    pub basis: Vec<Derivation>,
    /// `[e_i, e_j]` for `i < j`, as coordinates; absent pairs commute.
    pub brackets: BTreeMap<(usize, usize), Vec<Rational>>,
}

/// Dimensions of the lower central and derived series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesDims {
    pub lower_central: Vec<usize>,
    pub derived: Vec<usize>,
}

impl SeriesDims {
    pub fn nilpotent(&self) -> bool {
        self.lower_central.last() == Some(&0)
    }

    pub fn solvable(&self) -> bool {
        self.derived.last() == Some(&0)
    }
}

impl StructureTable {
    /// From abstract structure constants; pairs may be given in either order.
    pub fn from_constants(
        labels: Vec<String>,
        brackets: Vec<((usize, usize), Vec<Rational>)>,
    ) -> Result<StructureTable> {
        let d = labels.len();
        let mut table = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= d || j >= d || v.len() != d {
                return Err(Error::InvalidArgument("structure constant out of range".into()));
            }
            if i == j {
                if v.iter().any(|c| !c.is_zero()) {
                    return Err(Error::InvalidArgument("[e_i, e_i] must vanish".into()));
                }
                continue;
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), v.iter().map(|c| -c).collect()) };
            if v.iter().any(|c| !c.is_zero()) {
                table.insert(key, v);
            }
        }
        Ok(StructureTable {
            labels,
            basis: Vec::new(),
            brackets: table,
        })
    }

    /// The structure table of a closed closure.
    pub fn from_closure(c: &BracketClosure) -> Result<StructureTable> {
        if !c.is_closed() {
            return Err(Error::NotClosed(c.status()));
        }
        let mut brackets = BTreeMap::new();
        for j in 0..c.dim() {
            for i in 0..j {
                let b = c.elements[i].commutator(&c.elements[j])?;
                let coords = c
                    .coordinates(&b)
                    .ok_or_else(|| Error::NotClosed(format!("[{}, {}] leaves the span", c.labels[i], c.labels[j])))?;
                if coords.iter().any(|x| !x.is_zero()) {
                    brackets.insert((i, j), coords);
                }
            }
        }
        Ok(StructureTable {
            labels: c.labels.clone(),
            basis: c.elements.clone(),
            brackets,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let d = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => vec![Rational::zero(); d],
            std::cmp::Ordering::Less => self
                .brackets
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| vec![Rational::zero(); d]),
            std::cmp::Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|c| -c).collect())
                .unwrap_or_else(|| vec![Rational::zero(); d]),
        }
    }

    /// Bilinear extension to coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// `[[x, y], z] + [[y, z], x] + [[z, x], y]` over all basis triples; the
    /// number of triples where it is nonzero.
    pub fn jacobi_violations(&self) -> usize {
        let d = self.dim();
        let e = |i: usize| {
            let mut v = vec![Rational::zero(); d];
            v[i] = Rational::from_integer(1.into());
            v
        };
        let mut bad = 0;
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let a = self.bracket(&self.bracket(&x, &y), &z);
                    let b = self.bracket(&self.bracket(&y, &z), &x);
                    let c = self.bracket(&self.bracket(&z, &x), &y);
                    if a.iter().zip(&b).zip(&c).any(|((p, q), r)| !(p + q + r).is_zero()) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// The bracket table realized by derivations agrees with the coordinates.
    pub fn matches_realization(&self) -> Result<bool> {
        if self.basis.is_empty() {
            return Ok(true);
        }
        let n = self.basis[0].nvars();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let direct = self.basis[i].commutator(&self.basis[j])?;
                let mut combo = PolyMap::zero(n);
                for (k, c) in self.bracket_basis(i, j).iter().enumerate() {
                    combo = &combo + &self.basis[k].scale(c);
                }
                if combo != direct {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn span_dim(vectors: &[Vec<Rational>]) -> (usize, Vec<Vec<Rational>>) {
        let mut span: LinearSpan<usize> = LinearSpan::new();
        let mut basis = Vec::new();
        for v in vectors {
            let sv: SparseVec<usize> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect();
            if span.insert(&sv).is_some() {
                basis.push(v.clone());
            }
        }
        (span.dim(), basis)
    }

    /// Dimensions of `L = L^1 > L^2 = [L, L] > L^3 = [L, L^2] > ...` and
    /// `L > [L, L] > [[L, L], [L, L]] > ...`, each listed until it repeats
    /// or reaches zero.
    pub fn lcs_and_derived_series(&self) -> SeriesDims {
        let d = self.dim();
        let full: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut v = vec![Rational::zero(); d];
                v[i] = Rational::from_integer(1.into());
                v
            })
            .collect();
        let step = |left: &[Vec<Rational>], right: &[Vec<Rational>]| {
            let mut products = Vec::new();
            for x in left {
                for y in right {
                    products.push(self.bracket(x, y));
                }
            }
            Self::span_dim(&products)
        };
        let series = |derived: bool| {
            let mut dims = vec![d];
            let mut current = full.clone();
            while *dims.last().expect("nonempty") > 0 {
                let (dim, basis) = if derived { step(&current, &current) } else { step(&full, &current) };
                let stalled = dim == *dims.last().expect("nonempty");
                dims.push(dim);
                current = basis;
                if stalled {
                    break;
                }
            }
            dims
        };
        SeriesDims {
            lower_central: series(false),
            derived: series(true),
        }
    }

    /// Relations `[a, b] = ...` for every noncommuting pair of basis elements.
    pub fn relations(&self) -> Vec<String> {
        self.brackets
            .iter()
            .map(|(&(i, j), v)| {
                let rhs = format_coords(v, &self.labels);
                format!("[{}, {}] = {}", self.labels[i], self.labels[j], rhs)
            })
            .collect()
    }
}

impl fmt::Display for StructureTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.relations() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// `2*c - b` style rendering of coordinates over labelled basis elements.
pub fn format_coords(v: &[Rational], labels: &[String]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Rational::zero();
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs != Rational::from_integer(1.into()) {
            out.push_str(&format_rational(&abs));
            out.push('*');
        }
        out.push_str(&labels[k]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Substitutes `value` for a variable that every generator annihilates and
/// closes the image. Fails when some generator moves the variable or when
/// the image does not close within `config`.
pub fn specialize(
    c: &BracketClosure,
    var: usize,
    value: &Rational,
    config: ClosureConfig,
) -> Result<StructureTable> {
    if var >= c.nvars() {
        return Err(Error::VarIndexOutOfRange {
            index: var,
            nvars: c.nvars(),
        });
    }
    let mut gens = Vec::new();
    for (label, g) in c.labels.iter().zip(&c.elements) {
        if !g.component(var).is_zero() {
            return Err(Error::InvalidArgument(format!(
                "{label} does not annihilate the specialized variable"
            )));
        }
        gens.push((label.clone(), g.specialize(var, value)?));
    }
    let image = BracketClosure::from_generators(c.nvars(), gens, config)?;
    StructureTable::from_closure(&image)
}

/// Lower central series of the span of a closed closure.
pub fn closure_series(c: &BracketClosure) -> Result<SeriesDims> {
    Ok(StructureTable::from_closure(c)?.lcs_and_derived_series())
}
