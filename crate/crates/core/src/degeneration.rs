//! The one-parameter family `z^{e_j} x_i y_j - z^{e_i} x_j y_i` that
//! degenerates the diagonal of `P^r x P^r` onto a full union of `Q`
//! schemes, with the two certificates that the special fiber contains the
//! union: vanishing of the `z = 0` equations on every component, and the
//! explicit limit of a moving point.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{format_rat, frac, rational, Rat};
use crate::oracle::Verdict;
use crate::schemes::{component_schemes, UnionSpec};

/// `e_j = n - k` where `k` is the block containing `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationFamily {
    spec: UnionSpec,
    epsilons: Vec<u32>,
}

/// `x_i y_j - z^{z_power} x_j y_i`, after dividing out `z^{e_j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyGenerator {
    pub i: usize,
    pub j: usize,
    #[serde(rename = "epsI")]
    pub eps_i: u32,
    #[serde(rename = "epsJ")]
    pub eps_j: u32,
    #[serde(rename = "zPower")]
    pub z_power: u32,
}

/// `lead * x_i y_j - trail * x_j y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializedGenerator {
    pub i: usize,
    pub j: usize,
    #[serde(with = "rational::as_string")]
    pub lead: Rat,
    #[serde(with = "rational::as_string")]
    pub trail: Rat,
}

impl SpecializedGenerator {
    pub fn eval(&self, pt: &BiPoint) -> Rat {
        &self.lead * &pt.a[self.i] * &pt.b[self.j] - &self.trail * &pt.a[self.j] * &pt.b[self.i]
    }
}

impl DegenerationFamily {
    pub fn new(spec: &UnionSpec) -> Result<Self> {
        if !spec.is_full() {
            return Err(Error::Scope(format!("union {spec} is not full; no degeneration of the diagonal")));
        }
        let n = spec.last() as u32;
        let epsilons = (0..=spec.r())
            .map(|j| n - spec.block_of(j).expect("full spec covers every index") as u32)
            .collect();
        Ok(DegenerationFamily { spec: spec.clone(), epsilons })
    }

    pub fn spec(&self) -> &UnionSpec {
        &self.spec
    }

    pub fn epsilons(&self) -> &[u32] {
        &self.epsilons
    }

    /// One generator per pair `i < j`.
    pub fn generators(&self) -> Vec<FamilyGenerator> {
        let r = self.spec.r();
        let mut out = Vec::new();
        for i in 0..=r {
            for j in i + 1..=r {
                let (eps_i, eps_j) = (self.epsilons[i], self.epsilons[j]);
                out.push(FamilyGenerator { i, j, eps_i, eps_j, z_power: eps_i - eps_j });
            }
        }
        out
    }

    /// The generators at `z = z0`, with `0^0 = 1`.
    pub fn specialize(&self, z0: &Rat) -> Vec<SpecializedGenerator> {
        self.generators()
            .into_iter()
            .map(|g| SpecializedGenerator {
                i: g.i,
                j: g.j,
                lead: Rat::one(),
                trail: rational::pow(z0, g.z_power),
            })
            .collect()
    }

    fn check_block(&self, block: usize) -> Result<()> {
        if block > self.spec.last() {
            return Err(Error::Input(format!("block {block} out of range 0..={}", self.spec.last())));
        }
        Ok(())
    }

    /// The `z -> 0` limit of the moving point built from `pt` on component
    /// `block`. On success this equals `pt`; a different limit is an
    /// invariant error.
    pub fn limit_of_point(&self, pt: &BiPoint, block: usize) -> Result<BiPoint> {
        self.check_block(block)?;
        let r = self.spec.r();
        if pt.a.len() != r + 1 {
            return Err(Error::Input(format!("point has {} coordinates, expected {}", pt.a.len(), r + 1)));
        }
        let p = self.spec.p_seq()[block];
        let hi = p + self.spec.mults()[block];
        let (a, b) = (&pt.a, &pt.b);
        if a[..p].iter().any(|x| !x.is_zero()) || b[hi + 1..].iter().any(|x| !x.is_zero()) {
            return Err(Error::NotOnComponent(block));
        }
        let Some(t) = (p..=hi).find(|&j| !a[j].is_zero()) else {
            return Err(Error::Genericity("x-part vanishes on the overlap block".into()));
        };
        if (p..=hi).all(|j| b[j].is_zero()) {
            return Err(Error::Genericity("y-part vanishes on the overlap block".into()));
        }
        if b[t].is_zero() {
            return Err(Error::NotOnComponent(block));
        }
        let scale = &a[t] / &b[t];
        let b: Vec<Rat> = b.iter().map(|x| x * &scale).collect();
        if (p..=hi).any(|j| a[j] != b[j]) {
            return Err(Error::NotOnComponent(block));
        }

        let eps = |j: usize| i64::from(self.epsilons[j]);
        let e = |j: usize| if j >= p { -eps(j) } else { -eps(p) };
        // c_j as (coefficient, z-exponent).
        let c: Vec<(Rat, i64)> =
            (0..=r).map(|j| (if j >= p { a[j].clone() } else { b[j].clone() }, e(j))).collect();
        let left: Vec<(Rat, i64)> = c.iter().enumerate().map(|(j, (x, k))| (x.clone(), k + eps(j))).collect();
        let limit = BiPoint::new(laurent_limit(&left)?, laurent_limit(&c)?)?;
        if &limit != pt {
            return Err(Error::Invariant(format!("limit {limit} differs from the starting point {pt}")));
        }
        Ok(limit)
    }
}

/// Divides by the lowest power of `z` among nonzero entries and sets `z = 0`.
fn laurent_limit(v: &[(Rat, i64)]) -> Result<Vec<Rat>> {
    let low = v
        .iter()
        .filter(|(x, _)| !x.is_zero())
        .map(|&(_, k)| k)
        .min()
        .ok_or_else(|| Error::Genericity("moving point is identically zero".into()))?;
    Ok(v.iter().map(|(x, k)| if *k == low { x.clone() } else { Rat::zero() }).collect())
}

/// A point of `P^r x P^r`, scaled so each factor's first nonzero coordinate
/// is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiPoint {
    #[serde(with = "rational::vec_as_strings")]
    a: Vec<Rat>,
    #[serde(with = "rational::vec_as_strings")]
    b: Vec<Rat>,
}

fn normalize(v: Vec<Rat>, name: &str) -> Result<Vec<Rat>> {
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .ok_or_else(|| Error::Input(format!("{name}-part of the point is identically zero")))?;
    Ok(v.into_iter().map(|x| x / &lead).collect())
}

impl BiPoint {
    pub fn new(a: Vec<Rat>, b: Vec<Rat>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Input(format!("factors have {} and {} coordinates", a.len(), b.len())));
        }
        Ok(BiPoint { a: normalize(a, "x")?, b: normalize(b, "y")? })
    }

    pub fn a(&self) -> &[Rat] {
        &self.a
    }

    pub fn b(&self) -> &[Rat] {
        &self.b
    }
}

impl std::fmt::Display for BiPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |v: &[Rat]| v.iter().map(format_rat).collect::<Vec<_>>().join(", ");
        write!(f, "(({}), ({}))", show(&self.a), show(&self.b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Var {
    Lambda,
    Mu,
    Z(usize),
    U(usize),
    V(usize),
}

type Monomial = BTreeMap<Var, u32>;

/// Coordinates of component `k` as monomials in its parameters:
/// `x_j = 0, y_j = v_j` below the overlap, `x_j = lambda z_j, y_j = mu z_j`
/// on it, `x_j = u_j, y_j = 0` above it.
fn parametrization(spec: &UnionSpec, k: usize) -> (Vec<Option<Monomial>>, Vec<Option<Monomial>>) {
    let (p, hi) = (spec.p_seq()[k], spec.p_seq()[k] + spec.mults()[k]);
    let mono = |vars: &[Var]| Some(vars.iter().map(|v| (v.clone(), 1)).collect::<Monomial>());
    let xs = (0..=spec.r())
        .map(|j| match j {
            _ if j < p => None,
            _ if j <= hi => mono(&[Var::Lambda, Var::Z(j)]),
            _ => mono(&[Var::U(j)]),
        })
        .collect();
    let ys = (0..=spec.r())
        .map(|j| match j {
            _ if j < p => mono(&[Var::V(j)]),
            _ if j <= hi => mono(&[Var::Mu, Var::Z(j)]),
            _ => None,
        })
        .collect();
    (xs, ys)
}

fn product(a: &Option<Monomial>, b: &Option<Monomial>) -> Option<Monomial> {
    let (a, b) = (a.as_ref()?, b.as_ref()?);
    let mut out = a.clone();
    for (v, e) in b {
        *out.entry(v.clone()).or_insert(0) += e;
    }
    Some(out)
}

/// Whether the generator is identically zero after substituting the
/// parametrization of component `k`.
pub fn vanishes_on_component(g: &SpecializedGenerator, spec: &UnionSpec, k: usize) -> bool {
    let (xs, ys) = parametrization(spec, k);
    let mut poly: BTreeMap<Monomial, Rat> = BTreeMap::new();
    for (coeff, m) in [
        (g.lead.clone(), product(&xs[g.i], &ys[g.j])),
        (-g.trail.clone(), product(&xs[g.j], &ys[g.i])),
    ] {
        if let Some(m) = m {
            *poly.entry(m).or_insert_with(Rat::zero) += coeff;
        }
    }
    poly.values().all(Zero::is_zero)
}

/// Every `z = 0` generator against every component.
pub fn special_fiber_contains_union(fam: &DegenerationFamily) -> bool {
    let gens = fam.specialize(&Rat::zero());
    (0..=fam.spec.last()).all(|k| gens.iter().all(|g| vanishes_on_component(g, &fam.spec, k)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleFailure {
    pub index: usize,
    pub component: usize,
    pub point: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub checked: usize,
    pub failures: Vec<SampleFailure>,
    pub verdict: Verdict,
}

fn random_rat(rng: &mut ChaCha8Rng, nonzero: bool) -> Rat {
    loop {
        let x = frac(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        if !nonzero || !x.is_zero() {
            return x;
        }
    }
}

/// A random point of component `k` whose overlap parts are both nonzero.
pub fn random_point(rng: &mut ChaCha8Rng, spec: &UnionSpec, k: usize) -> BiPoint {
    let r = spec.r();
    let (p, hi) = (spec.p_seq()[k], spec.p_seq()[k] + spec.mults()[k]);
    let lambda = random_rat(rng, true);
    let mu = random_rat(rng, true);
    let mut zs: Vec<Rat> = (p..=hi).map(|_| random_rat(rng, false)).collect();
    if zs.iter().all(Zero::is_zero) {
        let t = rng.gen_range(0..zs.len());
        zs[t] = random_rat(rng, true);
    }
    let mut a = vec![Rat::zero(); r + 1];
    let mut b = vec![Rat::zero(); r + 1];
    for j in 0..=r {
        if j < p {
            b[j] = random_rat(rng, false);
        } else if j <= hi {
            a[j] = &lambda * &zs[j - p];
            b[j] = &mu * &zs[j - p];
        } else {
            a[j] = random_rat(rng, false);
        }
    }
    BiPoint::new(a, b).expect("overlap is nonzero")
}

/// Checks given `(point, component)` pairs: every `z = 0` generator must
/// vanish at the point and the limit construction must return it.
pub fn check_points(fam: &DegenerationFamily, points: &[(BiPoint, usize)]) -> ContainmentReport {
    let gens = fam.specialize(&Rat::zero());
    let mut failures = Vec::new();
    for (index, (pt, k)) in points.iter().enumerate() {
        let fail = |reason: String| SampleFailure { index, component: *k, point: pt.to_string(), reason };
        if pt.a.len() != fam.spec.r() + 1 {
            failures.push(fail("wrong number of coordinates".into()));
            continue;
        }
        if let Some(g) = gens.iter().find(|g| !g.eval(pt).is_zero()) {
            failures.push(fail(format!("generator ({}, {}) does not vanish", g.i, g.j)));
            continue;
        }
        if let Err(e) = fam.limit_of_point(pt, *k) {
            failures.push(fail(e.to_string()));
        }
    }
    ContainmentReport {
        checked: points.len(),
        verdict: if failures.is_empty() { Verdict::Pass } else { Verdict::Fail },
        failures,
    }
}

/// [`check_points`] on `count` seeded random points of random components.
pub fn sample_containment(fam: &DegenerationFamily, seed: u64, count: usize) -> ContainmentReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps = component_schemes(&fam.spec).len();
    let points: Vec<(BiPoint, usize)> = (0..count)
        .map(|_| {
            let k = rng.gen_range(0..comps);
            (random_point(&mut rng, &fam.spec, k), k)
        })
        .collect();
    check_points(fam, &points)
}
