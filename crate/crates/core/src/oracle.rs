//! Brute-force bigraded Hilbert functions.
//!
//! Three routes, none of which touches the closed forms in
//! [`crate::schemes`]:
//!
//! - [`hf_minor_combinatorial`] counts the standard monomials of
//!   `Q_{p,q,m}` by stars and bars.
//! - [`hf_linear_algebra`] computes `#monomials - rank(I_{(s,t)})` for an
//!   ideal given by generators, by exact sparse elimination.
//! - [`hf_union`] computes the rank of the restriction map from bidegree
//!   `(s,t)` forms on `P^r x P^r` to the coordinate rings of the components
//!   of a union. Each component ring is represented through its monomial
//!   parametrization, so its `(s,t)` piece has a basis of distinct images.

use std::collections::{BTreeMap, HashMap};

use num_integer::binomial;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{format_rat, rat, BivarPoly, Rat, SparseEchelon, SparseRow};
use crate::schemes::{component_schemes, Coord, IdealGenerators, UnionSpec};

/// Largest monomial basis an oracle will build for one bidegree.
pub const MONOMIAL_LIMIT: u128 = 100_000;

/// Oracle values on `[0, G]^2`.
pub type CountGrid = BTreeMap<(u32, u32), u64>;

/// Number of monomials of degree `deg` in `nvars` variables.
pub fn monomial_count(deg: u32, nvars: usize) -> u128 {
    if nvars == 0 {
        return u128::from(deg == 0);
    }
    binomial(u128::from(deg) + nvars as u128 - 1, nvars as u128 - 1)
}

/// Exponent vectors of all monomials of degree `deg` in `nvars` variables,
/// in lexicographically decreasing order.
pub fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e);
            rec(nvars, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, deg, &mut Vec::new(), &mut out);
    out
}

fn guard(count: u128, what: &str) -> Result<()> {
    if count > MONOMIAL_LIMIT {
        return Err(Error::Resource(format!(
            "{what}: {count} monomials exceed the limit of {MONOMIAL_LIMIT}"
        )));
    }
    Ok(())
}

fn to_u64(x: u128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Resource(format!("count {x} does not fit in 64 bits")))
}

/// Hilbert function of `Q_{p,q,m}` at `(s, t)`: the number of monomials of
/// total degree `s+t` in `q` x-variables, `p` y-variables and `m+1`
/// z-variables with x-degree at most `s` and y-degree at most `t`.
pub fn hf_minor_combinatorial(p: usize, q: usize, m: usize, s: u32, t: u32) -> u64 {
    let mut total: u128 = 0;
    for x_deg in 0..=s {
        for y_deg in 0..=t {
            total += monomial_count(x_deg, q)
                * monomial_count(y_deg, p)
                * monomial_count(s + t - x_deg - y_deg, m + 1);
        }
    }
    u64::try_from(total).expect("count fits in 64 bits at desk scale")
}

/// A generator as a list of `(coefficient, x-exponents, y-exponents)` terms
/// over the core variables, plus its bidegree.
struct CoreGenerator {
    bidegree: (u32, u32),
    terms: Vec<(Rat, Vec<u32>, Vec<u32>)>,
}

/// Hilbert function of `k[x, y] / I` for `I` given by generators, by linear
/// algebra in each bidegree.
///
/// Variables that occur in no generator contribute a free polynomial factor
/// and are split off first; only the remaining core variables enter the
/// rank computation, and the monomial limit applies to that core basis.
pub struct LinearAlgebraOracle {
    core_x: Vec<usize>,
    core_y: Vec<usize>,
    free_x: usize,
    free_y: usize,
    gens: Vec<CoreGenerator>,
}

impl LinearAlgebraOracle {
    pub fn new(gens: &IdealGenerators, x_coords: &[usize], y_coords: &[usize]) -> Result<Self> {
        let check = |c: Coord| -> Result<()> {
            let ok = match c {
                Coord::X(i) => x_coords.contains(&i),
                Coord::Y(i) => y_coords.contains(&i),
            };
            if ok {
                Ok(())
            } else {
                Err(Error::Input(format!("generator uses {c}, which is not an ambient coordinate")))
            }
        };
        let mut used_x = Vec::new();
        let mut used_y = Vec::new();
        for &c in &gens.linear {
            check(c)?;
            match c {
                Coord::X(i) => used_x.push(i),
                Coord::Y(i) => used_y.push(i),
            }
        }
        for &(i, j) in &gens.minors {
            if i >= j {
                return Err(Error::Input(format!("minor ({i}, {j}) must have i < j")));
            }
            for c in [Coord::X(i), Coord::X(j), Coord::Y(i), Coord::Y(j)] {
                check(c)?;
            }
            used_x.extend([i, j]);
            used_y.extend([i, j]);
        }
        let core_x: Vec<usize> = x_coords.iter().copied().filter(|i| used_x.contains(i)).collect();
        let core_y: Vec<usize> = y_coords.iter().copied().filter(|i| used_y.contains(i)).collect();
        let pos = |list: &[usize], i: usize| list.iter().position(|&c| c == i).expect("core variable");
        let unit = |len: usize, at: usize| {
            let mut e = vec![0; len];
            e[at] = 1;
            e
        };
        let (nx, ny) = (core_x.len(), core_y.len());

        let mut core_gens = Vec::new();
        for &c in &gens.linear {
            core_gens.push(match c {
                Coord::X(i) => CoreGenerator {
                    bidegree: (1, 0),
                    terms: vec![(rat(1), unit(nx, pos(&core_x, i)), vec![0; ny])],
                },
                Coord::Y(i) => CoreGenerator {
                    bidegree: (0, 1),
                    terms: vec![(rat(1), vec![0; nx], unit(ny, pos(&core_y, i)))],
                },
            });
        }
        for &(i, j) in &gens.minors {
            let (xi, xj) = (pos(&core_x, i), pos(&core_x, j));
            let (yi, yj) = (pos(&core_y, i), pos(&core_y, j));
            core_gens.push(CoreGenerator {
                bidegree: (1, 1),
                terms: vec![
                    (rat(1), unit(nx, xi), unit(ny, yj)),
                    (rat(-1), unit(nx, xj), unit(ny, yi)),
                ],
            });
        }
        Ok(LinearAlgebraOracle {
            free_x: x_coords.len() - nx,
            free_y: y_coords.len() - ny,
            core_x,
            core_y,
            gens: core_gens,
        })
    }

    /// Hilbert function of the core quotient at `(s, t)`.
    pub fn core_hf(&self, s: u32, t: u32) -> Result<u64> {
        let (nx, ny) = (self.core_x.len(), self.core_y.len());
        let count = monomial_count(s, nx) * monomial_count(t, ny);
        guard(count, &format!("bidegree ({s}, {t})"))?;
        if count == 0 {
            return Ok(0);
        }
        let xs = monomials(nx, s);
        let ys = monomials(ny, t);
        let mut index: HashMap<(Vec<u32>, Vec<u32>), usize> = HashMap::with_capacity(count as usize);
        for a in &xs {
            for b in &ys {
                let next = index.len();
                index.insert((a.clone(), b.clone()), next);
            }
        }
        let mut echelon = SparseEchelon::new();
        for g in &self.gens {
            let (gs, gt) = g.bidegree;
            if gs > s || gt > t {
                continue;
            }
            let mus_x = monomials(nx, s - gs);
            let mus_y = monomials(ny, t - gt);
            for mx in &mus_x {
                for my in &mus_y {
                    let mut row = SparseRow::new();
                    for (c, ex, ey) in &g.terms {
                        let key = (
                            mx.iter().zip(ex).map(|(a, b)| a + b).collect::<Vec<_>>(),
                            my.iter().zip(ey).map(|(a, b)| a + b).collect::<Vec<_>>(),
                        );
                        let col = index[&key];
                        let entry = row.entry(col).or_insert_with(Rat::zero);
                        *entry += c;
                    }
                    echelon.insert(row);
                }
            }
        }
        to_u64(count - echelon.rank() as u128)
    }

    /// Convolves the core Hilbert function with the free variables.
    fn combine(&self, core: &dyn Fn(u32, u32) -> u64, s: u32, t: u32) -> u64 {
        let mut total: u128 = 0;
        for a in 0..=s {
            for b in 0..=t {
                let free = monomial_count(a, self.free_x) * monomial_count(b, self.free_y);
                if free != 0 {
                    total += free * u128::from(core(s - a, t - b));
                }
            }
        }
        u64::try_from(total).expect("count fits in 64 bits at desk scale")
    }

    /// The monomial count grows in both degrees, so the corner cell decides
    /// whether a whole box is within the guard.
    fn guard_box(&self, s: u32, t: u32) -> Result<()> {
        let count = monomial_count(s, self.core_x.len()) * monomial_count(t, self.core_y.len());
        guard(count, &format!("bidegree ({s}, {t})"))
    }

    pub fn hf(&self, s: u32, t: u32) -> Result<u64> {
        self.guard_box(s, t)?;
        let mut table = HashMap::new();
        for a in 0..=s {
            for b in 0..=t {
                table.insert((a, b), self.core_hf(a, b)?);
            }
        }
        Ok(self.combine(&|a, b| table[&(a, b)], s, t))
    }

    /// Values on `[0, size]^2`; core cells are computed in parallel.
    pub fn grid(&self, size: u32) -> Result<CountGrid> {
        self.guard_box(size, size)?;
        let cells: Vec<(u32, u32)> = (0..=size).flat_map(|s| (0..=size).map(move |t| (s, t))).collect();
        let core: HashMap<(u32, u32), u64> = cells
            .par_iter()
            .map(|&(s, t)| self.core_hf(s, t).map(|v| ((s, t), v)))
            .collect::<Result<_>>()?;
        Ok(cells
            .iter()
            .map(|&(s, t)| ((s, t), self.combine(&|a, b| core[&(a, b)], s, t)))
            .collect())
    }
}

/// Hilbert function at `(s, t)` of the quotient of the bigraded polynomial
/// ring on the given coordinates by the ideal the generators span.
pub fn hf_linear_algebra(
    gens: &IdealGenerators,
    x_coords: &[usize],
    y_coords: &[usize],
    s: u32,
    t: u32,
) -> Result<u64> {
    LinearAlgebraOracle::new(gens, x_coords, y_coords)?.hf(s, t)
}

/// Column label of a monomial's image in one component's coordinate ring.
#[derive(Clone, PartialEq, Eq, Hash)]
struct ImageKey {
    component: usize,
    free_x: Vec<u32>,
    free_y: Vec<u32>,
    overlap: Vec<u32>,
}

/// Hilbert function at `(s, t)` of the reduced union described by `spec`.
pub fn hf_union(spec: &UnionSpec, s: u32, t: u32) -> Result<u64> {
    let r = spec.r();
    let count = monomial_count(s, r + 1) * monomial_count(t, r + 1);
    guard(count, &format!("bidegree ({s}, {t}) on P^{r} x P^{r}"))?;
    let comps = component_schemes(spec);
    let xs = monomials(r + 1, s);
    let ys = monomials(r + 1, t);

    let mut columns: HashMap<ImageKey, usize> = HashMap::new();
    let mut echelon = SparseEchelon::new();
    for a in &xs {
        for b in &ys {
            let mut row = SparseRow::new();
            for c in &comps {
                let (lo, hi) = c.scheme.overlap().expect("union components have m >= 0");
                // x_j vanishes for j < p, y_j for j > p + m.
                if a[..lo].iter().any(|&e| e != 0) || b[hi + 1..].iter().any(|&e| e != 0) {
                    continue;
                }
                let key = ImageKey {
                    component: c.index,
                    free_x: a[hi + 1..].to_vec(),
                    free_y: b[..lo].to_vec(),
                    overlap: (lo..=hi).map(|j| a[j] + b[j]).collect(),
                };
                let next = columns.len();
                let col = *columns.entry(key).or_insert(next);
                row.insert(col, rat(1));
            }
            echelon.insert(row);
        }
    }
    Ok(echelon.rank() as u64)
}

/// [`hf_union`] on `[0, size]^2`, cells in parallel.
pub fn grid_union(spec: &UnionSpec, size: u32) -> Result<CountGrid> {
    let r = spec.r();
    guard(
        monomial_count(size, r + 1) * monomial_count(size, r + 1),
        &format!("bidegree ({size}, {size}) on P^{r} x P^{r}"),
    )?;
    let cells: Vec<(u32, u32)> = (0..=size).flat_map(|s| (0..=size).map(move |t| (s, t))).collect();
    cells.par_iter().map(|&(s, t)| hf_union(spec, s, t).map(|v| ((s, t), v))).collect()
}

/// [`hf_minor_combinatorial`] on `[0, size]^2`.
pub fn grid_minor_combinatorial(p: usize, q: usize, m: usize, size: u32) -> CountGrid {
    (0..=size)
        .flat_map(|s| (0..=size).map(move |t| ((s, t), hf_minor_combinatorial(p, q, m, s, t))))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// One disagreement: `[s, t, oracle value, closed-form value]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch(pub u32, pub u32, pub String, pub String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertReport {
    pub scheme: String,
    pub grid: u32,
    pub verdict: Verdict,
    pub mismatches: Vec<Mismatch>,
}

impl CertReport {
    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }
}

/// Pointwise comparison of a closed form with oracle values on
/// `[0, grid]^2`. Agreement only certifies equality of polynomials when the
/// grid reaches the total degree; [`certify`] enforces that.
pub fn compare(label: &str, closed_form: &BivarPoly, oracle: &CountGrid, grid: u32) -> Result<CertReport> {
    let mut mismatches = Vec::new();
    for s in 0..=grid {
        for t in 0..=grid {
            let expected = oracle
                .get(&(s, t))
                .ok_or_else(|| Error::Input(format!("oracle grid is missing ({s}, {t})")))?;
            let got = closed_form.eval_int(s.into(), t.into());
            if got != Rat::from_integer((*expected).into()) {
                mismatches.push(Mismatch(s, t, expected.to_string(), format_rat(&got)));
            }
        }
    }
    Ok(CertReport {
        scheme: label.to_string(),
        grid,
        verdict: if mismatches.is_empty() { Verdict::Pass } else { Verdict::Fail },
        mismatches,
    })
}

/// Compares a closed form with oracle values at every point of
/// `[0, grid]^2`. The grid must reach at least the total degree of the
/// closed form.
pub fn certify(label: &str, closed_form: &BivarPoly, oracle: &CountGrid, grid: u32) -> Result<CertReport> {
    let degree = closed_form.total_degree().unwrap_or(0);
    if grid < degree {
        return Err(Error::Input(format!(
            "grid size {grid} is below the total degree {degree} of the closed form"
        )));
    }
    compare(label, closed_form, oracle, grid)
}
