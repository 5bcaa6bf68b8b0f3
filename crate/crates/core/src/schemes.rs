//! Determinantal schemes `Q_{p,q,m}` in a product of two projective spaces,
//! their unions inside `P^r x P^r`, and closed-form bivariate Hilbert
//! polynomials.
//!
//! Coordinates keep their global indices: `Q_{p,q,m}` lives in
//! `P^{m+q} x P^{m+p}` with x-coordinates `x_p..x_{m+p+q}` and
//! y-coordinates `y_0..y_{m+p}`, cut out by the 2x2 minors
//! `x_i y_j - x_j y_i` for `p <= i < j <= m+p`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{binom_poly, BinomVar, BivarPoly};

/// A single projective coordinate of `P^a x P^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    X(usize),
    Y(usize),
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::X(i) => write!(f, "x{i}"),
            Coord::Y(i) => write!(f, "y{i}"),
        }
    }
}

impl FromStr for Coord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("not a coordinate name: {s:?}"));
        let (tag, idx) = s.split_at_checked(1).ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        match tag {
            "x" => Ok(Coord::X(idx)),
            "y" => Ok(Coord::Y(idx)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Coord {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Generators of a bihomogeneous ideal: coordinates set to zero, plus
/// minors `(i, j)` meaning `x_i y_j - x_j y_i` with `i < j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealGenerators {
    pub linear: Vec<Coord>,
    pub minors: Vec<(usize, usize)>,
}

impl IdealGenerators {
    /// All minors `x_i y_j - x_j y_i` with `lo <= i < j <= hi`.
    pub fn minors_on(lo: usize, hi: usize) -> Vec<(usize, usize)> {
        (lo..=hi).flat_map(|i| (i + 1..=hi).map(move |j| (i, j))).collect()
    }
}

/// Descriptor of `Q_{p,q,m}`. `m = -1` stands for the full product
/// `P^{q-1} x P^{p-1}` (no minors at all).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinorScheme {
    pub p: usize,
    pub q: usize,
    pub m: i64,
}

impl MinorScheme {
    pub fn new(p: usize, q: usize, m: i64) -> Result<Self> {
        if m < -1 {
            return Err(Error::Input(format!("m = {m} is below -1")));
        }
        if m == -1 && (p == 0 || q == 0) {
            return Err(Error::Input(format!(
                "m = -1 needs p, q >= 1 (got p = {p}, q = {q})"
            )));
        }
        Ok(MinorScheme { p, q, m })
    }

    /// Dimensions `(a, b)` of the ambient `P^a x P^b`.
    pub fn ambient_dims(&self) -> (usize, usize) {
        let (p, q, m) = (self.p as i64, self.q as i64, self.m);
        ((m + q) as usize, (m + p) as usize)
    }

    /// Indices of the x-coordinates, `p..=m+p+q`.
    pub fn x_coords(&self) -> std::ops::RangeInclusive<usize> {
        let (a, _) = self.ambient_dims();
        self.p..=self.p + a
    }

    /// Indices of the y-coordinates, `0..=m+p`.
    pub fn y_coords(&self) -> std::ops::RangeInclusive<usize> {
        let (_, b) = self.ambient_dims();
        0..=b
    }

    /// The overlap block `p..=m+p` carrying the rank-one condition, if any.
    pub fn overlap(&self) -> Option<(usize, usize)> {
        (self.m >= 0).then(|| (self.p, self.p + self.m as usize))
    }

    pub fn generators(&self) -> IdealGenerators {
        IdealGenerators {
            linear: Vec::new(),
            minors: self.overlap().map_or_else(Vec::new, |(lo, hi)| IdealGenerators::minors_on(lo, hi)),
        }
    }

    /// Dimension of the scheme: `m+p+q` for `m >= 0`, and `p+q-2` for the
    /// full-product case.
    pub fn dimension(&self) -> usize {
        if self.m >= 0 {
            self.m as usize + self.p + self.q
        } else {
            self.p + self.q - 2
        }
    }

    /// Hilbert polynomial in either case.
    pub fn hilbert(&self) -> BivarPoly {
        if self.m >= 0 {
            hilbert_minor(self).expect("m >= 0")
        } else {
            hilbert_product(self)
        }
    }
}

fn binom_st(s_shift: usize, s_k: usize, t_shift: usize, t_k: usize) -> BivarPoly {
    &binom_poly(BinomVar::S, s_shift as i64, s_k as u32) * &binom_poly(BinomVar::T, t_shift as i64, t_k as u32)
}

/// Closed-form Hilbert polynomial of `Q_{p,q,m}` for `m >= 0`:
///
/// ```text
///   sum_{l=0}^{m}   C(s+q+l, q+l) C(t+p+m-l,   p+m-l)
/// - sum_{l=0}^{m-1} C(s+q+l, q+l) C(t+p+m-1-l, p+m-1-l)
/// ```
pub fn hilbert_minor(sch: &MinorScheme) -> Result<BivarPoly> {
    if sch.m < 0 {
        return Err(Error::WrongCase(
            "m = -1 is the full product; use hilbert_product".into(),
        ));
    }
    let (p, q, m) = (sch.p, sch.q, sch.m as usize);
    let plus: BivarPoly = (0..=m)
        .map(|l| binom_st(q + l, q + l, p + m - l, p + m - l))
        .sum();
    let minus: BivarPoly = (0..m)
        .map(|l| binom_st(q + l, q + l, p + m - 1 - l, p + m - 1 - l))
        .sum();
    Ok(&plus - &minus)
}

/// Hilbert polynomial of the ambient product `P^{m+q} x P^{m+p}`. For
/// `m = -1` this is the scheme itself.
pub fn hilbert_product(sch: &MinorScheme) -> BivarPoly {
    let (a, b) = sch.ambient_dims();
    binom_st(a, a, b, b)
}

/// Wire form of a union spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionSpecDoc {
    pub r: usize,
    pub mults: Vec<usize>,
}

/// `(r; m_0..m_n)` with the offsets `p_i`, `q_i` of the union
/// `Q = Q_0 u ... u Q_n` in `P^r x P^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "UnionSpecDoc", into = "UnionSpecDoc")]
pub struct UnionSpec {
    r: usize,
    mults: Vec<usize>,
    p_seq: Vec<usize>,
    q_seq: Vec<usize>,
}

impl TryFrom<UnionSpecDoc> for UnionSpec {
    type Error = Error;
    fn try_from(doc: UnionSpecDoc) -> Result<Self> {
        make_union_spec(doc.r, &doc.mults)
    }
}

impl From<UnionSpec> for UnionSpecDoc {
    fn from(spec: UnionSpec) -> Self {
        UnionSpecDoc { r: spec.r, mults: spec.mults }
    }
}

pub fn make_union_spec(r: usize, mults: &[usize]) -> Result<UnionSpec> {
    if mults.is_empty() {
        return Err(Error::InvalidSpec("at least one block is required".into()));
    }
    let used: usize = mults.iter().map(|m| m + 1).sum();
    if used > r + 1 {
        return Err(Error::InvalidSpec(format!(
            "sum of (m_i + 1) is {used}, exceeding r + 1 = {}",
            r + 1
        )));
    }
    let mut p_seq = Vec::with_capacity(mults.len());
    let mut p = 0;
    for &m in mults {
        p_seq.push(p);
        p += m + 1;
    }
    // q_i = r - m_i - p_i >= 0 follows from the budget check above.
    let q_seq = mults.iter().zip(&p_seq).map(|(m, p)| r - m - p).collect();
    Ok(UnionSpec { r, mults: mults.to_vec(), p_seq, q_seq })
}

impl UnionSpec {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    pub fn p_seq(&self) -> &[usize] {
        &self.p_seq
    }

    pub fn q_seq(&self) -> &[usize] {
        &self.q_seq
    }

    /// Index `n` of the last block.
    pub fn last(&self) -> usize {
        self.mults.len() - 1
    }

    /// `p_n + m_n = r`: the blocks exhaust `0..=r`.
    pub fn is_full(&self) -> bool {
        let n = self.last();
        self.p_seq[n] + self.mults[n] == self.r
    }

    /// The block containing coordinate index `j`, if any.
    pub fn block_of(&self, j: usize) -> Option<usize> {
        (0..self.mults.len()).find(|&k| self.p_seq[k] <= j && j <= self.p_seq[k] + self.mults[k])
    }

    /// The spec with the last block removed, if there is more than one.
    pub fn prefix(&self) -> Option<UnionSpec> {
        (self.mults.len() > 1).then(|| {
            make_union_spec(self.r, &self.mults[..self.mults.len() - 1]).expect("prefix of a valid spec")
        })
    }
}

impl fmt::Display for UnionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}; {:?})", self.r, self.mults)
    }
}

/// Closed-form Hilbert polynomial of the union, with `P = p_n + m_n`:
///
/// ```text
///   sum_{l=0}^{P}   C(s+r-l,   r-l)   C(t+l, l)
/// - sum_{l=0}^{P-1} C(s+r-1-l, r-1-l) C(t+l, l)
/// ```
pub fn hilbert_union(spec: &UnionSpec) -> BivarPoly {
    let r = spec.r;
    let n = spec.last();
    let top = spec.p_seq[n] + spec.mults[n];
    let plus: BivarPoly = (0..=top).map(|l| binom_st(r - l, r - l, l, l)).sum();
    let minus: BivarPoly = (0..top).map(|l| binom_st(r - 1 - l, r - 1 - l, l, l)).sum();
    &plus - &minus
}

/// Component `Q_i = Q_{p_i,q_i,m_i}` of a union, with the coordinates that
/// vanish on its ambient `P^{m_i+q_i} x P^{m_i+p_i}` inside `P^r x P^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub index: usize,
    pub scheme: MinorScheme,
    pub vanishing: Vec<Coord>,
}

impl Component {
    /// The ideal of the component inside `P^r x P^r`.
    pub fn generators(&self) -> IdealGenerators {
        IdealGenerators { linear: self.vanishing.clone(), minors: self.scheme.generators().minors }
    }
}

pub fn component_schemes(spec: &UnionSpec) -> Vec<Component> {
    let r = spec.r;
    (0..spec.mults.len())
        .map(|i| {
            let (p, q, m) = (spec.p_seq[i], spec.q_seq[i], spec.mults[i]);
            let vanishing = (0..p)
                .map(Coord::X)
                .chain((m + p + 1..=r).map(Coord::Y))
                .collect();
            Component { index: i, scheme: MinorScheme { p, q, m: m as i64 }, vanishing }
        })
        .collect()
}

/// A coordinate linear subspace `P^a x P^b` of `P^r x P^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSlice {
    pub vanishing: Vec<Coord>,
    pub x_dim: usize,
    pub y_dim: usize,
}

impl LinearSlice {
    pub fn hilbert(&self) -> BivarPoly {
        binom_st(self.x_dim, self.x_dim, self.y_dim, self.y_dim)
    }
}

/// Intersection of component `k` with the union of the components before
/// it: `V(x_0..x_{p_k-1}, y_{p_k}..y_r) = P^{r-p_k} x P^{p_k-1}`.
pub fn consecutive_intersection(spec: &UnionSpec, k: usize) -> Result<LinearSlice> {
    if k == 0 {
        return Err(Error::NoPredecessor(0));
    }
    if k > spec.last() {
        return Err(Error::Input(format!("component {k} out of range 0..={}", spec.last())));
    }
    let (r, p) = (spec.r, spec.p_seq[k]);
    Ok(LinearSlice {
        vanishing: (0..p).map(Coord::X).chain((p..=r).map(Coord::Y)).collect(),
        x_dim: r - p,
        y_dim: p - 1,
    })
}

/// All valid union specs for a given `r`; with `full_only`, just those
/// whose blocks exhaust `0..=r`. Ordered by block count, then
/// lexicographically.
pub fn enumerate_specs(r: usize, full_only: bool) -> Vec<UnionSpec> {
    fn compositions(total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if total == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in 1..=total {
            prefix.push(part - 1);
            compositions(total - part, prefix, out);
            prefix.pop();
        }
    }
    let budgets: Vec<usize> = if full_only { vec![r + 1] } else { (1..=r + 1).collect() };
    let mut all = Vec::new();
    for budget in budgets {
        compositions(budget, &mut Vec::new(), &mut all);
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.into_iter()
        .map(|mults| make_union_spec(r, &mults).expect("composition within budget"))
        .collect()
}
