//! Components of Abel-map fibers from vanishing sequences, and existence of
//! Eisenbud-Harris limit series.
//!
//! For a line bundle of degree `d` on Y and `0` on Z with vanishing
//! sequences `a^Y` and `a^Z` at the node, the fiber is the union over
//! `0 <= l <= d` of products `P(Gamma^l_Y) x P(Gamma^{d-l}_Z)`. The first
//! factor has dimension `#{a^Y >= d - l} - 1` and the second
//! `#{a^Z >= l} - 1`; a piece is absent when either count is zero.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Verdict;

/// Strictly increasing vanishing orders in `[0, d]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VanishingSequence {
    d: usize,
    values: Vec<usize>,
}

impl VanishingSequence {
    pub fn new(d: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("vanishing sequence is empty".into()));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input(format!("vanishing sequence {values:?} is not strictly increasing")));
        }
        if let Some(&a) = values.iter().find(|&&a| a > d) {
            return Err(Error::Input(format!("vanishing order {a} exceeds d = {d}")));
        }
        Ok(VanishingSequence { d, values })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Index of the last entry (`p` for `a_0..a_p`).
    pub fn top(&self) -> usize {
        self.values.len() - 1
    }

    fn count_at_least(&self, threshold: usize) -> usize {
        self.values.iter().filter(|&&a| a >= threshold).count()
    }
}

fn shared_d(ay: &VanishingSequence, az: &VanishingSequence) -> Result<usize> {
    if ay.d != az.d {
        return Err(Error::Input(format!("sequences have d = {} and d = {}", ay.d, az.d)));
    }
    Ok(ay.d)
}

/// Dimensions of the piece at `ell`, or `None` when it is absent.
pub fn piece_dims(ay: &VanishingSequence, az: &VanishingSequence, ell: usize) -> Result<Option<(usize, usize)>> {
    let d = shared_d(ay, az)?;
    if ell > d {
        return Err(Error::Input(format!("ell = {ell} exceeds d = {d}")));
    }
    let (ny, nz) = (ay.count_at_least(d - ell), az.count_at_least(ell));
    Ok((ny > 0 && nz > 0).then(|| (ny - 1, nz - 1)))
}

/// Indices `(i, j)` and the range `ell' <= ell <= ell''` certifying a
/// component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    #[serde(rename = "ellLow")]
    pub ell_low: usize,
    #[serde(rename = "ellHigh")]
    pub ell_high: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberComponent {
    pub ell: usize,
    #[serde(rename = "dimY")]
    pub dim_y: usize,
    #[serde(rename = "dimZ")]
    pub dim_z: usize,
    pub dim: usize,
    pub witness: Option<Witness>,
}

fn pieces(ay: &VanishingSequence, az: &VanishingSequence) -> Result<Vec<(usize, (usize, usize))>> {
    let d = shared_d(ay, az)?;
    let mut out = Vec::new();
    for ell in 0..=d {
        if let Some(dims) = piece_dims(ay, az, ell)? {
            out.push((ell, dims));
        }
    }
    Ok(out)
}

/// Keeps the smallest `ell` for each distinct pair of dimensions.
fn dedupe(found: Vec<(usize, (usize, usize))>) -> Vec<(usize, (usize, usize))> {
    let mut seen = BTreeSet::new();
    found.into_iter().filter(|(_, dims)| seen.insert(*dims)).collect()
}

/// Components as the maximal pieces under componentwise order of
/// `(dim_Y, dim_Z)`.
pub fn components_by_maximality(ay: &VanishingSequence, az: &VanishingSequence) -> Result<Vec<FiberComponent>> {
    let all = pieces(ay, az)?;
    let maximal: Vec<_> = all
        .iter()
        .filter(|(_, (y, z))| !all.iter().any(|(_, (y2, z2))| y2 >= y && z2 >= z && (y2, z2) != (y, z)))
        .copied()
        .collect();
    Ok(dedupe(maximal)
        .into_iter()
        .map(|(ell, (dim_y, dim_z))| FiberComponent { ell, dim_y, dim_z, dim: dim_y + dim_z, witness: None })
        .collect())
}

/// Searches for `(i, j, ell', ell'')` with `a^Y_i = d - ell'`,
/// `a^Z_j = ell''`, `ell' <= ell <= ell''`, `a^Y_{i-1} < d - ell''` and
/// `a^Z_{j-1} < ell'`, where a condition on index `-1` holds vacuously.
pub fn witness_at(ay: &VanishingSequence, az: &VanishingSequence, ell: usize) -> Result<Option<Witness>> {
    let d = shared_d(ay, az)?;
    for (i, &ai) in ay.values.iter().enumerate() {
        let ell_low = d - ai;
        if ell_low > ell {
            continue;
        }
        for (j, &aj) in az.values.iter().enumerate() {
            let ell_high = aj;
            if ell_high < ell {
                continue;
            }
            let y_ok = i == 0 || ay.values[i - 1] + ell_high < d;
            let z_ok = j == 0 || az.values[j - 1] < ell_low;
            if y_ok && z_ok {
                return Ok(Some(Witness { i, j, ell_low, ell_high }));
            }
        }
    }
    Ok(None)
}

/// Components as the pieces admitting a witness.
pub fn components_by_witness(ay: &VanishingSequence, az: &VanishingSequence) -> Result<Vec<FiberComponent>> {
    let (p, q) = (ay.top(), az.top());
    let mut found = Vec::new();
    let mut witnesses = Vec::new();
    for (ell, dims) in pieces(ay, az)? {
        if let Some(w) = witness_at(ay, az, ell)? {
            if p + q - w.i - w.j != dims.0 + dims.1 {
                return Err(Error::Invariant(format!(
                    "witness at ell = {ell} gives dimension {} but the piece has {}",
                    p + q - w.i - w.j,
                    dims.0 + dims.1
                )));
            }
            found.push((ell, dims));
            witnesses.push((ell, w));
        }
    }
    Ok(dedupe(found)
        .into_iter()
        .map(|(ell, (dim_y, dim_z))| FiberComponent {
            ell,
            dim_y,
            dim_z,
            dim: dim_y + dim_z,
            witness: witnesses.iter().find(|(e, _)| *e == ell).map(|(_, w)| *w),
        })
        .collect())
}

/// Components computed both ways; disagreement is an invariant error.
pub fn components(ay: &VanishingSequence, az: &VanishingSequence) -> Result<Vec<FiberComponent>> {
    let by_max = components_by_maximality(ay, az)?;
    let by_witness = components_by_witness(ay, az)?;
    let key = |cs: &[FiberComponent]| cs.iter().map(|c| (c.ell, c.dim_y, c.dim_z)).collect::<Vec<_>>();
    if key(&by_max) != key(&by_witness) {
        return Err(Error::Invariant(format!(
            "maximal pieces {:?} differ from witnessed pieces {:?}",
            key(&by_max),
            key(&by_witness)
        )));
    }
    Ok(by_witness)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhResult {
    pub exists: bool,
    /// Index subsequences `(i_0..i_r, j_0..j_r)` when `exists`.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

fn satisfies(ay: &VanishingSequence, az: &VanishingSequence, is: &[usize], js: &[usize]) -> bool {
    let r = is.len() - 1;
    (0..=r).all(|s| ay.values[is[s]] + az.values[js[r - s]] >= ay.d)
}

/// Exhaustive search over index subsequences, pruned as soon as a pairing
/// fails or too few indices remain.
pub fn eh_exists_brute(ay: &VanishingSequence, az: &VanishingSequence, r: usize) -> Result<EhResult> {
    let d = shared_d(ay, az)?;
    let (p, q) = (ay.top(), az.top());
    if r > p || r > q {
        return Ok(EhResult { exists: false, witness: None });
    }
    // Step s picks i_s (increasing) and j_{r-s} (decreasing).
    fn dfs(
        s: usize,
        r: usize,
        d: usize,
        ay: &[usize],
        az: &[usize],
        is: &mut Vec<usize>,
        js_rev: &mut Vec<usize>,
    ) -> bool {
        if s > r {
            return true;
        }
        let i_min = is.last().map_or(0, |&i| i + 1);
        let i_max = ay.len() - 1 - (r - s);
        let j_max = js_rev.last().map_or(az.len() - 1, |&j| j.wrapping_sub(1));
        let j_min = r - s;
        if i_min > i_max || js_rev.last() == Some(&0) || j_min > j_max {
            return false;
        }
        for i in i_min..=i_max {
            for j in (j_min..=j_max).rev() {
                if ay[i] + az[j] < d {
                    continue;
                }
                is.push(i);
                js_rev.push(j);
                if dfs(s + 1, r, d, ay, az, is, js_rev) {
                    return true;
                }
                is.pop();
                js_rev.pop();
            }
        }
        false
    }
    let (mut is, mut js_rev) = (Vec::new(), Vec::new());
    if dfs(0, r, d, &ay.values, &az.values, &mut is, &mut js_rev) {
        js_rev.reverse();
        debug_assert!(satisfies(ay, az, &is, &js_rev));
        Ok(EhResult { exists: true, witness: Some((is, js_rev)) })
    } else {
        Ok(EhResult { exists: false, witness: None })
    }
}

/// Pairs the top `r+1` entries of each sequence. Any valid choice of
/// subsequences is dominated entrywise by this one.
pub fn eh_exists_greedy(ay: &VanishingSequence, az: &VanishingSequence, r: usize) -> Result<EhResult> {
    shared_d(ay, az)?;
    let (p, q) = (ay.top(), az.top());
    if r > p || r > q {
        return Ok(EhResult { exists: false, witness: None });
    }
    let is: Vec<usize> = (p - r..=p).collect();
    let js: Vec<usize> = (q - r..=q).collect();
    if satisfies(ay, az, &is, &js) {
        Ok(EhResult { exists: true, witness: Some((is, js)) })
    } else {
        Ok(EhResult { exists: false, witness: None })
    }
}

/// Existence of an Eisenbud-Harris limit series of dimension `r`. Both
/// searches run; the greedy witness is reported.
pub fn eh_exists(ay: &VanishingSequence, az: &VanishingSequence, r: usize) -> Result<EhResult> {
    let brute = eh_exists_brute(ay, az, r)?;
    let greedy = eh_exists_greedy(ay, az, r)?;
    if brute.exists != greedy.exists {
        return Err(Error::Invariant(format!(
            "exhaustive search says {} but greedy says {}",
            brute.exists, greedy.exists
        )));
    }
    Ok(greedy)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoGrdsReport {
    pub r: usize,
    /// Smallest component dimension; `None` when the fiber is empty.
    #[serde(rename = "minDim")]
    pub min_dim: Option<usize>,
    #[serde(rename = "ehExists")]
    pub eh_exists: bool,
    /// `min_dim < r`.
    pub premise: bool,
    /// The premise implies `eh_exists = false`.
    pub consistent: bool,
    /// A nonempty fiber with no small component, yet no limit series.
    #[serde(rename = "converseFailure")]
    pub converse_failure: bool,
}

pub fn no_grds_check(ay: &VanishingSequence, az: &VanishingSequence, r: usize) -> Result<NoGrdsReport> {
    let comps = components(ay, az)?;
    let min_dim = comps.iter().map(|c| c.dim).min();
    let eh = eh_exists(ay, az, r)?.exists;
    let premise = min_dim.is_some_and(|m| m < r);
    Ok(NoGrdsReport {
        r,
        min_dim,
        eh_exists: eh,
        premise,
        consistent: !premise || !eh,
        converse_failure: min_dim.is_some() && !premise && !eh,
    })
}

/// A random strictly increasing sequence in `[0, d]`.
pub fn random_sequence(rng: &mut impl Rng, d: usize) -> VanishingSequence {
    loop {
        let values: Vec<usize> = (0..=d).filter(|_| rng.gen_bool(0.5)).collect();
        if !values.is_empty() {
            return VanishingSequence { d, values };
        }
    }
}

/// `n` seeded random pairs with `d <= d_max`.
pub fn random_corpus(seed: u64, n: usize, d_max: usize) -> Vec<(VanishingSequence, VanishingSequence)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let d = rng.gen_range(0..=d_max);
            (random_sequence(&mut rng, d), random_sequence(&mut rng, d))
        })
        .collect()
}

/// The elliptic specimen: `d = 2`, `a^Y = (0, 2)`, `a^Z = (0, 1)`, which has
/// one component of dimension 1 but no limit series of dimension 1.
pub fn reference_specimen() -> (VanishingSequence, VanishingSequence) {
    (
        VanishingSequence { d: 2, values: vec![0, 2] },
        VanishingSequence { d: 2, values: vec![0, 1] },
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Specimen {
    pub d: usize,
    #[serde(rename = "aY")]
    pub a_y: Vec<usize>,
    #[serde(rename = "aZ")]
    pub a_z: Vec<usize>,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub seed: u64,
    pub trials: usize,
    #[serde(rename = "dMax")]
    pub d_max: usize,
    #[serde(rename = "rMax")]
    pub r_max: usize,
    pub checks: usize,
    #[serde(rename = "premiseCases")]
    pub premise_cases: usize,
    pub violations: Vec<Specimen>,
    #[serde(rename = "converseFailures")]
    pub converse_failures: usize,
    #[serde(rename = "componentDisagreements")]
    pub component_disagreements: Vec<Specimen>,
    #[serde(rename = "ehDisagreements")]
    pub eh_disagreements: Vec<Specimen>,
    #[serde(rename = "referenceSpecimen")]
    pub reference_specimen: Specimen,
    #[serde(rename = "referenceIsConverseFailure")]
    pub reference_is_converse_failure: bool,
    pub verdict: Verdict,
}

fn specimen(ay: &VanishingSequence, az: &VanishingSequence, r: usize) -> Specimen {
    Specimen { d: ay.d, a_y: ay.values.clone(), a_z: az.values.clone(), r }
}

/// Runs the no-small-component criterion and both cross-method checks over
/// `trials` random pairs, each at `r = 1..=r_max`, plus the reference
/// specimen at `r = 1`.
pub fn no_grds_scan(seed: u64, trials: usize, d_max: usize, r_max: usize) -> ScanSummary {
    let mut corpus = random_corpus(seed, trials, d_max);
    corpus.push(reference_specimen());
    let mut checks = 0;
    let mut premise_cases = 0;
    let mut converse_failures = 0;
    let mut violations = Vec::new();
    let mut component_disagreements = Vec::new();
    let mut eh_disagreements = Vec::new();

    for (ay, az) in &corpus {
        let by_max = components_by_maximality(ay, az).expect("shared d");
        let by_witness = components_by_witness(ay, az);
        let dims = |cs: &[FiberComponent]| cs.iter().map(|c| (c.ell, c.dim_y, c.dim_z)).collect::<Vec<_>>();
        if by_witness.as_ref().map_or(true, |w| dims(w) != dims(&by_max)) {
            component_disagreements.push(specimen(ay, az, 0));
        }
        let min_dim = by_max.iter().map(|c| c.dim).min();
        for r in 1..=r_max {
            checks += 1;
            let brute = eh_exists_brute(ay, az, r).expect("shared d").exists;
            let greedy = eh_exists_greedy(ay, az, r).expect("shared d").exists;
            if brute != greedy {
                eh_disagreements.push(specimen(ay, az, r));
            }
            if min_dim.is_some_and(|m| m < r) {
                premise_cases += 1;
                if brute || greedy {
                    violations.push(specimen(ay, az, r));
                }
            } else if min_dim.is_some() && !brute {
                converse_failures += 1;
            }
        }
    }

    let (ry, rz) = reference_specimen();
    let reference_is_converse_failure =
        no_grds_check(&ry, &rz, 1).map(|rep| rep.converse_failure).unwrap_or(false);
    let clean = violations.is_empty() && component_disagreements.is_empty() && eh_disagreements.is_empty();
    ScanSummary {
        seed,
        trials,
        d_max,
        r_max,
        checks,
        premise_cases,
        violations,
        converse_failures,
        component_disagreements,
        eh_disagreements,
        reference_specimen: specimen(&ry, &rz, 1),
        reference_is_converse_failure,
        verdict: if clean { Verdict::Pass } else { Verdict::Fail },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(d: usize, v: &[usize]) -> VanishingSequence {
        VanishingSequence::new(d, v.to_vec()).unwrap()
    }

    #[test]
    fn sequence_validation() {
        assert!(VanishingSequence::new(2, vec![]).is_err());
        assert!(VanishingSequence::new(2, vec![1, 1]).is_err());
        assert!(VanishingSequence::new(2, vec![0, 3]).is_err());
    }

    #[test]
    fn piece_dims_examples() {
        let (ay, az) = (seq(3, &[0, 1, 3]), seq(3, &[0, 1, 2]));
        assert_eq!(piece_dims(&ay, &az, 0).unwrap(), Some((0, 2)));
        assert_eq!(piece_dims(&ay, &az, 2).unwrap(), Some((1, 0)));
        let (ay, az) = reference_specimen();
        assert_eq!(piece_dims(&ay, &az, 1).unwrap(), Some((0, 0)));
    }

    #[test]
    fn piece_dims_rejects_mismatched_degree() {
        assert!(matches!(piece_dims(&seq(2, &[0]), &seq(3, &[0]), 0), Err(Error::Input(_))));
    }

    #[test]
    fn absent_piece() {
        // Nothing in a^Y reaches 2, so l = 0 has no Y factor.
        assert_eq!(piece_dims(&seq(2, &[0, 1]), &seq(2, &[0]), 0).unwrap(), None);
    }

    #[test]
    fn two_components_of_dimensions_two_and_one() {
        let comps = components(&seq(3, &[0, 1, 3]), &seq(3, &[0, 1, 2])).unwrap();
        assert_eq!(comps.iter().map(|c| c.ell).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(comps.iter().map(|c| c.dim).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn reference_specimen_has_one_line() {
        let (ay, az) = reference_specimen();
        let comps = components(&ay, &az).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].dim, 1);
        assert_eq!((comps[0].dim_y, comps[0].dim_z), (0, 1));
    }

    #[test]
    fn point_fiber() {
        let comps = components(&seq(0, &[0]), &seq(0, &[0])).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!((comps[0].ell, comps[0].dim), (0, 0));
    }

    #[test]
    fn eh_examples() {
        let (ay, az) = reference_specimen();
        assert!(!eh_exists(&ay, &az, 1).unwrap().exists);

        let res = eh_exists(&seq(2, &[0, 1]), &seq(2, &[1, 2]), 1).unwrap();
        assert!(res.exists);
        assert_eq!(res.witness, Some((vec![0, 1], vec![0, 1])));

        assert!(eh_exists(&seq(0, &[0]), &seq(0, &[0]), 0).unwrap().exists);
        assert!(!eh_exists(&seq(3, &[0, 3]), &seq(3, &[0, 3]), 2).unwrap().exists);
    }

    #[test]
    fn no_grds_examples() {
        let (ay, az) = reference_specimen();
        let rep = no_grds_check(&ay, &az, 1).unwrap();
        assert_eq!((rep.min_dim, rep.eh_exists, rep.consistent, rep.converse_failure), (Some(1), false, true, true));

        let rep = no_grds_check(&seq(3, &[0, 1, 3]), &seq(3, &[0, 1, 2]), 2).unwrap();
        assert_eq!(rep.min_dim, Some(1));
        assert!(rep.premise && !rep.eh_exists && rep.consistent);

        let full: Vec<usize> = (0..=4).collect();
        let rep = no_grds_check(&seq(4, &full), &seq(4, &full), 4).unwrap();
        assert!(rep.eh_exists && rep.min_dim >= Some(4) && rep.consistent);
    }

    #[test]
    fn empty_fiber() {
        let (ay, az) = (seq(2, &[0]), seq(2, &[0]));
        assert!(components(&ay, &az).unwrap().is_empty());
        let rep = no_grds_check(&ay, &az, 1).unwrap();
        assert_eq!(rep.min_dim, None);
        assert!(!rep.premise && rep.consistent && !rep.converse_failure);
    }

    #[test]
    fn small_scan_is_clean() {
        let summary = no_grds_scan(1, 50, 6, 3);
        assert_eq!(summary.verdict, Verdict::Pass);
        assert!(summary.reference_is_converse_failure);
        assert_eq!(summary.checks, 51 * 3);
    }

    #[test]
    fn trivial_scan() {
        let summary = no_grds_scan(0, 1, 0, 0);
        assert!(summary.violations.is_empty());
    }
}
