//! One function per verb: typed input in, report out.

use llab_core::abelfiber::{self, VanishingSequence};
use llab_core::degeneration::{self, BiPoint, DegenerationFamily};
use llab_core::exactmath::{parse_rat, BivarPoly, Rat};
use llab_core::limitseries::{ExplicitLimitSeries, SeriesDoc, FORMAT_TAG};
use llab_core::oracle::{self, CountGrid, LinearAlgebraOracle};
use llab_core::schemes::{self, component_schemes, make_union_spec, MinorScheme, UnionSpec};
use llab_core::{Error, Verdict};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub const STATUS_FAIL: u8 = 1;
pub const STATUS_INPUT: u8 = 2;
pub const STATUS_RESOURCE: u8 = 3;

pub struct Failure {
    pub status: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Resource(_) => STATUS_RESOURCE,
            // A cross-check inside the library disagreed with itself.
            Error::Invariant(_) => STATUS_FAIL,
            _ => STATUS_INPUT,
        };
        Failure { status, message: e.to_string() }
    }
}

pub struct Outcome {
    pub report: Value,
    pub status: u8,
}

fn outcome(command: &str, input: &impl Serialize, body: impl Serialize, verdict: Option<Verdict>) -> Outcome {
    let mut report = Map::new();
    report.insert("format".into(), FORMAT_TAG.into());
    report.insert("command".into(), command.into());
    report.insert("input".into(), serde_json::to_value(input).expect("inputs serialize"));
    match serde_json::to_value(body).expect("results serialize") {
        Value::Object(fields) => report.extend(fields),
        other => {
            report.insert("result".into(), other);
        }
    }
    let status = match verdict {
        Some(Verdict::Fail) => STATUS_FAIL,
        _ => 0,
    };
    Outcome { report: Value::Object(report), status }
}

fn terms(poly: &BivarPoly) -> Value {
    json!(poly.to_triples())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinorInput {
    p: usize,
    q: usize,
    m: i64,
}

pub fn hilbert_minor(input: MinorInput) -> Result<Outcome, Failure> {
    let sch = MinorScheme::new(input.p, input.q, input.m)?;
    let poly = if sch.m < 0 { schemes::hilbert_product(&sch) } else { schemes::hilbert_minor(&sch)? };
    let body = json!({
        "ambientDims": sch.ambient_dims(),
        "dimension": sch.dimension(),
        "degree": poly.total_degree(),
        "terms": terms(&poly),
    });
    Ok(outcome("hilbert-minor", &input, body, None))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnionInput {
    r: usize,
    mults: Vec<usize>,
}

impl UnionInput {
    fn spec(&self) -> Result<UnionSpec, Failure> {
        Ok(make_union_spec(self.r, &self.mults)?)
    }
}

fn components_json(spec: &UnionSpec) -> Value {
    let comps: Vec<Value> = component_schemes(spec)
        .iter()
        .map(|c| {
            json!({
                "index": c.index,
                "p": c.scheme.p,
                "q": c.scheme.q,
                "m": c.scheme.m,
                "ambientDims": c.scheme.ambient_dims(),
                "terms": terms(&c.scheme.hilbert()),
            })
        })
        .collect();
    Value::Array(comps)
}

fn union_body(spec: &UnionSpec) -> Value {
    json!({
        "p": spec.p_seq(),
        "q": spec.q_seq(),
        "full": spec.is_full(),
        "components": components_json(spec),
        "terms": terms(&schemes::hilbert_union(spec)),
    })
}

pub fn hilbert_union(input: UnionInput) -> Result<Outcome, Failure> {
    let spec = input.spec()?;
    Ok(outcome("hilbert-union", &input, union_body(&spec), None))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    Combinatorial,
    LinearAlgebra,
    Union,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifyInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mults: Option<Vec<usize>>,
    #[serde(default = "default_grid")]
    grid: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleKind>,
}

fn default_grid() -> u32 {
    5
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { status: STATUS_INPUT, message: message.into() }
}

pub fn certify(mut input: CertifyInput) -> Result<Outcome, Failure> {
    let grid = input.grid;
    let (label, closed, values, kind): (String, BivarPoly, CountGrid, OracleKind) =
        match (input.p, input.q, input.m, input.r, &input.mults) {
            (Some(p), Some(q), Some(m), None, None) => {
                let sch = MinorScheme::new(p, q, m)?;
                let label = format!("Q_{{{p},{q},{m}}}");
                let kind = input.oracle.unwrap_or(OracleKind::Combinatorial);
                let closed = if m < 0 { schemes::hilbert_product(&sch) } else { schemes::hilbert_minor(&sch)? };
                let values = match kind {
                    OracleKind::Combinatorial => {
                        let m = usize::try_from(m)
                            .map_err(|_| input_error("the combinatorial oracle needs m >= 0; use linear-algebra"))?;
                        oracle::grid_minor_combinatorial(p, q, m, grid)
                    }
                    OracleKind::LinearAlgebra => {
                        let xs: Vec<usize> = sch.x_coords().collect();
                        let ys: Vec<usize> = sch.y_coords().collect();
                        LinearAlgebraOracle::new(&sch.generators(), &xs, &ys)?.grid(grid)?
                    }
                    OracleKind::Union => return Err(input_error("the union oracle needs r and mults")),
                };
                (label, closed, values, kind)
            }
            (None, None, None, Some(r), Some(mults)) => {
                if matches!(input.oracle, Some(k) if k != OracleKind::Union) {
                    return Err(input_error("a union spec is certified against the union oracle only"));
                }
                let spec = make_union_spec(r, mults)?;
                (spec.to_string(), schemes::hilbert_union(&spec), oracle::grid_union(&spec, grid)?, OracleKind::Union)
            }
            _ => return Err(input_error("give either p, q, m (a single scheme) or r, mults (a union)")),
        };
    input.oracle = Some(kind);
    let report = oracle::certify(&label, &closed, &values, grid)?;
    let verdict = report.verdict;
    let mut body = serde_json::to_value(&report).expect("reports serialize");
    body["terms"] = terms(&closed);
    Ok(outcome("certify", &input, body, Some(verdict)))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceInput {
    d: usize,
    #[serde(rename = "aY")]
    a_y: Vec<usize>,
    #[serde(rename = "aZ")]
    a_z: Vec<usize>,
}

impl SequenceInput {
    fn sequences(&self) -> Result<(VanishingSequence, VanishingSequence), Failure> {
        let ay = VanishingSequence::new(self.d, self.a_y.clone()).map_err(|e| input_error(format!("aY: {e}")))?;
        let az = VanishingSequence::new(self.d, self.a_z.clone()).map_err(|e| input_error(format!("aZ: {e}")))?;
        Ok((ay, az))
    }
}

pub fn fiber(input: SequenceInput) -> Result<Outcome, Failure> {
    let (ay, az) = input.sequences()?;
    let comps = abelfiber::components(&ay, &az)?;
    let body = json!({ "count": comps.len(), "components": comps });
    Ok(outcome("fiber", &input, body, None))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EhInput {
    d: usize,
    #[serde(rename = "aY")]
    a_y: Vec<usize>,
    #[serde(rename = "aZ")]
    a_z: Vec<usize>,
    r: usize,
}

pub fn eh(input: EhInput) -> Result<Outcome, Failure> {
    let seq = SequenceInput { d: input.d, a_y: input.a_y.clone(), a_z: input.a_z.clone() };
    let (ay, az) = seq.sequences()?;
    let result = abelfiber::eh_exists(&ay, &az, input.r)?;
    Ok(outcome("eh", &input, result, None))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanInput {
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_trials")]
    trials: usize,
    #[serde(rename = "dMax", default = "default_d_max")]
    d_max: usize,
    #[serde(rename = "rMax", default = "default_r_max")]
    r_max: usize,
}

fn default_trials() -> usize {
    1000
}

fn default_d_max() -> usize {
    10
}

fn default_r_max() -> usize {
    4
}

pub fn no_grds_scan(input: ScanInput) -> Result<Outcome, Failure> {
    if input.trials == 0 {
        return Err(input_error("trials must be positive"));
    }
    let summary = abelfiber::no_grds_scan(input.seed, input.trials, input.d_max, input.r_max);
    let verdict = summary.verdict;
    Ok(outcome("no-grds-scan", &input, summary, Some(verdict)))
}

pub fn series_validate((doc, series): (SeriesDoc, ExplicitLimitSeries)) -> Result<Outcome, Failure> {
    let report = series.validate();
    let verdict = report.verdict;
    let mut body = serde_json::to_value(&report).expect("reports serialize");
    // Exactness is only meaningful for a series that satisfies the axioms.
    body["exact"] = if report.passed() { json!(series.is_exact()?) } else { Value::Null };
    Ok(outcome("series-validate", &doc, body, Some(verdict)))
}

pub fn series_diagonalize((doc, series): (SeriesDoc, ExplicitLimitSeries)) -> Result<Outcome, Failure> {
    let diag = series.diagonalize()?;
    let mut body = serde_json::to_value(&diag).expect("reports serialize");
    body["emptyRange"] = json!(series.empty_range()?);
    Ok(outcome("series-diagonalize", &doc, body, None))
}

pub fn series_pg((doc, series): (SeriesDoc, ExplicitLimitSeries)) -> Result<Outcome, Failure> {
    let spec = series.pg_union()?;
    let mut body = union_body(&spec);
    body["spec"] = json!(spec);
    Ok(outcome("series-pg", &doc, body, None))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegenerateInput {
    r: usize,
    mults: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    z: Option<String>,
}

pub fn degenerate(input: DegenerateInput) -> Result<Outcome, Failure> {
    let fam = DegenerationFamily::new(&make_union_spec(input.r, &input.mults)?)?;
    let contains = degeneration::special_fiber_contains_union(&fam);
    let verdict = if contains { Verdict::Pass } else { Verdict::Fail };
    let mut body = json!({
        "epsilons": fam.epsilons(),
        "generators": fam.generators(),
        "specialFiber": fam.specialize(&Rat::from_integer(0.into())),
        "specialFiberContainsUnion": contains,
        "verdict": verdict,
    });
    if let Some(z) = &input.z {
        let z0 = parse_rat(z).map_err(|e| input_error(format!("z: {e}")))?;
        body["specialized"] = json!(fam.specialize(&z0));
    }
    Ok(outcome("degenerate", &input, body, Some(verdict)))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointInput {
    a: Vec<String>,
    b: Vec<String>,
    component: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleInput {
    r: usize,
    mults: Vec<usize>,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_count")]
    count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<PointInput>>,
}

fn default_count() -> usize {
    200
}

fn parse_coords(xs: &[String], at: &str) -> Result<Vec<Rat>, Failure> {
    xs.iter()
        .enumerate()
        .map(|(k, x)| parse_rat(x).map_err(|e| input_error(format!("{at}[{k}]: {e}"))))
        .collect()
}

pub fn sample(input: SampleInput) -> Result<Outcome, Failure> {
    let fam = DegenerationFamily::new(&make_union_spec(input.r, &input.mults)?)?;
    let report = match &input.points {
        None => degeneration::sample_containment(&fam, input.seed, input.count),
        Some(points) => {
            let parsed = points
                .iter()
                .enumerate()
                .map(|(k, pt)| {
                    let a = parse_coords(&pt.a, &format!("points[{k}].a"))?;
                    let b = parse_coords(&pt.b, &format!("points[{k}].b"))?;
                    let point = BiPoint::new(a, b).map_err(|e| input_error(format!("points[{k}]: {e}")))?;
                    Ok((point, pt.component))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            degeneration::check_points(&fam, &parsed)
        }
    };
    let verdict = report.verdict;
    Ok(outcome("sample", &input, report, Some(verdict)))
}
