//! The theorem-case catalog: every enumerated classification case replayed
//! at seeded rational parameter samples (or samples in `Q(sqrt 2)` for the
//! one irrational constraint), with exact span comparison and an independent
//! oracle on every sample.

use std::collections::BTreeMap;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::field::{Field, Sqrt2};
use crate::geometry::family_geometry;
use crate::lie::Family;
use crate::scalar::{Rational, Scalar, Var};
use crate::solver::{
    oracle_check, span_normal_form, CollineationBasis, NumericForm, NumericStructure,
};

const SAMPLE_ATTEMPTS: usize = 10_000;
const ORACLE_TRIALS: usize = 20;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed catalog: {0}")]
    Malformed(String),
    #[error("case {case_id}: {reason}")]
    BadCase { case_id: String, reason: String },
    #[error("case {case_id}: constraints unsatisfiable within the sampling budget")]
    Unsatisfiable { case_id: String },
    #[error("case {case_id}, sample {sample}: oracle violation: {detail}")]
    OracleViolation {
        case_id: String,
        sample: usize,
        detail: String,
    },
    #[error("catalog coverage: no case for required id {0}")]
    MissingCase(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rel {
    Eq,
    Neq,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ConstraintSpec {
    pub poly: String,
    pub rel: Rel,
}

/// How one parameter is produced per sample.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParamSpec {
    /// Uniform random rational with numerator in [-9,9], denominator in [1,9].
    Free,
    Fixed { value: String },
    /// Random sign, for G4's v in {1,-1}.
    PmOne,
    /// `num/den` evaluated at the already-sampled parameters.
    Expr { num: String, den: String },
    /// `sqrt(2)` times another parameter; requires the sqrt2 field.
    Sqrt2Times { var: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Rational,
    Sqrt2,
}

impl Default for FieldKind {
    fn default() -> Self {
        FieldKind::Rational
    }
}

/// One coordinate of an expected span vector, as an exact rational function
/// of the parameters.
#[derive(Debug, Clone, Deserialize)]
pub struct CoordSpec {
    pub num: String,
    #[serde(default = "one_string")]
    pub den: String,
}

fn one_string() -> String {
    "1".to_string()
}

#[derive(Debug, Clone, Deserialize)]
pub struct CaseRecord {
    pub case_id: String,
    pub family: String,
    #[serde(default)]
    pub field: FieldKind,
    pub params: BTreeMap<String, ParamSpec>,
    #[serde(default)]
    pub constraints: Vec<ConstraintSpec>,
    /// Probe off the classification's constraint variety: skip the family's
    /// own parameter constraints when sampling.
    #[serde(default)]
    pub skip_family_constraints: bool,
    pub expected_dimension: usize,
    #[serde(default)]
    pub expected_span: Vec<[CoordSpec; 3]>,
    #[serde(default)]
    pub notes: Option<String>,
}

pub fn load_catalog(path: &Path) -> Result<Vec<CaseRecord>, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let records: Vec<CaseRecord> =
        serde_json::from_str(&text).map_err(|e| CatalogError::Malformed(e.to_string()))?;
    for rec in &records {
        Family::from_name(&rec.family).ok_or_else(|| CatalogError::BadCase {
            case_id: rec.case_id.clone(),
            reason: format!("unknown family {}", rec.family),
        })?;
        if rec.expected_span.len() != rec.expected_dimension {
            return Err(CatalogError::BadCase {
                case_id: rec.case_id.clone(),
                reason: format!(
                    "expected_span lists {} vectors for dimension {}",
                    rec.expected_span.len(),
                    rec.expected_dimension
                ),
            });
        }
    }
    check_coverage(&records)?;
    Ok(records)
}

/// Every enumerated theorem case must appear (at least as a sub-case).
pub fn check_coverage(records: &[CaseRecord]) -> Result<(), CatalogError> {
    const REQUIRED: [&str; 19] = [
        "Thm3.3",
        "Thm3.6(1",
        "Thm3.6(2",
        "Thm3.9(1",
        "Thm3.9(2",
        "Thm3.12(1",
        "Thm3.12(2",
        "Thm3.12(3",
        "Thm3.12(4",
        "Thm4.3",
        "Thm4.6(1",
        "Thm4.6(2",
        "Thm4.9(1",
        "Thm4.9(2",
        "Thm4.9(3",
        "Thm4.9(4",
        "Thm4.9(5",
        "Thm4.9(6",
        "Thm4.9(7",
    ];
    for required in REQUIRED {
        if !records.iter().any(|r| r.case_id.starts_with(required)) {
            return Err(CatalogError::MissingCase(required));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseStatus {
    Confirmed,
    Refuted,
    PartiallyConfirmed,
}

impl CaseStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseStatus::Confirmed => "confirmed",
            CaseStatus::Refuted => "refuted",
            CaseStatus::PartiallyConfirmed => "partially-confirmed",
        }
    }
}

/// One sample rendered for the report.
#[derive(Debug, Clone)]
pub struct SampleDetail {
    pub params: BTreeMap<&'static str, String>,
    pub engine_dimension: usize,
    pub engine_basis: Vec<[String; 3]>,
    pub expected_basis: Vec<[String; 3]>,
}

impl SampleDetail {
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "params": self.params,
            "engine_dimension": self.engine_dimension,
            "engine_basis": self.engine_basis,
            "expected_basis": self.expected_basis,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub case_id: String,
    pub family: String,
    pub samples_run: usize,
    pub samples_matching: usize,
    pub status: CaseStatus,
    pub expected_dimension: usize,
    /// Distinct engine dimensions seen, ascending.
    pub engine_dimensions: Vec<usize>,
    pub witness: SampleDetail,
    /// First mismatching sample, for refuted/partial statuses.
    pub counterexample: Option<SampleDetail>,
    pub strategy: &'static str,
    pub notes: Option<String>,
}

impl CaseReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "case_id": self.case_id,
            "family": self.family,
            "samples_run": self.samples_run,
            "samples_matching": self.samples_matching,
            "status": self.status.as_str(),
            "expected_dimension": self.expected_dimension,
            "engine_dimensions": self.engine_dimensions,
            "witness": self.witness.to_json(),
            "counterexample": self.counterexample.as_ref().map(|s| s.to_json()),
            "strategy": self.strategy,
            "notes": self.notes,
        })
    }
}

/// The family's own parameter constraints as polynomial relations, usable
/// over any field (the `Rational`-typed gate in `lie` covers CLI input).
fn family_constraint_polys(family: Family) -> Vec<(Scalar, Rel)> {
    let p = |s: &str| -> Scalar { s.parse().expect("static poly") };
    match family {
        Family::G1 => vec![(p("m"), Rel::Neq)],
        Family::G2 => vec![(p("n"), Rel::Neq)],
        Family::G3 => vec![],
        Family::G4 => vec![(p("v^2 - 1"), Rel::Eq)],
        Family::G5 => vec![(p("m + v"), Rel::Neq), (p("m*u + n*v"), Rel::Eq)],
        Family::G6 => vec![(p("m + v"), Rel::Neq), (p("m*u - n*v"), Rel::Eq)],
        Family::G7 => vec![(p("m + v"), Rel::Neq), (p("m*u"), Rel::Eq)],
    }
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=9);
    Rational::new(num, den).expect("nonzero denominator")
}

fn parse_scalar(case_id: &str, text: &str) -> Result<Scalar, CatalogError> {
    text.parse().map_err(|e| CatalogError::BadCase {
        case_id: case_id.to_string(),
        reason: format!("bad scalar `{text}`: {e}"),
    })
}

/// Deterministic per-case stream: FNV-1a of the case id folded into the seed,
/// so reordering the catalog or changing `--jobs` cannot shift any stream.
fn case_rng(seed: u64, case_id: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in case_id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

enum PreparedParam {
    Free,
    Fixed(Rational),
    PmOne,
    Expr(Scalar, Scalar),
    Sqrt2Times(Var),
}

struct PreparedCase {
    family: Family,
    /// (var, spec) in dependency order: concrete kinds first, then exprs.
    direct: Vec<(Var, PreparedParam)>,
    derived: Vec<(Var, PreparedParam)>,
    constraints: Vec<(Scalar, Rel)>,
    family_constraints: Vec<(Scalar, Rel)>,
    expected_span: Vec<[(Scalar, Scalar); 3]>,
}

fn prepare(rec: &CaseRecord) -> Result<PreparedCase, CatalogError> {
    let family = Family::from_name(&rec.family).expect("validated at load");
    let mut direct = Vec::new();
    let mut derived = Vec::new();
    for &var in family.vars() {
        let spec = rec.params.get(var.name()).ok_or_else(|| CatalogError::BadCase {
            case_id: rec.case_id.clone(),
            reason: format!("missing parameter {}", var.name()),
        })?;
        match spec {
            ParamSpec::Free => direct.push((var, PreparedParam::Free)),
            ParamSpec::PmOne => direct.push((var, PreparedParam::PmOne)),
            ParamSpec::Fixed { value } => {
                let rat: Rational = value.parse().map_err(|e| CatalogError::BadCase {
                    case_id: rec.case_id.clone(),
                    reason: format!("bad fixed value `{value}`: {e}"),
                })?;
                direct.push((var, PreparedParam::Fixed(rat)));
            }
            ParamSpec::Expr { num, den } => derived.push((
                var,
                PreparedParam::Expr(
                    parse_scalar(&rec.case_id, num)?,
                    parse_scalar(&rec.case_id, den)?,
                ),
            )),
            ParamSpec::Sqrt2Times { var: source } => {
                let source = Var::from_name(source).ok_or_else(|| CatalogError::BadCase {
                    case_id: rec.case_id.clone(),
                    reason: format!("unknown variable `{source}`"),
                })?;
                derived.push((var, PreparedParam::Sqrt2Times(source)));
            }
        }
    }
    let mut constraints = Vec::new();
    for c in &rec.constraints {
        constraints.push((parse_scalar(&rec.case_id, &c.poly)?, c.rel));
    }
    let family_constraints = if rec.skip_family_constraints {
        Vec::new()
    } else {
        family_constraint_polys(family)
    };
    let mut expected_span = Vec::new();
    for coords in &rec.expected_span {
        let mut vec = Vec::with_capacity(3);
        for coord in coords {
            vec.push((
                parse_scalar(&rec.case_id, &coord.num)?,
                parse_scalar(&rec.case_id, &coord.den)?,
            ));
        }
        expected_span.push([vec[0].clone(), vec[1].clone(), vec[2].clone()]);
    }
    Ok(PreparedCase {
        family,
        direct,
        derived,
        constraints,
        family_constraints,
        expected_span,
    })
}

/// One constraint-satisfying assignment, or `None` if this attempt misses.
fn try_sample<F: Field, R: Rng>(
    case: &PreparedCase,
    rng: &mut R,
) -> Option<BTreeMap<Var, F>> {
    let mut assignment: BTreeMap<Var, F> = BTreeMap::new();
    for (var, spec) in &case.direct {
        let value = match spec {
            PreparedParam::Free => F::from_rational(&random_rational(rng)),
            PreparedParam::Fixed(rat) => F::from_rational(rat),
            PreparedParam::PmOne => {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                F::from_rational(&Rational::from_int(sign))
            }
            _ => unreachable!("derived specs are split out"),
        };
        assignment.insert(*var, value);
    }
    for (var, spec) in &case.derived {
        let value = match spec {
            PreparedParam::Expr(num, den) => {
                let den_val = den.eval_in(&assignment).ok()?;
                let num_val = num.eval_in(&assignment).ok()?;
                num_val.mul(&den_val.inv()?)
            }
            PreparedParam::Sqrt2Times(source) => {
                F::sqrt2_element()?.mul(assignment.get(source)?)
            }
            _ => unreachable!(),
        };
        assignment.insert(*var, value);
    }
    for (poly, rel) in case.constraints.iter().chain(&case.family_constraints) {
        let value = poly.eval_in(&assignment).ok()?;
        match rel {
            Rel::Eq if !value.is_zero() => return None,
            Rel::Neq if value.is_zero() => return None,
            _ => {}
        }
    }
    // expected-span denominators must be meaningful at the sample
    for coords in &case.expected_span {
        for (_, den) in coords {
            if den.eval_in(&assignment).ok()?.is_zero() {
                return None;
            }
        }
    }
    Some(assignment)
}

fn render_params<F: Field>(assignment: &BTreeMap<Var, F>) -> BTreeMap<&'static str, String> {
    assignment
        .iter()
        .map(|(var, value)| (var.name(), value.to_string()))
        .collect()
}

fn render_basis<F: Field>(basis: &[[F; 3]]) -> Vec<[String; 3]> {
    basis
        .iter()
        .map(|v| std::array::from_fn(|k| v[k].to_string()))
        .collect()
}

fn run_case_in<F: Field>(
    rec: &CaseRecord,
    seed: u64,
    samples: usize,
) -> Result<CaseReport, CatalogError> {
    let case = prepare(rec)?;
    let geo = family_geometry(case.family);
    let mut rng = case_rng(seed, &rec.case_id);
    let mut matching = 0;
    let mut dimensions: Vec<usize> = Vec::new();
    let mut witness: Option<SampleDetail> = None;
    let mut counterexample: Option<SampleDetail> = None;

    for sample_idx in 0..samples {
        let assignment = (0..SAMPLE_ATTEMPTS)
            .find_map(|_| try_sample::<F, _>(&case, &mut rng))
            .ok_or_else(|| CatalogError::Unsatisfiable {
                case_id: rec.case_id.clone(),
            })?;

        let mut t: NumericForm<F> =
            std::array::from_fn(|_| std::array::from_fn(|_| F::zero()));
        for i in 0..3 {
            for j in 0..3 {
                t[i][j] = geo.ricci_symmetrized.entries[i][j]
                    .eval_in(&assignment)
                    .map_err(|e| CatalogError::BadCase {
                        case_id: rec.case_id.clone(),
                        reason: format!("tensor evaluation: {e}"),
                    })?;
            }
        }
        let ns = NumericStructure::from_table(&geo.structure, &assignment).map_err(|e| {
            CatalogError::BadCase {
                case_id: rec.case_id.clone(),
                reason: format!("bracket evaluation: {e}"),
            }
        })?;
        let sol = CollineationBasis::solve(&t, &ns);
        oracle_check(&t, &ns, &sol, &mut rng, ORACLE_TRIALS).map_err(|detail| {
            CatalogError::OracleViolation {
                case_id: rec.case_id.clone(),
                sample: sample_idx,
                detail,
            }
        })?;

        let mut expected: Vec<[F; 3]> = Vec::new();
        for coords in &case.expected_span {
            let mut vec: [F; 3] = std::array::from_fn(|_| F::zero());
            for (k, (num, den)) in coords.iter().enumerate() {
                let num_val = num.eval_in(&assignment).expect("vars covered");
                let den_val = den.eval_in(&assignment).expect("vars covered");
                vec[k] = num_val.mul(&den_val.inv().expect("denominator checked nonzero"));
            }
            expected.push(vec);
        }

        let matches = sol.dimension() == rec.expected_dimension
            && span_normal_form(&sol.basis) == span_normal_form(&expected);
        if matches {
            matching += 1;
        }
        if !dimensions.contains(&sol.dimension()) {
            dimensions.push(sol.dimension());
        }
        let detail_needed =
            witness.is_none() || (!matches && counterexample.is_none());
        if detail_needed {
            let detail = SampleDetail {
                params: render_params(&assignment),
                engine_dimension: sol.dimension(),
                engine_basis: render_basis(&sol.basis),
                expected_basis: render_basis(&expected),
            };
            if witness.is_none() {
                witness = Some(detail.clone());
            }
            if !matches && counterexample.is_none() {
                counterexample = Some(detail);
            }
        }
    }

    dimensions.sort_unstable();
    let status = if matching == samples {
        CaseStatus::Confirmed
    } else if matching == 0 {
        CaseStatus::Refuted
    } else {
        CaseStatus::PartiallyConfirmed
    };
    Ok(CaseReport {
        case_id: rec.case_id.clone(),
        family: rec.family.clone(),
        samples_run: samples,
        samples_matching: matching,
        status,
        expected_dimension: rec.expected_dimension,
        engine_dimensions: dimensions,
        witness: witness.expect("samples >= 1"),
        counterexample,
        strategy: match rec.field {
            FieldKind::Rational => "rational sampling",
            FieldKind::Sqrt2 => "quadratic-extension sampling",
        },
        notes: rec.notes.clone(),
    })
}

pub fn run_case(rec: &CaseRecord, seed: u64, samples: usize) -> Result<CaseReport, CatalogError> {
    match rec.field {
        FieldKind::Rational => run_case_in::<Rational>(rec, seed, samples),
        FieldKind::Sqrt2 => run_case_in::<Sqrt2>(rec, seed, samples),
    }
}

/// Run the whole catalog; `jobs = 1` is serial, anything larger fans out.
/// Output order and content are independent of `jobs`.
pub fn run_catalog(
    records: &[CaseRecord],
    seed: u64,
    samples: usize,
    jobs: usize,
) -> Result<Vec<CaseReport>, CatalogError> {
    if jobs <= 1 {
        records.iter().map(|r| run_case(r, seed, samples)).collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CatalogError::Malformed(format!("thread pool: {e}")))?;
        pool.install(|| {
            records
                .par_iter()
                .map(|r| run_case(r, seed, samples))
                .collect()
        })
    }
}
