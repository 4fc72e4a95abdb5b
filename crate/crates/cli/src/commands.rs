use radx_core::branches::{branch_sign_counts, sphere_intersections, trace_branches, BranchReport};
use radx_core::constructions::{corner_field, SignVector};
use radx_core::localdeg::{elk_index_with_limits, StandardBasisLimits};
use radx_core::numdeg::{certified_degree, DegreeMethod, OracleConfig};
use radx_core::polyalg::VectorField;
use radx_core::radial::{
    euler_corner_fiber, euler_fiber, euler_halfspace, euler_slice, radial_corner, radial_curve, radial_from_branches_on,
    radial_hypersurface, DeltaSign, Engine, EngineMode, IndexRecord, RadialReport, RadialValue,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::problem::{Problem, ProblemFile};

/// Resolved options; echoed in every record so that it can be replayed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub radius: f64,
    pub seed: u64,
    pub tol: f64,
    #[serde(default)]
    pub all_epsilon: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_sign: Option<DeltaSign>,
}

impl Default for Options {
    fn default() -> Self {
        let c = OracleConfig::default();
        Options { method: None, radius: c.radius, seed: c.seed, tol: c.tolerance, all_epsilon: false, delta_sign: None }
    }
}

impl Options {
    fn oracle(&self) -> OracleConfig {
        OracleConfig { radius: self.radius, seed: self.seed, tolerance: self.tol, ..OracleConfig::default() }
    }

    fn engine(&self) -> Result<Engine, CliError> {
        let mode = match self.method.as_deref() {
            None | Some("auto") => EngineMode::Auto,
            Some("exact") | Some("elk") => EngineMode::Exact,
            Some("numeric") => EngineMode::Numeric,
            Some(other) => return Err(CliError::Usage(format!("--method must be auto, exact or numeric here, got {other:?}"))),
        };
        Ok(Engine { mode, oracle: self.oracle(), limits: StandardBasisLimits::default() })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Request {
    pub problem: ProblemFile,
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub request: Request,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<IndexRecord>,
    pub values: Vec<RadialValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<BranchReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// A record, possibly partial, and the failure that cut it short.
pub struct Outcome {
    pub record: ResultRecord,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn done(record: ResultRecord) -> Self {
        Outcome { record, failure: None }
    }
}

fn record(command: &str, request: &Request, report: RadialReport) -> ResultRecord {
    ResultRecord {
        command: command.into(),
        request: request.clone(),
        indices: report.indices,
        values: report.values,
        branches: None,
        warnings: report.notes,
    }
}

fn epsilons(given: &Option<Vec<SignVector>>, k: usize, all: bool) -> Vec<SignVector> {
    if all {
        return SignVector::all(k);
    }
    given.clone().unwrap_or_else(|| vec![SignVector::zeros(k)])
}

fn wrong_kind(command: &str, problem: &ProblemFile, hint: &str) -> CliError {
    CliError::Usage(format!("{command} does not apply to a {} problem; {hint}", problem.kind.as_str()))
}

/// The single vector field a problem names: the raw field, or `V(alpha)` of a corner.
fn field_of(command: &str, request: &Request, problem: &Problem) -> Result<(String, VectorField), CliError> {
    match problem {
        Problem::RawField { field } => Ok(("V".into(), field.clone())),
        Problem::Corner { omega: Some(omega), alpha: Some(a), .. } => Ok((format!("V{a}"), corner_field(omega, a)?)),
        _ => Err(wrong_kind(command, &request.problem, "it needs a raw-field problem or a corner problem with \"alpha\"")),
    }
}

pub fn ph_index(request: &Request, problem: &Problem) -> Result<Outcome, CliError> {
    let (label, field) = field_of("ph-index", request, problem)?;
    let opts = &request.options;
    let (elk, numeric) = match opts.method.as_deref() {
        None | Some("elk") | Some("exact") => (true, false),
        Some("numeric") => (false, true),
        Some("both") => (true, true),
        Some(other) => return Err(CliError::Usage(format!("--method must be elk, numeric or both here, got {other:?}"))),
    };
    let mut indices = Vec::new();
    if elk {
        let index = elk_index_with_limits(&field, StandardBasisLimits::default())?;
        indices.push(IndexRecord { label: label.clone(), field: field.to_string(), index, note: None });
    }
    if numeric {
        let index = certified_degree(&field, &opts.oracle())?;
        indices.push(IndexRecord { label: label.clone(), field: field.to_string(), index, note: None });
    }
    if let [a, b] = indices.as_slice() {
        if a.index.value != b.index.value {
            return Err(CliError::Engine(format!(
                "engines disagree on {label}: {} gives {}, {} gives {}",
                a.index.method.as_str(),
                a.index.value,
                b.index.method.as_str(),
                b.index.value
            )));
        }
    }
    let values = vec![RadialValue { set: format!("Ind {label}"), value: indices[0].index.value }];
    Ok(Outcome::done(ResultRecord {
        command: "ph-index".into(),
        request: request.clone(),
        indices,
        values,
        branches: None,
        warnings: Vec::new(),
    }))
}

pub fn radial(request: &Request, problem: &Problem) -> Result<Outcome, CliError> {
    let opts = &request.options;
    let engine = opts.engine()?;
    let report = match problem {
        Problem::Corner { omega: Some(omega), k, epsilon, .. } => {
            radial_corner(omega, *k, &epsilons(epsilon, *k, opts.all_epsilon), &engine)?
        }
        Problem::Corner { omega: None, .. } => return Err(CliError::Usage("radial on a corner problem needs \"omega\"".into())),
        Problem::Hypersurface { f, omega: Some(omega), variant, targets, .. } => {
            radial_hypersurface(f, omega, *variant, targets, &engine)?
        }
        Problem::Hypersurface { omega: None, .. } => {
            return Err(CliError::Usage("radial on a hypersurface problem needs \"omega\"".into()))
        }
        Problem::Curve { spec, epsilon } => radial_curve(spec, &epsilons(epsilon, spec.gs.len(), opts.all_epsilon), &engine)?,
        Problem::RawField { .. } => return Err(wrong_kind("radial", &request.problem, "use ph-index")),
    };
    Ok(Outcome::done(record("radial", request, report)))
}

pub fn euler(request: &Request, problem: &Problem) -> Result<Outcome, CliError> {
    let opts = &request.options;
    let engine = opts.engine()?;
    let delta = opts.delta_sign.unwrap_or(DeltaSign::Positive);
    let report = match problem {
        Problem::Corner { k, epsilon, f: Some(f), .. } => {
            euler_corner_fiber(f, *k, &epsilons(epsilon, *k, opts.all_epsilon), delta, &engine)?
        }
        Problem::Corner { f: None, .. } => return Err(CliError::Usage("euler on a corner problem needs \"f\"".into())),
        Problem::Hypersurface { f, g: Some(g), variant, targets, .. } => euler_slice(f, g, *variant, targets, delta, &engine)?,
        Problem::Hypersurface { f, g: None, .. } => {
            let mut fibre = euler_fiber(f, delta, &engine)?;
            let half = euler_halfspace(f, delta, &engine)?;
            for rec in half.indices {
                if !fibre.indices.iter().any(|r| r.label == rec.label) {
                    fibre.indices.push(rec);
                }
            }
            fibre.values.extend(half.values);
            fibre.notes.extend(half.notes.into_iter().filter(|n| !fibre.notes.contains(n)).collect::<Vec<_>>());
            fibre
        }
        _ => return Err(wrong_kind("euler", &request.problem, "it needs a hypersurface problem or a corner problem with \"f\"")),
    };
    Ok(Outcome::done(record("euler", request, report)))
}

pub fn oracle_degree(request: &Request, problem: &Problem) -> Result<Outcome, CliError> {
    let (label, field) = field_of("oracle degree", request, problem)?;
    let opts = &request.options;
    let method = match opts.method.as_deref() {
        None => DegreeMethod::Auto,
        Some(m) => m.parse::<DegreeMethod>().map_err(CliError::Usage)?,
    };
    let index = certified_degree(&field, &opts.oracle().with_method(method))?;
    let values = vec![RadialValue { set: format!("deg {label}"), value: index.value }];
    Ok(Outcome::done(ResultRecord {
        command: "oracle degree".into(),
        request: request.clone(),
        indices: vec![IndexRecord { label, field: field.to_string(), index, note: None }],
        values,
        branches: None,
        warnings: Vec::new(),
    }))
}

/// Sphere points, orientations and sign counts of a curve problem. When the
/// form cannot orient every half-branch, the geometry is still reported.
pub fn oracle_branches(request: &Request, problem: &Problem) -> Result<Outcome, CliError> {
    let Problem::Curve { spec, epsilon } = problem else {
        return Err(wrong_kind("oracle branches", &request.problem, "it needs a curve problem"));
    };
    let opts = &request.options;
    if opts.method.is_some() {
        return Err(CliError::Usage("oracle branches takes no --method".into()));
    }
    let cfg = opts.oracle();
    let mut rec = ResultRecord {
        command: "oracle branches".into(),
        request: request.clone(),
        indices: Vec::new(),
        values: Vec::new(),
        branches: None,
        warnings: Vec::new(),
    };
    let rep = match trace_branches(&spec.fs, &spec.omega, &spec.gs, &cfg) {
        Ok(rep) => rep,
        Err(e) => {
            let err = CliError::from(e);
            if !matches!(err, CliError::NotCertified(_)) {
                return Err(err);
            }
            let mut geometry = sphere_intersections(&spec.fs, &cfg)?;
            rec.values.push(RadialValue { set: "half-branches".into(), value: geometry.half_branch_count as i64 });
            for (i, g) in spec.gs.iter().enumerate() {
                if let Ok((p, m)) = branch_sign_counts(&mut geometry, g) {
                    push_sign_counts(&mut rec.values, i, p, m);
                }
            }
            rec.warnings.push(format!("orientation: {err}"));
            rec.branches = Some(geometry);
            return Ok(Outcome { record: rec, failure: Some(err) });
        }
    };
    rec.values.push(RadialValue { set: "half-branches".into(), value: rep.half_branch_count as i64 });
    rec.values.push(RadialValue { set: "inbound".into(), value: rep.inbound_count().unwrap_or(0) as i64 });
    for i in 0..spec.gs.len() {
        let p = rep.points.iter().filter(|q| q.signs[i] > 0).count();
        push_sign_counts(&mut rec.values, i, p, rep.points.len() - p);
    }
    for e in epsilons(epsilon, spec.gs.len(), opts.all_epsilon) {
        let value = radial_from_branches_on(&rep, &e)?;
        let set = if e.is_empty() { "1 - inbound".to_string() } else { format!("1 - inbound on C({e})") };
        rec.values.push(RadialValue { set, value });
    }
    rec.branches = Some(rep);
    Ok(Outcome::done(rec))
}

fn push_sign_counts(values: &mut Vec<RadialValue>, i: usize, plus: usize, minus: usize) {
    values.push(RadialValue { set: format!("b+(g{})", i + 1), value: plus as i64 });
    values.push(RadialValue { set: format!("b-(g{})", i + 1), value: minus as i64 });
}
