//! Half-branches of a curve germ `F^{-1}(0)` in `R^n`, traced numerically
//! through their intersections with a small sphere.


use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numdeg::compiled::{dot, norm, CompiledField, CompiledPoly};
use crate::numdeg::sphere::{det_columns, sphere_samples};
use crate::numdeg::OracleConfig;
use crate::polyalg::{OneForm, Polynomial, VectorField};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BranchError {
    #[error("branch count not certified: {0}")]
    NotCertified(String),
    #[error("DF is rank-deficient at the sphere point {point:?}")]
    RankDrop { point: Vec<f64> },
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// One half-branch, represented by its point on the sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub point: Vec<f64>,
    /// Unit tangent of the curve at `point`, pointing away from the origin.
    pub tangent: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inbound: Option<bool>,
    /// Sign (+1 or -1) of each sign-condition function at `point`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub signs: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchReport {
    pub radius: f64,
    pub points: Vec<BranchPoint>,
    pub certified: bool,
    pub half_branch_count: usize,
    /// Largest `|F|` (relative to its scale on the sphere) at a reported point.
    pub residual: f64,
}

impl BranchReport {
    pub fn inbound_count(&self) -> Option<usize> {
        self.points.iter().map(|p| p.inbound.map(usize::from)).sum()
    }
}

/// Relative size of a cofactor tangent below which DF counts as rank-deficient.
const RANK_FLOOR: f64 = 1e-4;
/// Relative size of a pairing below which its sign is not trusted.
const SIGN_FLOOR: f64 = 1e-9;
const MAX_HALVINGS: u32 = 6;

struct Curve {
    f: CompiledField,
    n: usize,
}

impl Curve {
    fn new(fs: &[Polynomial]) -> Result<Self, BranchError> {
        let n = fs.first().map(Polynomial::nvars).unwrap_or(0);
        if n < 2 || fs.len() != n - 1 || fs.iter().any(|p| p.nvars() != n) {
            return Err(BranchError::Invalid(format!("a curve in R^n needs n - 1 equations in n variables (got {} in {n})", fs.len())));
        }
        // Pad with a zero component so the square-field machinery applies;
        // the last slot is never read.
        let mut comps = fs.to_vec();
        comps.push(Polynomial::zero(n));
        let f = CompiledField::new(&VectorField::new(comps).map_err(|e| BranchError::Invalid(e.to_string()))?);
        Ok(Curve { f, n })
    }

    fn eval(&self, x: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
        let (mut v, mut j) = self.f.eval_with_jacobian(x);
        v.truncate(self.n - 1);
        j.truncate(self.n - 1);
        (v, j)
    }

    /// Newton on `(F(r y) / s, (|y|^2 - 1) / 2)`.
    fn newton(&self, y0: &[f64], r: f64, s: f64) -> Option<(Vec<f64>, f64)> {
        let n = self.n;
        let residual = |y: &[f64]| -> (Vec<f64>, f64) {
            let x: Vec<f64> = y.iter().map(|c| c * r).collect();
            let (v, _) = self.eval(&x);
            let mut g: Vec<f64> = v.iter().map(|c| c / s).collect();
            g.push(0.5 * (dot(y, y) - 1.0));
            let l = norm(&g);
            (g, l)
        };
        let mut y = y0.to_vec();
        let (mut g, mut gn) = residual(&y);
        for _ in 0..60 {
            if gn < 1e-13 {
                break;
            }
            let x: Vec<f64> = y.iter().map(|c| c * r).collect();
            let (_, dv) = self.eval(&x);
            let jac = DMatrix::from_fn(n, n, |i, j| if i < n - 1 { dv[i][j] * r / s } else { y[j] });
            let rhs = DVector::from_iterator(n, g.iter().map(|c| -c));
            let step = jac.lu().solve(&rhs)?;
            let mut lambda = 1.0;
            let mut moved = false;
            while lambda > 1e-3 {
                let ny: Vec<f64> = y.iter().enumerate().map(|(i, c)| c + lambda * step[i]).collect();
                let (ng, nn) = residual(&ny);
                if nn < gn {
                    y = ny;
                    g = ng;
                    gn = nn;
                    moved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !moved {
                break;
            }
        }
        (gn < 1e-10).then(|| {
            let l = norm(&y);
            (y.iter().map(|c| c / l).collect(), gn)
        })
    }

    /// Cofactor vector of `DF`: orthogonal to every row, zero exactly when
    /// the rank drops.
    fn cofactor_tangent(&self, x: &[f64]) -> Vec<f64> {
        let (_, dv) = self.eval(x);
        let n = self.n;
        let t: Vec<f64> = (0..n)
            .map(|j| {
                let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                cols.push(e);
                for row in &dv {
                    cols.push(row.clone());
                }
                det_columns(&cols)
            })
            .collect();
        t
    }
}

/// Sphere points of `F^{-1}(0)` at the single radius `cfg.radius`.
pub fn sphere_intersections_at(fs: &[Polynomial], cfg: &OracleConfig) -> Result<BranchReport, BranchError> {
    cfg.validate().map_err(|e| BranchError::Invalid(e.to_string()))?;
    let curve = Curve::new(fs)?;
    let n = curve.n;
    let r = cfg.radius;
    let m = 10_000 * cfg.subdivision as usize;
    let starts = sphere_samples(n, m, &mut cfg.rng(404));
    // Scales of F and of each row of DF on the sphere.
    let mut scale: f64 = 0.0;
    let mut row_scale = vec![0.0f64; n - 1];
    for y in starts.iter().take(2000) {
        let (v, dv) = curve.eval(&y.iter().map(|c| c * r).collect::<Vec<_>>());
        scale = scale.max(norm(&v));
        for (s, row) in row_scale.iter_mut().zip(&dv) {
            *s = s.max(norm(row));
        }
    }
    let tangent_scale: f64 = row_scale.iter().product();
    if !(scale > 0.0) {
        return Err(BranchError::Invalid("F vanishes on the whole sphere".into()));
    }
    let found: Vec<Option<(Vec<f64>, f64)>> = starts.par_iter().map(|y0| curve.newton(y0, r, scale)).collect();
    let mut roots: Vec<(Vec<f64>, f64)> = Vec::new();
    for (y, res) in found.into_iter().flatten() {
        if !roots.iter().any(|(q, _)| norm(&q.iter().zip(&y).map(|(a, b)| a - b).collect::<Vec<_>>()) < 1e-6) {
            roots.push((y, res));
        }
    }
    roots.sort_by(|a, b| a.0.iter().zip(&b.0).map(|(p, q)| p.total_cmp(q)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
    let mut points = Vec::with_capacity(roots.len());
    let mut residual: f64 = 0.0;
    for (y, res) in roots {
        let x: Vec<f64> = y.iter().map(|c| c * r).collect();
        let t = curve.cofactor_tangent(&x);
        let l = norm(&t);
        if !(l > RANK_FLOOR * tangent_scale) {
            return Err(BranchError::RankDrop { point: x });
        }
        let radial = dot(&t, &y) / l;
        if radial.abs() < 1e-6 {
            return Err(BranchError::NotCertified(format!("the curve is tangent to the sphere at {x:?}")));
        }
        let sign = radial.signum();
        points.push(BranchPoint { point: x, tangent: t.iter().map(|c| sign * c / l).collect(), inbound: None, signs: Vec::new() });
        residual = residual.max(res);
    }
    Ok(BranchReport { radius: r, half_branch_count: points.len(), points, certified: false, residual })
}

/// Sphere points at `cfg.radius`, certified by an equal, even count at half
/// the radius.
pub fn sphere_intersections(fs: &[Polynomial], cfg: &OracleConfig) -> Result<BranchReport, BranchError> {
    let mut report = sphere_intersections_at(fs, cfg)?;
    let half = sphere_intersections_at(fs, &cfg.with_radius(cfg.radius / 2.0))?;
    if half.half_branch_count != report.half_branch_count {
        return Err(BranchError::NotCertified(format!(
            "{} points at radius {} but {} at radius {}",
            report.half_branch_count, cfg.radius, half.half_branch_count, half.radius
        )));
    }
    if report.half_branch_count % 2 != 0 {
        return Err(BranchError::NotCertified(format!("odd number {} of half-branches", report.half_branch_count)));
    }
    report.certified = true;
    Ok(report)
}

/// Inbound flag of each half-branch: the orientation `a(x)` given by the
/// form has negative inner product with the outward tangent.
pub fn classify_inbound(mut report: BranchReport, omega: &OneForm) -> Result<BranchReport, BranchError> {
    let coeffs: Vec<CompiledPoly> = omega.coefficients().iter().map(CompiledPoly::new).collect();
    let values: Vec<(Vec<f64>, f64)> = report
        .points
        .iter()
        .map(|p| {
            let a: Vec<f64> = coeffs.iter().map(|c| c.eval(&p.point)).collect();
            let pairing = dot(&a, &p.tangent);
            (a, pairing)
        })
        .collect();
    let scale = values.iter().map(|(a, _)| norm(a)).fold(0.0, f64::max);
    for (p, (_, pairing)) in report.points.iter_mut().zip(&values) {
        if !(pairing.abs() > SIGN_FLOOR * scale) {
            return Err(BranchError::NotCertified(format!(
                "the form is (nearly) orthogonal to the curve at {:?}; reduce the radius",
                p.point
            )));
        }
        p.inbound = Some(*pairing < 0.0);
    }
    Ok(report)
}

/// Signs of `g` at the half-branch points, recorded in `signs`, and the
/// counts `(b_+, b_-)`.
pub fn branch_sign_counts(report: &mut BranchReport, g: &Polynomial) -> Result<(usize, usize), BranchError> {
    let c = CompiledPoly::new(g);
    let vals: Vec<f64> = report.points.iter().map(|p| c.eval(&p.point)).collect();
    let scale = vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if let Some(i) = vals.iter().position(|v| !(v.abs() > SIGN_FLOOR * scale)) {
        return Err(BranchError::NotCertified(format!("g vanishes at the sphere point {:?}", report.points[i].point)));
    }
    let plus = vals.iter().filter(|v| **v > 0.0).count();
    for (p, v) in report.points.iter_mut().zip(&vals) {
        p.signs.push(if *v > 0.0 { 1 } else { -1 });
    }
    Ok((plus, vals.len() - plus))
}

/// Full trace: certified sphere points, inbound flags and the signs of each
/// `g`, stable between `r` and `r/2`. When certification fails the radius is
/// halved, at most six times.
pub fn trace_branches(
    fs: &[Polynomial],
    omega: &OneForm,
    gs: &[Polynomial],
    cfg: &OracleConfig,
) -> Result<BranchReport, BranchError> {
    let mut last = None;
    for k in 0..=MAX_HALVINGS {
        let c = cfg.with_radius(cfg.radius / f64::from(1u32 << k));
        match trace_once(fs, omega, gs, &c) {
            Ok(r) => return Ok(r),
            // A rank drop is a property of the germ, not of the radius.
            Err(e @ (BranchError::Invalid(_) | BranchError::RankDrop { .. })) => return Err(e),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn trace_once(fs: &[Polynomial], omega: &OneForm, gs: &[Polynomial], cfg: &OracleConfig) -> Result<BranchReport, BranchError> {
    if omega.dim() != fs.first().map(Polynomial::nvars).unwrap_or(0) {
        return Err(BranchError::Invalid("form and curve live in different dimensions".into()));
    }
    let mut summaries = Vec::with_capacity(2);
    let mut first = None;
    for c in [*cfg, cfg.with_radius(cfg.radius / 2.0)] {
        let mut rep = classify_inbound(sphere_intersections_at(fs, &c)?, omega)?;
        let mut counts = Vec::new();
        for g in gs {
            counts.push(branch_sign_counts(&mut rep, g)?);
        }
        summaries.push((rep.half_branch_count, rep.inbound_count(), counts));
        first.get_or_insert(rep);
    }
    if summaries[0] != summaries[1] {
        return Err(BranchError::NotCertified(format!(
            "radius {} gives (points, inbound, sign counts) {:?}, half the radius {:?}",
            cfg.radius, summaries[0], summaries[1]
        )));
    }
    let mut rep = first.expect("two radii");
    if rep.half_branch_count % 2 != 0 {
        return Err(BranchError::NotCertified(format!("odd number {} of half-branches", rep.half_branch_count)));
    }
    rep.certified = true;
    Ok(rep)
}
