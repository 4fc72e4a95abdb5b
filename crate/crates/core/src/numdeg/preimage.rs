use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::compiled::{dot, norm, CompiledField};
use super::sphere::{det_columns, random_unit, sphere_samples, tangent_frame};
use super::{check_sphere, NumDegError, OracleConfig};
use crate::localdeg::{IndexMethod, IndexValue};
use crate::polyalg::VectorField;

/// Preimages of a direction `w` under `V/|V|` on the sphere, with signs.
#[derive(Clone, Debug, PartialEq)]
pub struct PreimageReport {
    pub direction: Vec<f64>,
    /// Points on the sphere of radius `r` and the local orientation sign at each.
    pub preimages: Vec<(Vec<f64>, i32)>,
}

impl PreimageReport {
    pub fn degree(&self) -> i64 {
        self.preimages.iter().map(|(_, s)| i64::from(*s)).sum()
    }
}

const CONDITION_FLOOR: f64 = 1e-7;

struct Solver<'a> {
    f: &'a CompiledField,
    w: &'a [f64],
    r: f64,
    scale: f64,
}

impl Solver<'_> {
    /// Residual of `V(r y)/s - t w = 0`, `(|y|^2 - 1)/2 = 0`.
    fn residual(&self, y: &[f64], t: f64) -> Vec<f64> {
        let x: Vec<f64> = y.iter().map(|c| c * self.r).collect();
        let v = self.f.eval(&x);
        let mut g: Vec<f64> = v.iter().zip(self.w).map(|(vi, wi)| vi / self.scale - t * wi).collect();
        g.push(0.5 * (dot(y, y) - 1.0));
        g
    }

    fn newton(&self, y0: &[f64]) -> Option<(Vec<f64>, f64)> {
        let n = y0.len();
        let mut y = y0.to_vec();
        let x: Vec<f64> = y.iter().map(|c| c * self.r).collect();
        let mut t = (dot(&self.f.eval(&x), self.w) / self.scale).max(1e-3);
        let mut g = self.residual(&y, t);
        let mut gn = norm(&g);
        for _ in 0..60 {
            if gn < 1e-12 {
                break;
            }
            let x: Vec<f64> = y.iter().map(|c| c * self.r).collect();
            let (_, dv) = self.f.eval_with_jacobian(&x);
            let jac = DMatrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
                (true, true) => dv[i][j] * self.r / self.scale,
                (true, false) => -self.w[i],
                (false, true) => y[j],
                (false, false) => 0.0,
            });
            let rhs = DVector::from_iterator(n + 1, g.iter().map(|v| -v));
            let step = jac.lu().solve(&rhs)?;
            let mut lambda = 1.0;
            let mut improved = false;
            while lambda > 1e-3 {
                let ny: Vec<f64> = y.iter().enumerate().map(|(i, c)| c + lambda * step[i]).collect();
                let nt = t + lambda * step[n];
                let ng = self.residual(&ny, nt);
                let nn = norm(&ng);
                if nn < gn {
                    y = ny;
                    t = nt;
                    g = ng;
                    gn = nn;
                    improved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !improved {
                break;
            }
        }
        (gn < 1e-10 && t > 1e-9).then_some((y, t))
    }

    /// Orientation sign of `V/|V|` at `y`; `None` when the point looks critical.
    fn sign(&self, y: &[f64]) -> Option<i32> {
        let x: Vec<f64> = y.iter().map(|c| c * self.r).collect();
        let (v, dv) = self.f.eval_with_jacobian(&x);
        let mut cols = vec![v.clone()];
        let mut scale = norm(&v);
        for t in tangent_frame(y) {
            let u: Vec<f64> = dv.iter().map(|row| dot(row, &t) * self.r).collect();
            scale *= norm(&u).max(f64::MIN_POSITIVE);
            cols.push(u);
        }
        let d = det_columns(&cols);
        if !(d.abs() > CONDITION_FLOOR * scale) {
            return None;
        }
        Some(if d > 0.0 { 1 } else { -1 })
    }
}

pub(crate) fn find_preimages(
    f: &CompiledField,
    w: &[f64],
    cfg: &OracleConfig,
    scale: f64,
) -> Result<PreimageReport, NumDegError> {
    let n = f.dim();
    let solver = Solver { f, w, r: cfg.radius, scale };
    let m = cfg.subdivision as usize * if n <= 3 { 1500 } else { 3000 };
    let starts = sphere_samples(n, m, &mut cfg.rng(202));
    let found: Vec<Option<(Vec<f64>, f64)>> = starts.par_iter().map(|y0| solver.newton(y0)).collect();
    let mut roots: Vec<Vec<f64>> = Vec::new();
    for (y, _) in found.into_iter().flatten() {
        if !roots.iter().any(|r| norm(&r.iter().zip(&y).map(|(a, b)| a - b).collect::<Vec<_>>()) < 1e-6) {
            roots.push(y);
        }
    }
    let mut preimages: Vec<(Vec<f64>, i32)> = Vec::with_capacity(roots.len());
    for y in roots {
        let s = solver.sign(&y).ok_or(NumDegError::SuspectIrregularValue)?;
        preimages.push((y.iter().map(|c| c * cfg.radius).collect(), s));
    }
    preimages.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    Ok(PreimageReport { direction: w.to_vec(), preimages })
}

/// Signed count of preimages of the unit direction `w`.
pub fn preimage_count_degree(v: &VectorField, w: &[f64], cfg: &OracleConfig) -> Result<IndexValue, NumDegError> {
    let report = preimage_report(v, w, cfg)?;
    Ok(IndexValue::numeric(report.degree(), IndexMethod::NumericPreimage, 0.0))
}

pub fn preimage_report(v: &VectorField, w: &[f64], cfg: &OracleConfig) -> Result<PreimageReport, NumDegError> {
    cfg.validate()?;
    let n = v.dim();
    if w.len() != n {
        return Err(NumDegError::InvalidConfig(format!("direction has length {}, expected {n}", w.len())));
    }
    let l = norm(w);
    if !(l > 0.0) {
        return Err(NumDegError::InvalidConfig("direction must be nonzero".into()));
    }
    let w: Vec<f64> = w.iter().map(|c| c / l).collect();
    let f = CompiledField::new(v);
    let scale = check_sphere(&f, cfg)?;
    find_preimages(&f, &w, cfg, scale)
}

/// Counts for two random directions; they must agree. Irregular directions
/// are redrawn a few times. The residual is `|count(w1) - count(w2)|`.
pub(crate) fn two_direction_degree(v: &VectorField, cfg: &OracleConfig) -> Result<IndexValue, NumDegError> {
    let n = v.dim();
    let f = CompiledField::new(v);
    let scale = check_sphere(&f, cfg)?;
    let mut rng = cfg.rng(303);
    let mut last = String::from("no regular direction found");
    for _ in 0..4 {
        let w1 = random_unit(n, &mut rng);
        let w2 = random_unit(n, &mut rng);
        let (a, b) = match (find_preimages(&f, &w1, cfg, scale), find_preimages(&f, &w2, cfg, scale)) {
            (Ok(a), Ok(b)) => (a.degree(), b.degree()),
            (Err(NumDegError::SuspectIrregularValue), _) | (_, Err(NumDegError::SuspectIrregularValue)) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        let residual = (a - b).abs() as f64;
        if residual < cfg.tolerance {
            return Ok(IndexValue::numeric(a, IndexMethod::NumericPreimage, residual));
        }
        last = format!("counts {a} and {b} for two directions");
    }
    Err(NumDegError::NotCertified(last))
}
