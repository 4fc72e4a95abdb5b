//! Numerical mapping degree of `V/|V|` on a small sphere around the origin.

pub(crate) mod compiled;
mod kronecker;
mod preimage;
pub mod sphere;
mod winding;


use rand::SeedableRng;
use rayon::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::localdeg::{IndexMethod, IndexValue};
use crate::polyalg::VectorField;
use compiled::{norm, CompiledField};

pub use kronecker::kronecker_integral_degree;
pub use preimage::{preimage_count_degree, preimage_report, PreimageReport};
pub use winding::winding_degree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMethod {
    Winding,
    KroneckerIntegral,
    PreimageCount,
    #[default]
    Auto,
}

impl std::str::FromStr for DegreeMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "winding" => Ok(DegreeMethod::Winding),
            "kronecker-integral" | "integral" => Ok(DegreeMethod::KroneckerIntegral),
            "preimage-count" | "preimage" => Ok(DegreeMethod::PreimageCount),
            "auto" => Ok(DegreeMethod::Auto),
            other => Err(format!("unknown degree method {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub radius: f64,
    pub seed: u64,
    pub tolerance: f64,
    /// Multiplies sample counts and initial mesh sizes.
    pub subdivision: u32,
    pub method: DegreeMethod,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { radius: 1e-2, seed: 0, tolerance: 0.1, subdivision: 1, method: DegreeMethod::Auto }
    }
}

impl OracleConfig {
    pub fn with_radius(self, radius: f64) -> Self {
        OracleConfig { radius, ..self }
    }

    pub fn with_method(self, method: DegreeMethod) -> Self {
        OracleConfig { method, ..self }
    }

    pub fn validate(&self) -> Result<(), NumDegError> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(NumDegError::InvalidConfig(format!("radius must be positive, got {}", self.radius)));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 0.5) {
            return Err(NumDegError::InvalidConfig(format!("tolerance must lie in (0, 0.5), got {}", self.tolerance)));
        }
        if self.subdivision == 0 {
            return Err(NumDegError::InvalidConfig("subdivision must be at least 1".into()));
        }
        Ok(())
    }

    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumDegError {
    #[error("field (nearly) vanishes on the sphere of radius {radius}")]
    ZeroOnSphere { radius: f64 },
    #[error("degree not certified: {0}")]
    NotCertified(String),
    #[error("direction is suspected not to be a regular value")]
    SuspectIrregularValue,
    #[error("method {method:?} does not apply in dimension {n}")]
    UnsupportedMethod { method: DegreeMethod, n: usize },
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(String),
}

/// Relative threshold below which a sampled `|V|` counts as a zero on the sphere.
pub(crate) const ZERO_RATIO: f64 = 1e-9;

/// Best-effort check that `V` has no zero on the sphere: dense sampling,
/// then Gauss-Newton descent of `|V|` along the sphere from the smallest
/// samples. Returns the largest sampled norm.
pub(crate) fn check_sphere(f: &CompiledField, cfg: &OracleConfig) -> Result<f64, NumDegError> {
    let n = f.dim();
    let m = 2000 * cfg.subdivision as usize;
    let pts = sphere::sphere_samples(n, m, &mut cfg.rng(101));
    let r = cfg.radius;
    let at = |y: &[f64]| -> Vec<f64> { y.iter().map(|c| c * r).collect() };
    let mut norms: Vec<(f64, usize)> = pts.par_iter().enumerate().map(|(i, y)| (norm(&f.eval(&at(y))), i)).collect();
    let max = norms.iter().map(|p| p.0).fold(0.0, f64::max);
    if !(max > 0.0) || !max.is_finite() {
        return Err(NumDegError::ZeroOnSphere { radius: r });
    }
    norms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let lowest: Vec<f64> = norms
        .par_iter()
        .take(24)
        .map(|&(_, i)| descend_norm(f, &pts[i], r))
        .collect();
    if lowest.iter().any(|&v| v < ZERO_RATIO * max) {
        return Err(NumDegError::ZeroOnSphere { radius: r });
    }
    Ok(max)
}

/// Local minimum of `|V(r y)|` over unit `y`, started at `y0`.
fn descend_norm(f: &CompiledField, y0: &[f64], r: f64) -> f64 {
    let n = y0.len();
    let mut y = y0.to_vec();
    let value = |y: &[f64]| norm(&f.eval(&y.iter().map(|c| c * r).collect::<Vec<_>>()));
    let mut cur = value(&y);
    for _ in 0..60 {
        let x: Vec<f64> = y.iter().map(|c| c * r).collect();
        let (v, dv) = f.eval_with_jacobian(&x);
        let frame = sphere::tangent_frame(&y);
        // Least squares in the tangent directions: min |v + A d|.
        let a = nalgebra::DMatrix::from_fn(n, n - 1, |i, j| compiled::dot(&dv[i], &frame[j]) * r);
        let b = nalgebra::DVector::from_iterator(n, v.iter().map(|c| -c));
        let Ok(d) = a.clone().svd(true, true).solve(&b, 1e-14) else { break };
        let mut lambda = 1.0;
        let mut moved = false;
        while lambda > 1e-4 {
            let mut ny: Vec<f64> = y.clone();
            for (j, t) in frame.iter().enumerate() {
                ny.iter_mut().zip(t).for_each(|(yi, ti)| *yi += lambda * d[j] * ti);
            }
            let l = norm(&ny);
            ny.iter_mut().for_each(|c| *c /= l);
            let nv = value(&ny);
            if nv < cur {
                y = ny;
                cur = nv;
                moved = true;
                break;
            }
            lambda *= 0.5;
        }
        if !moved {
            break;
        }
    }
    cur
}

/// Degree of `V/|V|` on the sphere of radius `cfg.radius`.
pub fn numeric_degree(v: &VectorField, cfg: &OracleConfig) -> Result<IndexValue, NumDegError> {
    cfg.validate()?;
    let n = v.dim();
    match cfg.method {
        DegreeMethod::Winding => winding_degree(v, cfg),
        DegreeMethod::KroneckerIntegral => kronecker_integral_degree(v, cfg),
        DegreeMethod::PreimageCount => {
            let mut rng = cfg.rng(7);
            let w = sphere::random_unit(n, &mut rng);
            preimage_count_degree(v, &w, cfg)
        }
        DegreeMethod::Auto => {
            if n <= 2 {
                return winding_degree(v, cfg);
            }
            match preimage::two_direction_degree(v, cfg) {
                Ok(r) => Ok(r),
                Err(NumDegError::ZeroOnSphere { radius }) => Err(NumDegError::ZeroOnSphere { radius }),
                Err(_) => kronecker_integral_degree(v, cfg),
            }
        }
    }
}

/// [`numeric_degree`] at `r`, `r/2` and `r/4`; the three values must agree.
pub fn certified_degree(v: &VectorField, cfg: &OracleConfig) -> Result<IndexValue, NumDegError> {
    let mut out: Option<IndexValue> = None;
    for k in 0..3 {
        let c = cfg.with_radius(cfg.radius / f64::from(1u32 << k));
        let r = numeric_degree(v, &c)?;
        match &mut out {
            None => out = Some(r),
            Some(prev) => {
                if prev.value != r.value {
                    return Err(NumDegError::NotCertified(format!(
                        "degree {} at radius {} but {} at radius {}",
                        prev.value, cfg.radius, r.value, c.radius
                    )));
                }
                prev.residual = Some(prev.residual.unwrap_or(0.0).max(r.residual.unwrap_or(0.0)));
            }
        }
    }
    Ok(out.expect("three radii"))
}

/// Round `raw` to an integer, or fail if it is not within `tol`.
pub(crate) fn round_certified(raw: f64, tol: f64, method: IndexMethod) -> Result<IndexValue, NumDegError> {
    if !raw.is_finite() {
        return Err(NumDegError::NotCertified(format!("non-finite estimate {raw}")));
    }
    let v = raw.round();
    let residual = (raw - v).abs();
    if residual >= tol {
        return Err(NumDegError::NotCertified(format!("estimate {raw:.4} is {residual:.3} away from an integer")));
    }
    Ok(IndexValue::numeric(v as i64, method, residual))
}
