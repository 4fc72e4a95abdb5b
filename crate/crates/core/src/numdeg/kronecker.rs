use std::f64::consts::PI;

use rayon::prelude::*;

use super::compiled::{dot, norm, CompiledField};
use super::sphere::{det_columns, gauss_legendre, icosphere, solid_angle};
use super::{check_sphere, round_certified, NumDegError, OracleConfig, ZERO_RATIO};
use crate::localdeg::{IndexMethod, IndexValue};
use crate::polyalg::VectorField;

/// Degree as the normalized integral of the pulled-back volume form of the
/// sphere: an icosphere sum of image solid angles for `n = 3`, and a
/// hyperspherical product rule for `n >= 4`.
pub fn kronecker_integral_degree(v: &VectorField, cfg: &OracleConfig) -> Result<IndexValue, NumDegError> {
    cfg.validate()?;
    let f = CompiledField::new(v);
    let scale = check_sphere(&f, cfg)?;
    match v.dim() {
        n if n < 3 => super::winding::winding_degree(v, cfg).map(|r| IndexValue { method: IndexMethod::NumericIntegral, ..r }),
        3 => icosphere_degree(&f, cfg, scale),
        _ => hyperspherical_degree(&f, cfg, scale),
    }
}

fn icosphere_degree(f: &CompiledField, cfg: &OracleConfig, scale: f64) -> Result<IndexValue, NumDegError> {
    let start = 3 + cfg.subdivision.saturating_sub(1).min(3);
    let mut last = String::new();
    let mut prev: Option<f64> = None;
    for level in start..=8 {
        let (verts, tris) = icosphere(level);
        let images: Vec<Option<[f64; 3]>> = verts
            .par_iter()
            .map(|p| {
                let v = f.eval(&[p[0] * cfg.radius, p[1] * cfg.radius, p[2] * cfg.radius]);
                let l = norm(&v);
                (l > ZERO_RATIO * scale).then(|| [v[0] / l, v[1] / l, v[2] / l])
            })
            .collect();
        if images.iter().any(Option::is_none) {
            return Err(NumDegError::ZeroOnSphere { radius: cfg.radius });
        }
        let images: Vec<[f64; 3]> = images.into_iter().flatten().collect();
        let parts: Vec<(f64, f64)> = tris
            .par_iter()
            .map(|&[a, b, c]| {
                let (ia, ib, ic) = (&images[a], &images[b], &images[c]);
                let spread = [dot(ia, ib), dot(ib, ic), dot(ic, ia)].iter().map(|d| d.clamp(-1.0, 1.0).acos()).fold(0.0, f64::max);
                (solid_angle(ia, ib, ic), spread)
            })
            .collect();
        let total: f64 = parts.iter().map(|p| p.0).sum();
        let spread = parts.iter().map(|p| p.1).fold(0.0, f64::max);
        let raw = total / (4.0 * PI);
        // Geodesic image triangles are faithful once every image edge is
        // short; otherwise require two levels to agree.
        let stable = prev.is_some_and(|p| (p - raw).abs() < 1e-6);
        if spread < 1.0 || stable {
            return round_certified(raw, cfg.tolerance, IndexMethod::NumericIntegral);
        }
        prev = Some(raw);
        last = format!("level {level}: estimate {raw:.4}, largest image edge {spread:.3} rad");
    }
    Err(NumDegError::NotCertified(last))
}

/// Point `s(theta)` of the unit sphere in hyperspherical coordinates and its
/// partial derivatives.
fn hyperspherical(theta: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let m = theta.len();
    let n = m + 1;
    let (s, c): (Vec<f64>, Vec<f64>) = theta.iter().map(|t| (t.sin(), t.cos())).unzip();
    let coord = |k: usize, diff: Option<usize>| -> f64 {
        // x_k = prod_{j<k} sin(t_j) * (cos(t_k) if k < m else 1)
        let mut acc = 1.0;
        for j in 0..k.min(m) {
            acc *= if diff == Some(j) { c[j] } else { s[j] };
        }
        if k < m {
            acc *= if diff == Some(k) { -s[k] } else { c[k] };
        }
        if let Some(i) = diff {
            if i > k || (k == m && i >= m) {
                return 0.0;
            }
        }
        acc
    };
    let x = (0..n).map(|k| coord(k, None)).collect();
    let d = (0..m).map(|i| (0..n).map(|k| coord(k, Some(i))).collect()).collect();
    (x, d)
}

fn hyperspherical_degree(f: &CompiledField, cfg: &OracleConfig, scale: f64) -> Result<IndexValue, NumDegError> {
    let n = f.dim();
    let m = n - 1;
    // |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
    let gamma_half = |k: usize| -> f64 {
        if k % 2 == 0 {
            (1..k / 2).map(|j| j as f64).product()
        } else {
            let mut g = PI.sqrt();
            let mut a = 0.5;
            while a < k as f64 / 2.0 - 0.25 {
                g *= a;
                a += 1.0;
            }
            g
        }
    };
    let area = 2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n);
    let probe: Vec<f64> = (0..m).map(|i| if i + 1 < m { 1.0 } else { 0.7 }).collect();
    let (p, dp) = hyperspherical(&probe);
    let mut cols = vec![p];
    cols.extend(dp);
    let orientation = det_columns(&cols).signum();

    let (gx, gw) = gauss_legendre(8);
    let mut prev: Option<f64> = None;
    let mut last = String::new();
    let mut panels = 2 * cfg.subdivision as usize;
    while panels <= 32 {
        // Composite Gauss-Legendre on [0, pi] for the polar angles,
        // trapezoid rule on [0, 2 pi) for the last one.
        let mut polar: Vec<(f64, f64)> = Vec::new();
        let h = PI / panels as f64;
        for k in 0..panels {
            for (x, w) in gx.iter().zip(&gw) {
                polar.push((h * (k as f64 + 0.5 * (x + 1.0)), 0.5 * h * w));
            }
        }
        let na = 2 * polar.len();
        let azimuth: Vec<(f64, f64)> = (0..na).map(|k| (2.0 * PI * k as f64 / na as f64, 2.0 * PI / na as f64)).collect();
        let polar_points = polar.len().pow((m - 1) as u32);
        let values: Vec<Result<f64, ()>> = (0..polar_points)
            .into_par_iter()
            .map(|idx| {
                let mut theta = vec![0.0; m];
                let mut weight = 1.0;
                let mut rest = idx;
                for t in theta.iter_mut().take(m - 1) {
                    let (x, w) = polar[rest % polar.len()];
                    rest /= polar.len();
                    *t = x;
                    weight *= w;
                }
                let mut acc = 0.0;
                for &(phi, wphi) in &azimuth {
                    theta[m - 1] = phi;
                    let (s, ds) = hyperspherical(&theta);
                    let x: Vec<f64> = s.iter().map(|c| c * cfg.radius).collect();
                    let (v, dv) = f.eval_with_jacobian(&x);
                    let l = norm(&v);
                    if !(l > ZERO_RATIO * scale) {
                        return Err(());
                    }
                    let mut cols = vec![v.clone()];
                    for d in &ds {
                        cols.push(dv.iter().map(|row| dot(row, d) * cfg.radius).collect());
                    }
                    acc += wphi * det_columns(&cols) / l.powi(n as i32);
                }
                Ok(acc * weight)
            })
            .collect();
        if values.iter().any(Result::is_err) {
            return Err(NumDegError::ZeroOnSphere { radius: cfg.radius });
        }
        let total: f64 = values.into_iter().map(|v| v.unwrap_or(0.0)).sum();
        let raw = orientation * total / area;
        if let Some(p) = prev {
            if (raw - p).abs() < cfg.tolerance / 4.0 && (raw - raw.round()).abs() < cfg.tolerance {
                return round_certified(raw, cfg.tolerance, IndexMethod::NumericIntegral);
            }
        }
        last = format!("{panels} panels: estimate {raw:.4}");
        prev = Some(raw);
        panels *= 2;
    }
    Err(NumDegError::NotCertified(last))
}
