use std::f64::consts::PI;

use super::compiled::CompiledField;
use super::{check_sphere, round_certified, DegreeMethod, NumDegError, OracleConfig};
use crate::localdeg::{IndexMethod, IndexValue};
use crate::polyalg::VectorField;

/// Winding number of `V` along the circle of radius `cfg.radius` (`n = 2`).
/// In one variable this is the degree `(sign V(r) - sign V(-r)) / 2`.
pub fn winding_degree(v: &VectorField, cfg: &OracleConfig) -> Result<IndexValue, NumDegError> {
    cfg.validate()?;
    let f = CompiledField::new(v);
    match v.dim() {
        1 => {
            let a = f.eval(&[cfg.radius])[0];
            let b = f.eval(&[-cfg.radius])[0];
            if a == 0.0 || b == 0.0 {
                return Err(NumDegError::ZeroOnSphere { radius: cfg.radius });
            }
            let d = (a.signum() - b.signum()) / 2.0;
            Ok(IndexValue::numeric(d as i64, IndexMethod::NumericWinding, 0.0))
        }
        2 => {
            check_sphere(&f, cfg)?;
            let raw = winding_raw(&f, cfg)?;
            round_certified(raw, cfg.tolerance, IndexMethod::NumericWinding)
        }
        n => Err(NumDegError::UnsupportedMethod { method: DegreeMethod::Winding, n }),
    }
}

fn angle_at(f: &CompiledField, r: f64, t: f64) -> f64 {
    let v = f.eval(&[r * t.cos(), r * t.sin()]);
    v[1].atan2(v[0])
}

fn wrap(d: f64) -> f64 {
    let mut d = d % (2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    } else if d <= -PI {
        d += 2.0 * PI;
    }
    d
}

/// Total turning of `V` divided by `2 pi`, refining every step whose angle
/// change reaches `pi / 2`.
fn winding_raw(f: &CompiledField, cfg: &OracleConfig) -> Result<f64, NumDegError> {
    let m = 256 * cfg.subdivision as usize;
    let r = cfg.radius;
    let mut total = 0.0;
    for i in 0..m {
        let t0 = 2.0 * PI * i as f64 / m as f64;
        let t1 = 2.0 * PI * (i + 1) as f64 / m as f64;
        let mut stack = vec![(t0, angle_at(f, r, t0), t1, angle_at(f, r, t1))];
        while let Some((a, fa, b, fb)) = stack.pop() {
            let d = wrap(fb - fa);
            if d.abs() < PI / 2.0 {
                total += d;
                continue;
            }
            if b - a < 1e-12 {
                return Err(NumDegError::ZeroOnSphere { radius: r });
            }
            let mid = 0.5 * (a + b);
            let fm = angle_at(f, r, mid);
            stack.push((mid, fm, b, fb));
            stack.push((a, fa, mid, fm));
        }
    }
    Ok(total / (2.0 * PI))
}
