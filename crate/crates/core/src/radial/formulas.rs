//! Closed formulas on integer indices. Every halving is checked for
//! exactness.

use super::{DeltaSign, RadialError, Target};
use crate::constructions::{AlphaMulti, SignVector};

pub(crate) fn exact_div(num: i64, den: i64, formula: &'static str) -> Result<i64, RadialError> {
    if num % den != 0 {
        return Err(RadialError::NotIntegral { formula, numerator: num, denominator: den });
    }
    Ok(num / den)
}

fn parity(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `s^e` for a sign `s`.
fn sign_pow(s: i64, e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        s
    }
}

fn check_corner(k: usize, eps: &SignVector, indices: &[(AlphaMulti, i64)]) -> Result<(), RadialError> {
    if eps.len() != k || indices.len() != 3usize.pow(k as u32) || indices.iter().any(|(a, _)| a.len() != k) {
        return Err(RadialError::Invalid(format!("corner data must have depth {k} and 3^{k} indices")));
    }
    Ok(())
}

/// Radial index on the orthant `R^n(eps)`:
/// `2^{-k} (-1)^{|eps|} sum_alpha (-1)^{[eps . alpha]} Ind V(alpha)`.
pub fn corner_radial(k: usize, eps: &SignVector, indices: &[(AlphaMulti, i64)]) -> Result<i64, RadialError> {
    check_corner(k, eps, indices)?;
    let sum: i64 = indices.iter().map(|(a, v)| parity(a.pairing(eps)) * v).sum();
    exact_div(parity(eps.weight()) * sum, 1 << k, "corner")
}

/// Euler characteristic of the Milnor fibre piece `f^{-1}(delta) cap B cap R^n(eps)`
/// from the indices of the corner fields of `grad f`.
pub fn corner_fiber_euler(
    n: usize,
    k: usize,
    eps: &SignVector,
    grad_indices: &[(AlphaMulti, i64)],
    delta: DeltaSign,
) -> Result<i64, RadialError> {
    check_corner(k, eps, grad_indices)?;
    let s = -delta.sign();
    let (mut even, mut odd) = (0i64, 0i64);
    for (a, v) in grad_indices {
        let t = parity(a.pairing(eps)) * v;
        if a.beta_weight() % 2 == 0 {
            even += t;
        } else {
            odd += t;
        }
    }
    let bracket = sign_pow(s, n - k) * even + sign_pow(s, n - k + 1) * odd;
    Ok(1 - exact_div(parity(eps.weight()) * bracket, 1 << k, "corner fibre")?)
}

/// `chi(f^{-1}(delta) cap B) = 1 - sign(-delta)^n Ind grad f`.
pub fn khimshiashvili_euler(n: usize, ind_grad_f: i64, delta: DeltaSign) -> i64 {
    1 - sign_pow(-delta.sign(), n) * ind_grad_f
}

/// `chi({f >= delta} cap B) - chi({f <= delta} cap B) = sign(-delta)^{n-1} Ind grad f`.
pub fn euler_halfspace_difference(n: usize, ind_grad_f: i64, delta: DeltaSign) -> i64 {
    sign_pow(-delta.sign(), n - 1) * ind_grad_f
}

/// Indices entering the hypersurface formulas. Entries a formula does not
/// use may be `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HypersurfaceIndices {
    pub grad_f: Option<i64>,
    pub v_omega: Option<i64>,
    pub w: Option<i64>,
    pub y: Option<i64>,
}

fn need(v: Option<i64>, name: &str) -> Result<i64, RadialError> {
    v.ok_or_else(|| RadialError::Invalid(format!("index of {name} is required")))
}

/// Frame on `grad f`.
pub fn hypersurface_grad_p(target: Target, ix: &HypersurfaceIndices) -> Result<i64, RadialError> {
    let g = need(ix.grad_f, "grad f")?;
    let w = need(ix.w, "W")?;
    match target {
        Target::ZeroSet => Ok(g + w),
        Target::NonNeg | Target::NonPos => {
            let v = need(ix.v_omega, "V(Omega)")?;
            let y = need(ix.y, "Y")?;
            let y = if target == Target::NonNeg { y } else { -y };
            exact_div(v + w + g + y, 2, "half-space (frame on grad f)")
        }
    }
}

/// Frame on `V(Omega)`. For even `n` the `{f <= 0}` value is
/// `(V + grad f - W + Y) / 2`, the one compatible with the sum
/// `V - W + grad f` and the difference `-Y` of the two half-space indices.
pub fn hypersurface_form_p(n: usize, target: Target, ix: &HypersurfaceIndices) -> Result<i64, RadialError> {
    let even = n % 2 == 0;
    match target {
        Target::ZeroSet if even => Ok(need(ix.grad_f, "grad f")? - need(ix.w, "W")?),
        Target::ZeroSet => need(ix.y, "Y"),
        _ => {
            let g = need(ix.grad_f, "grad f")?;
            let w = need(ix.w, "W")?;
            let y = need(ix.y, "Y")?;
            let t = if target == Target::NonNeg { 1 } else { -1 };
            let num = if even { need(ix.v_omega, "V(Omega)")? - w + g - t * y } else { y + t * (w - g) };
            exact_div(num, 2, "half-space (frame on V(Omega))")
        }
    }
}

/// Indices entering the level-slice Euler characteristics: the hypersurface
/// fields built from `Omega = dg`, plus `Ind grad g`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SliceIndices {
    pub grad_f: Option<i64>,
    pub grad_g: Option<i64>,
    pub w: Option<i64>,
    pub y: Option<i64>,
}

/// `chi(X cap g^{-1}(delta) cap B)` for `X` one of `f^{-1}(0)`, `{f >= 0}`,
/// `{f <= 0}`, with the frame on `grad f` (`frame_on_grad`) or on `grad g`.
pub fn euler_slice(
    n: usize,
    frame_on_grad: bool,
    target: Target,
    ix: &SliceIndices,
    delta: DeltaSign,
) -> Result<i64, RadialError> {
    let s = delta.sign();
    let even = n % 2 == 0;
    let w = need(ix.w, "W(f,dg)")?;
    match (frame_on_grad, target) {
        (true, Target::ZeroSet) if even => Ok(1 - need(ix.grad_f, "grad f")? + s * w),
        (true, Target::ZeroSet) => Ok(1 - w),
        (false, Target::ZeroSet) if even => Ok(1 - need(ix.grad_f, "grad f")? - s * w),
        (false, Target::ZeroSet) => Ok(1 - need(ix.y, "Y(f,dg)")?),
        (_, half) => {
            let t = if half == Target::NonNeg { 1 } else { -1 };
            let f = need(ix.grad_f, "grad f")?;
            let y = need(ix.y, "Y(f,dg)")?;
            // Twice the value, then halved exactly.
            let twice = if frame_on_grad {
                let g = need(ix.grad_g, "grad g")?;
                if even {
                    // Both halves carry +sW: rescaling dg by sign(-delta) flips W and fixes Y.
                    2 - (g + f + t * y) + s * w
                } else {
                    2 + s * (g + t * y) - w
                }
            } else if even {
                let g = need(ix.grad_g, "grad g")?;
                2 - (f + g - t * y) - s * w
            } else {
                2 - (-t * f + y) + t * s * w
            };
            exact_div(twice, 2, "level slice of a half-space")
        }
    }
}

/// Radial index of `Omega` on `F^{-1}(0)`: `1 + Ind V(Omega) - Ind I`.
pub fn curve_zero_set(v_omega: i64, i: i64) -> i64 {
    1 + v_omega - i
}

/// Radial index on `C(eps)`:
/// `1 + 2^{-k} sum_alpha (-1)^{eps . alpha} [Ind W(Omega, alpha) - Ind V(alpha)]`,
/// with `terms[alpha] = (alpha, Ind W(Omega, alpha), Ind V(alpha))`. For
/// `k = 1` these are the two half-curve formulas.
pub fn curve_sign_conditions(eps: &SignVector, terms: &[(Vec<u8>, i64, i64)]) -> Result<i64, RadialError> {
    let k = eps.len();
    if terms.len() != 1 << k || terms.iter().any(|(a, _, _)| a.len() != k) {
        return Err(RadialError::Invalid(format!("curve data must have 2^{k} terms of length {k}")));
    }
    let sum: i64 = terms.iter().map(|(a, w, v)| parity(eps.dot(a)) * (w - v)).sum();
    Ok(1 + exact_div(sum, 1 << k, "curve sign conditions")?)
}

/// Radial index of a form on a curve from its half-branches.
pub fn from_inbound(inbound: usize) -> i64 {
    1 - inbound as i64
}
