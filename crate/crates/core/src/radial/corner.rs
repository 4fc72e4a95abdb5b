use num_traits::Zero;

use super::engine::{notes_of, Engine, IndexRecord};
use super::formulas::{corner_fiber_euler, corner_radial};
use super::{DeltaSign, RadialError, RadialReport, RadialValue};
use crate::constructions::{corner_field, AlphaMulti, ConstructionError, SignVector};
use crate::polyalg::{OneForm, Polynomial, PolyError};

fn check_signs(k: usize, n: usize, eps: &[SignVector]) -> Result<(), RadialError> {
    if k > n {
        return Err(RadialError::Invalid(format!("corner depth {k} exceeds dimension {n}")));
    }
    if let Some(bad) = eps.iter().find(|e| e.len() != k) {
        return Err(RadialError::Invalid(format!("sign vector {bad} has length {}, expected {k}", bad.len())));
    }
    Ok(())
}

/// Indices of all `3^k` corner fields `V(alpha)` of `omega`, in lexicographic
/// order of `alpha`. `V(1)` is computed first so that a non-isolated corner
/// fails before the remaining work.
pub fn corner_indices(omega: &OneForm, k: usize, engine: &Engine) -> Result<Vec<(AlphaMulti, IndexRecord)>, RadialError> {
    let alphas = AlphaMulti::all(k);
    let label = |a: &AlphaMulti| format!("V{a}");
    let ones = AlphaMulti::ones(k);
    engine.index(&label(&ones), &corner_field(omega, &ones)?)?;
    let fields = alphas
        .iter()
        .map(|a| Ok((label(a), corner_field(omega, a)?)))
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    let records = engine.indices(&fields)?;
    Ok(alphas.into_iter().zip(records).collect())
}

fn orthant_label(n: usize, eps: &SignVector) -> String {
    format!("R^{n}{eps}")
}

fn report(indices: Vec<(AlphaMulti, IndexRecord)>, values: Vec<RadialValue>) -> RadialReport {
    let records: Vec<IndexRecord> = indices.into_iter().map(|(_, r)| r).collect();
    RadialReport { notes: notes_of(&records), indices: records, values }
}

/// Radial index of `omega` at 0 on each orthant `R^n(eps)` with `eps` of length `k`.
pub fn radial_corner(omega: &OneForm, k: usize, eps: &[SignVector], engine: &Engine) -> Result<RadialReport, RadialError> {
    let n = omega.dim();
    check_signs(k, n, eps)?;
    let indices = corner_indices(omega, k, engine)?;
    let plain: Vec<(AlphaMulti, i64)> = indices.iter().map(|(a, r)| (a.clone(), r.index.value)).collect();
    let values = eps
        .iter()
        .map(|e| Ok(RadialValue { set: orthant_label(n, e), value: corner_radial(k, e, &plain)? }))
        .collect::<Result<Vec<_>, RadialError>>()?;
    Ok(report(indices, values))
}

/// `chi(f^{-1}(delta) cap B cap R^n(eps))` from the corner fields of `df`.
pub fn euler_corner_fiber(
    f: &Polynomial,
    k: usize,
    eps: &[SignVector],
    delta: DeltaSign,
    engine: &Engine,
) -> Result<RadialReport, RadialError> {
    let n = f.nvars();
    check_signs(k, n, eps)?;
    if !f.constant_term().is_zero() {
        return Err(RadialError::Invalid("f must vanish at the origin".into()));
    }
    let indices = corner_indices(&OneForm::differential(f), k, engine)?;
    let plain: Vec<(AlphaMulti, i64)> = indices.iter().map(|(a, r)| (a.clone(), r.index.value)).collect();
    let values = eps
        .iter()
        .map(|e| {
            Ok(RadialValue {
                set: format!("chi(f={}delta, {})", delta.as_str(), orthant_label(n, e)),
                value: corner_fiber_euler(n, k, e, &plain, delta)?,
            })
        })
        .collect::<Result<Vec<_>, RadialError>>()?;
    Ok(report(indices, values))
}

/// The form induced on the hyperplane `x_j = 0` (0-based `j`), in the
/// remaining `n - 1` coordinates.
pub fn restrict_to_hyperplane(omega: &OneForm, j: usize) -> Result<OneForm, PolyError> {
    let n = omega.dim();
    if j >= n || n < 2 {
        return Err(PolyError::DimensionMismatch { expected: n.max(2) - 1, found: j });
    }
    let subs: Vec<Polynomial> = (0..n)
        .map(|i| match i.cmp(&j) {
            std::cmp::Ordering::Less => Polynomial::var(n - 1, i),
            std::cmp::Ordering::Equal => Polynomial::zero(n - 1),
            std::cmp::Ordering::Greater => Polynomial::var(n - 1, i - 1),
        })
        .collect();
    let coeffs = omega
        .coefficients()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != j)
        .map(|(_, a)| a.compose(&subs))
        .collect::<Result<Vec<_>, _>>()?;
    OneForm::new(coeffs)
}
