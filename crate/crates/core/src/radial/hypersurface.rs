use num_traits::Zero;

use super::engine::{notes_of, Engine, IndexRecord};
use super::formulas::{self, HypersurfaceIndices, SliceIndices};
use super::{DeltaSign, RadialError, RadialReport, RadialValue, Target};
use crate::constructions::{hypersurface_fields, HypersurfaceFields, HypersurfaceVariant};
use crate::polyalg::{OneForm, Polynomial, VectorField};

fn check_function(f: &Polynomial, n: usize) -> Result<(), RadialError> {
    if f.nvars() != n {
        return Err(RadialError::Invalid(format!("f has {} variables, the form {n}", f.nvars())));
    }
    if !f.constant_term().is_zero() {
        return Err(RadialError::Invalid("f must vanish at the origin".into()));
    }
    Ok(())
}

fn frame_note(h: &HypersurfaceFields) -> String {
    let on = match h.variant {
        HypersurfaceVariant::GradP => "grad f",
        HypersurfaceVariant::FormP => "V(Omega)",
    };
    format!("frame: {} on {on}", h.frame.kind().as_str())
}

/// Which of the hypersurface fields a set of targets needs.
#[derive(Default)]
struct Needs {
    v_omega: bool,
    w: bool,
    y: bool,
}

fn collect(
    engine: &Engine,
    grad_f: &VectorField,
    h: &HypersurfaceFields,
    needs: &Needs,
    omega_label: &str,
) -> Result<Vec<IndexRecord>, RadialError> {
    // grad f first: its isolation is a standing hypothesis.
    let mut records = vec![engine.index("grad f", grad_f)?];
    let mut fields = Vec::new();
    if needs.v_omega {
        fields.push((omega_label.to_string(), h.v_omega.clone()));
    }
    if needs.w {
        fields.push(("W".to_string(), h.w.clone()));
    }
    if needs.y {
        fields.push(("Y".to_string(), h.y.clone()));
    }
    records.extend(engine.indices(&fields)?);
    Ok(records)
}

fn lookup(records: &[IndexRecord], label: &str) -> Option<i64> {
    records.iter().find(|r| r.label == label).map(|r| r.index.value)
}

fn finish(records: Vec<IndexRecord>, values: Vec<RadialValue>, h: &HypersurfaceFields) -> RadialReport {
    let mut notes = vec![frame_note(h)];
    notes.extend(notes_of(&records));
    RadialReport { indices: records, values, notes }
}

/// Radial index of `omega` on `f^{-1}(0)`, `{f >= 0}` or `{f <= 0}`.
pub fn radial_hypersurface(
    f: &Polynomial,
    omega: &OneForm,
    variant: HypersurfaceVariant,
    targets: &[Target],
    engine: &Engine,
) -> Result<RadialReport, RadialError> {
    let n = omega.dim();
    check_function(f, n)?;
    let h = hypersurface_fields(f, omega, variant)?;
    let even = n % 2 == 0;
    let half = targets.iter().any(|t| *t != Target::ZeroSet);
    let needs = match variant {
        HypersurfaceVariant::GradP => Needs { v_omega: half, w: true, y: half },
        HypersurfaceVariant::FormP => Needs { v_omega: half && even, w: half || even, y: half || !even },
    };
    let records = collect(engine, &h.grad_f, &h, &needs, "V(Omega)")?;
    let ix = HypersurfaceIndices {
        grad_f: lookup(&records, "grad f"),
        v_omega: lookup(&records, "V(Omega)"),
        w: lookup(&records, "W"),
        y: lookup(&records, "Y"),
    };
    let values = targets
        .iter()
        .map(|&t| {
            let value = match variant {
                HypersurfaceVariant::GradP => formulas::hypersurface_grad_p(t, &ix)?,
                HypersurfaceVariant::FormP => formulas::hypersurface_form_p(n, t, &ix)?,
            };
            Ok(RadialValue { set: t.set_label().to_string(), value })
        })
        .collect::<Result<Vec<_>, RadialError>>()?;
    Ok(finish(records, values, &h))
}

fn grad_report(f: &Polynomial, engine: &Engine, set: String, value: impl Fn(i64) -> i64) -> Result<RadialReport, RadialError> {
    if !f.constant_term().is_zero() {
        return Err(RadialError::Invalid("f must vanish at the origin".into()));
    }
    let r = engine.index("grad f", &VectorField::gradient(f))?;
    let v = value(r.index.value);
    let records = vec![r];
    Ok(RadialReport { notes: notes_of(&records), indices: records, values: vec![RadialValue { set, value: v }] })
}

/// `chi(f^{-1}(delta) cap B)` from `Ind grad f`.
pub fn euler_fiber(f: &Polynomial, delta: DeltaSign, engine: &Engine) -> Result<RadialReport, RadialError> {
    let n = f.nvars();
    grad_report(f, engine, format!("chi(f={}delta)", delta.as_str()), |i| formulas::khimshiashvili_euler(n, i, delta))
}

/// `chi({f >= delta} cap B) - chi({f <= delta} cap B)` from `Ind grad f`.
pub fn euler_halfspace(f: &Polynomial, delta: DeltaSign, engine: &Engine) -> Result<RadialReport, RadialError> {
    let n = f.nvars();
    let d = delta.as_str();
    grad_report(f, engine, format!("chi(f>={d}delta) - chi(f<={d}delta)"), |i| {
        formulas::euler_halfspace_difference(n, i, delta)
    })
}

/// `chi(X cap g^{-1}(delta) cap B)` for `X` among the `targets`, with the
/// frame on `grad f` (grad-P) or on `grad g` (form-P).
pub fn euler_slice(
    f: &Polynomial,
    g: &Polynomial,
    variant: HypersurfaceVariant,
    targets: &[Target],
    delta: DeltaSign,
    engine: &Engine,
) -> Result<RadialReport, RadialError> {
    let n = f.nvars();
    check_function(f, n)?;
    check_function(g, n)?;
    let h = hypersurface_fields(f, &OneForm::differential(g), variant)?;
    let even = n % 2 == 0;
    let half = targets.iter().any(|t| *t != Target::ZeroSet);
    let grad_p = variant == HypersurfaceVariant::GradP;
    let needs = Needs {
        v_omega: half && (grad_p || even),
        w: grad_p || even || half,
        y: half || (!grad_p && !even),
    };
    let records = collect(engine, &h.grad_f, &h, &needs, "grad g")?;
    let ix = SliceIndices {
        grad_f: lookup(&records, "grad f"),
        grad_g: lookup(&records, "grad g"),
        w: lookup(&records, "W"),
        y: lookup(&records, "Y"),
    };
    let d = delta.as_str();
    let values = targets
        .iter()
        .map(|&t| {
            Ok(RadialValue {
                set: format!("chi({} cap g={d}delta)", t.set_label()),
                value: formulas::euler_slice(n, grad_p, t, &ix, delta)?,
            })
        })
        .collect::<Result<Vec<_>, RadialError>>()?;
    Ok(finish(records, values, &h))
}
