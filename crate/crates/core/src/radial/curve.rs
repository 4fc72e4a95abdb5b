use num_traits::Zero;

use super::engine::{notes_of, Engine};
use super::formulas::{curve_sign_conditions, curve_zero_set};
use super::{RadialError, RadialReport, RadialValue};
use crate::branches::BranchReport;
use crate::constructions::{curve_differential_field, curve_field, curve_minor, product_powers, SignVector};
use crate::polyalg::{OneForm, Polynomial};

/// A curve germ `F^{-1}(0)` in `R^n`, optional sign conditions `g_1, ..., g_k`
/// and a 1-form.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub fs: Vec<Polynomial>,
    pub gs: Vec<Polynomial>,
    pub omega: OneForm,
}

impl CurveSpec {
    pub fn validate(&self) -> Result<(), RadialError> {
        let n = self.omega.dim();
        if n < 2 {
            return Err(RadialError::Invalid("curves need at least two variables".into()));
        }
        if self.fs.len() != n - 1 {
            return Err(RadialError::Invalid(format!("a curve in R^{n} needs {} equations, got {}", n - 1, self.fs.len())));
        }
        for (name, p) in self.fs.iter().map(|p| ("F", p)).chain(self.gs.iter().map(|p| ("g", p))) {
            if p.nvars() != n {
                return Err(RadialError::Invalid(format!("{name} has {} variables, expected {n}", p.nvars())));
            }
        }
        if let Some(i) = self.fs.iter().position(|p| !p.constant_term().is_zero()) {
            return Err(RadialError::Invalid(format!("F_{} does not vanish at the origin", i + 1)));
        }
        Ok(())
    }
}

fn set_label(eps: &SignVector) -> String {
    if eps.is_empty() {
        return "F^-1(0)".into();
    }
    let conds: Vec<String> = eps
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &e)| format!("g{}{}0", i + 1, if e == 0 { ">=" } else { "<=" }))
        .collect();
    format!("F^-1(0) cap {{{}}}", conds.join(", "))
}

fn selector(alpha: &[u8]) -> String {
    alpha.iter().map(u8::to_string).collect()
}

/// Radial index of `omega` on `C(eps) = F^{-1}(0) cap {(-1)^{eps_i} g_i >= 0}`
/// for each `eps` (of length `k = gs.len()`).
pub fn radial_curve(spec: &CurveSpec, eps: &[SignVector], engine: &Engine) -> Result<RadialReport, RadialError> {
    spec.validate()?;
    let k = spec.gs.len();
    if let Some(bad) = eps.iter().find(|e| e.len() != k) {
        return Err(RadialError::Invalid(format!("sign vector {bad} has length {}, expected {k}", bad.len())));
    }
    let n = spec.omega.dim();
    let fs = &spec.fs;
    // I = V(d rho) has an isolated zero exactly when 0 is isolated in the
    // rank-deficiency locus of F on F^{-1}(0); it goes first.
    let i_field = curve_differential_field(&Polynomial::rho(n), fs)?;
    let i_rec = engine.index("I", &i_field)?;
    let m = curve_minor(spec.omega.coefficients(), fs)?;

    let alphas: Vec<Vec<u8>> = SignVector::all(k).into_iter().map(|s| s.entries().to_vec()).collect();
    let mut fields = Vec::new();
    if k > 0 {
        let ones = vec![1u8; k];
        let w1 = curve_field(&m * &product_powers(&spec.gs, &ones)?, fs)?;
        engine.index(&format!("W(Omega,{})", selector(&ones)), &w1)?;
    }
    for a in &alphas {
        let p = product_powers(&spec.gs, a)?;
        if a.iter().all(|&x| x == 0) {
            fields.push(("V(Omega)".to_string(), curve_field(m.clone(), fs)?));
        } else {
            fields.push((format!("W(Omega,{})", selector(a)), curve_field(&m * &p, fs)?));
            fields.push((format!("V({})", selector(a)), curve_differential_field(&p, fs)?));
        }
    }
    let mut records = vec![i_rec];
    records.extend(engine.indices(&fields)?);
    let find = |label: &str| records.iter().find(|r| r.label == label).map(|r| r.index.value).expect("computed above");
    let terms: Vec<(Vec<u8>, i64, i64)> = alphas
        .iter()
        .map(|a| {
            if a.iter().all(|&x| x == 0) {
                (a.clone(), find("V(Omega)"), find("I"))
            } else {
                let s = selector(a);
                (a.clone(), find(&format!("W(Omega,{s})")), find(&format!("V({s})")))
            }
        })
        .collect();
    let values = eps
        .iter()
        .map(|e| {
            let value = if k == 0 { curve_zero_set(find("V(Omega)"), find("I")) } else { curve_sign_conditions(e, &terms)? };
            Ok(RadialValue { set: set_label(e), value })
        })
        .collect::<Result<Vec<_>, RadialError>>()?;
    Ok(RadialReport { notes: notes_of(&records), indices: records, values })
}

/// `1 - #inbound` over the half-branches of a certified trace.
pub fn radial_from_branches(report: &BranchReport) -> Result<i64, RadialError> {
    radial_from_branches_on(report, &SignVector::zeros(0))
}

/// `1 - #inbound` over the half-branches lying in `C(eps)`; `eps` indexes
/// the sign columns recorded by the trace.
pub fn radial_from_branches_on(report: &BranchReport, eps: &SignVector) -> Result<i64, RadialError> {
    if !report.certified {
        return Err(RadialError::Invalid("branch report is not certified".into()));
    }
    let mut inbound = 0i64;
    for p in &report.points {
        if p.signs.len() < eps.len() {
            return Err(RadialError::Invalid(format!("branch point carries {} signs, {} needed", p.signs.len(), eps.len())));
        }
        let inside = eps.entries().iter().zip(&p.signs).all(|(&e, &s)| (e == 0) == (s > 0));
        match p.inbound {
            Some(true) if inside => inbound += 1,
            Some(_) => {}
            None => return Err(RadialError::Invalid("branch report has no inbound classification".into())),
        }
    }
    Ok(1 - inbound)
}
