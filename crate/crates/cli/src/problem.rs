//! Problem files: one JSON object naming the geometric setting and its data.

use radx_core::constructions::{AlphaMulti, HypersurfaceVariant, SignVector};
use radx_core::polyalg::{parse_polynomial, OneForm, Polynomial, VectorField};
use radx_core::radial::{CurveSpec, Target};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Corner,
    Hypersurface,
    Curve,
    RawField,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Corner => "corner",
            Kind::Hypersurface => "hypersurface",
            Kind::Curve => "curve",
            Kind::RawField => "raw-field",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub kind: Kind,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Coefficients `a_1, ..., a_n` of `Omega = sum a_i dx_i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<SignVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaMulti>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<HypersurfaceVariant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<Target>>,
}

/// A validated problem with every polynomial parsed.
#[derive(Clone, Debug)]
pub enum Problem {
    RawField {
        field: VectorField,
    },
    Corner {
        omega: Option<OneForm>,
        k: usize,
        epsilon: Option<Vec<SignVector>>,
        alpha: Option<AlphaMulti>,
        f: Option<Polynomial>,
    },
    Hypersurface {
        f: Polynomial,
        omega: Option<OneForm>,
        g: Option<Polynomial>,
        variant: HypersurfaceVariant,
        targets: Vec<Target>,
    },
    Curve {
        spec: CurveSpec,
        epsilon: Option<Vec<SignVector>>,
    },
}

fn parse_one(src: &str, n: usize, what: &str) -> Result<Polynomial, CliError> {
    parse_polynomial(src, n).map_err(|e| CliError::Usage(format!("{what}: {e} in {src:?}")))
}

fn parse_list(src: &[String], n: usize, what: &str) -> Result<Vec<Polynomial>, CliError> {
    src.iter().enumerate().map(|(i, s)| parse_one(s, n, &format!("{what}[{i}]"))).collect()
}

fn required<'a, T>(v: &'a Option<T>, key: &str, kind: Kind) -> Result<&'a T, CliError> {
    v.as_ref().ok_or_else(|| CliError::Usage(format!("a {} problem needs \"{key}\"", kind.as_str())))
}

fn reject(present: bool, key: &str, kind: Kind) -> Result<(), CliError> {
    if present {
        return Err(CliError::Usage(format!("\"{key}\" does not apply to a {} problem", kind.as_str())));
    }
    Ok(())
}

fn one_form(src: &[String], n: usize) -> Result<OneForm, CliError> {
    if src.len() != n {
        return Err(CliError::Usage(format!("omega needs {n} coefficients, got {}", src.len())));
    }
    OneForm::new(parse_list(src, n, "omega")?).map_err(|e| CliError::Usage(format!("omega: {e}")))
}

fn check_epsilon(eps: &Option<Vec<SignVector>>, k: usize) -> Result<(), CliError> {
    for e in eps.iter().flatten() {
        if e.len() != k {
            return Err(CliError::Usage(format!("epsilon {e} has length {}, expected {k}", e.len())));
        }
    }
    Ok(())
}

impl ProblemFile {
    pub fn validate(&self) -> Result<Problem, CliError> {
        let n = self.dimension;
        let kind = self.kind;
        if n == 0 {
            return Err(CliError::Usage("dimension must be at least 1".into()));
        }
        match kind {
            Kind::RawField => {
                for (present, key) in [
                    (self.omega.is_some(), "omega"),
                    (self.f.is_some(), "f"),
                    (self.curve.is_some(), "F"),
                    (self.g.is_some(), "g"),
                    (self.k.is_some(), "k"),
                    (self.epsilon.is_some(), "epsilon"),
                    (self.alpha.is_some(), "alpha"),
                    (self.variant.is_some(), "variant"),
                    (self.target.is_some(), "target"),
                ] {
                    reject(present, key, kind)?;
                }
                let src = required(&self.field, "field", kind)?;
                if src.len() != n {
                    return Err(CliError::Usage(format!("field needs {n} components, got {}", src.len())));
                }
                let field =
                    VectorField::new(parse_list(src, n, "field")?).map_err(|e| CliError::Usage(format!("field: {e}")))?;
                Ok(Problem::RawField { field })
            }
            Kind::Corner => {
                for (present, key) in [
                    (self.field.is_some(), "field"),
                    (self.curve.is_some(), "F"),
                    (self.g.is_some(), "g"),
                    (self.variant.is_some(), "variant"),
                    (self.target.is_some(), "target"),
                ] {
                    reject(present, key, kind)?;
                }
                let omega = self.omega.as_deref().map(|o| one_form(o, n)).transpose()?;
                if omega.is_none() && self.f.is_none() {
                    return Err(CliError::Usage("a corner problem needs \"omega\" or \"f\"".into()));
                }
                let k = *required(&self.k, "k", kind)?;
                if k > n {
                    return Err(CliError::Usage(format!("k = {k} exceeds the dimension {n}")));
                }
                check_epsilon(&self.epsilon, k)?;
                if let Some(a) = &self.alpha {
                    if a.len() != k {
                        return Err(CliError::Usage(format!("alpha {a} has {} pairs, expected {k}", a.len())));
                    }
                }
                let f = self.f.as_deref().map(|s| parse_one(s, n, "f")).transpose()?;
                Ok(Problem::Corner { omega, k, epsilon: self.epsilon.clone(), alpha: self.alpha.clone(), f })
            }
            Kind::Hypersurface => {
                for (present, key) in [
                    (self.field.is_some(), "field"),
                    (self.curve.is_some(), "F"),
                    (self.k.is_some(), "k"),
                    (self.epsilon.is_some(), "epsilon"),
                    (self.alpha.is_some(), "alpha"),
                ] {
                    reject(present, key, kind)?;
                }
                let f = parse_one(required(&self.f, "f", kind)?, n, "f")?;
                let omega = self.omega.as_deref().map(|o| one_form(o, n)).transpose()?;
                let g = match self.g.as_deref() {
                    None => None,
                    Some([one]) => Some(parse_one(one, n, "g[0]")?),
                    Some(more) => {
                        return Err(CliError::Usage(format!(
                            "a hypersurface problem takes one slicing function g, got {}",
                            more.len()
                        )))
                    }
                };
                let targets = self.target.clone().unwrap_or_else(|| Target::ALL.to_vec());
                if targets.is_empty() {
                    return Err(CliError::Usage("target list is empty".into()));
                }
                Ok(Problem::Hypersurface { f, omega, g, variant: self.variant.unwrap_or_default(), targets })
            }
            Kind::Curve => {
                for (present, key) in [
                    (self.field.is_some(), "field"),
                    (self.f.is_some(), "f"),
                    (self.k.is_some(), "k"),
                    (self.alpha.is_some(), "alpha"),
                    (self.variant.is_some(), "variant"),
                    (self.target.is_some(), "target"),
                ] {
                    reject(present, key, kind)?;
                }
                let omega = one_form(required(&self.omega, "omega", kind)?, n)?;
                let fs = parse_list(required(&self.curve, "F", kind)?, n, "F")?;
                let gs = self.g.as_deref().map(|g| parse_list(g, n, "g")).transpose()?.unwrap_or_default();
                check_epsilon(&self.epsilon, gs.len())?;
                let spec = CurveSpec { fs, gs, omega };
                spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(Problem::Curve { spec, epsilon: self.epsilon.clone() })
            }
        }
    }
}
