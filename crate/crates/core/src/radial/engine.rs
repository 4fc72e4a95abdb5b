use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::RadialError;
use crate::localdeg::{elk_index_with_limits, IndexValue, LocalDegError, StandardBasisLimits};
use crate::numdeg::{certified_degree, NumDegError, OracleConfig};
use crate::polyalg::VectorField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum EngineMode {
    /// Exact signature formula, falling back to the certified numeric degree
    /// when the zero is not algebraically isolated.
    #[default]
    Auto,
    Exact,
    Numeric,
}

/// How Poincare-Hopf indices are obtained.
#[derive(Clone, Copy, Debug, Default)]
pub struct Engine {
    pub mode: EngineMode,
    pub oracle: OracleConfig,
    pub limits: StandardBasisLimits,
}

/// An index with the field it belongs to and how it was obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexRecord {
    pub label: String,
    pub field: String,
    #[serde(flatten)]
    pub index: IndexValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Engine {
    pub fn with_mode(self, mode: EngineMode) -> Self {
        Engine { mode, ..self }
    }

    pub fn index(&self, label: &str, v: &VectorField) -> Result<IndexRecord, RadialError> {
        let record = |index: IndexValue, note: Option<String>| IndexRecord {
            label: label.to_string(),
            field: v.to_string(),
            index,
            note,
        };
        match self.mode {
            EngineMode::Numeric => self.numeric(label, v).map(|x| record(x, None)),
            EngineMode::Exact | EngineMode::Auto => match elk_index_with_limits(v, self.limits) {
                Ok(x) => Ok(record(x, None)),
                Err(LocalDegError::NotAlgebraicallyIsolated { reason }) if self.mode == EngineMode::Auto => {
                    let note = format!("exact engine: not algebraically isolated ({reason}); numeric degree used");
                    self.numeric(label, v).map(|x| record(x, Some(note)))
                }
                Err(LocalDegError::NotAlgebraicallyIsolated { reason }) => {
                    Err(RadialError::Isolation { label: label.into(), reason: format!("not algebraically isolated: {reason}") })
                }
                Err(e) => Err(RadialError::Engine { label: label.into(), reason: e.to_string() }),
            },
        }
    }

    fn numeric(&self, label: &str, v: &VectorField) -> Result<IndexValue, RadialError> {
        certified_degree(v, &self.oracle).map_err(|e| match e {
            NumDegError::ZeroOnSphere { radius } => RadialError::Isolation {
                label: label.into(),
                reason: format!("the field vanishes on the sphere of radius {radius}"),
            },
            NumDegError::NotCertified(m) => RadialError::NotCertified { label: label.into(), reason: m },
            NumDegError::SuspectIrregularValue => {
                RadialError::NotCertified { label: label.into(), reason: e.to_string() }
            }
            other => RadialError::Engine { label: label.into(), reason: other.to_string() },
        })
    }

    /// Indices of several labelled fields, in parallel, in input order.
    pub fn indices(&self, fields: &[(String, VectorField)]) -> Result<Vec<IndexRecord>, RadialError> {
        fields.par_iter().map(|(l, v)| self.index(l, v)).collect()
    }
}

pub(crate) fn notes_of(records: &[IndexRecord]) -> Vec<String> {
    records.iter().filter_map(|r| r.note.as_ref().map(|m| format!("{}: {m}", r.label))).collect()
}
