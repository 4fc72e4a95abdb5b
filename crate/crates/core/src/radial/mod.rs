//! Radial indices of 1-forms on orthants, hypersurfaces and curves, and the
//! Euler characteristics they determine, computed from Poincare-Hopf indices
//! of derived vector fields.

mod corner;
mod curve;
mod engine;
pub mod formulas;
mod hypersurface;

#[cfg(test)]
mod proptests;

use serde::{Deserialize, Serialize};

use crate::constructions::ConstructionError;

pub use corner::{corner_indices, euler_corner_fiber, radial_corner, restrict_to_hyperplane};
pub use curve::{radial_curve, radial_from_branches, radial_from_branches_on, CurveSpec};
pub use engine::{Engine, EngineMode, IndexRecord};
pub use hypersurface::{euler_fiber, euler_halfspace, euler_slice, radial_hypersurface};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RadialError {
    #[error("{label} does not have an isolated zero at the origin: {reason}")]
    Isolation { label: String, reason: String },
    #[error("index of {label} not certified: {reason}")]
    NotCertified { label: String, reason: String },
    #[error("index of {label} failed: {reason}")]
    Engine { label: String, reason: String },
    #[error("{formula} formula produced {numerator}/{denominator}, which is not an integer")]
    NotIntegral { formula: &'static str, numerator: i64, denominator: i64 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Sign of the small regular value `delta`; only its sign enters the formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeltaSign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl DeltaSign {
    pub fn sign(self) -> i64 {
        match self {
            DeltaSign::Positive => 1,
            DeltaSign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            DeltaSign::Positive => DeltaSign::Negative,
            DeltaSign::Negative => DeltaSign::Positive,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DeltaSign::Positive => "+",
            DeltaSign::Negative => "-",
        }
    }
}

impl std::str::FromStr for DeltaSign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "+" | "positive" | "pos" => Ok(DeltaSign::Positive),
            "-" | "negative" | "neg" => Ok(DeltaSign::Negative),
            other => Err(format!("delta sign must be + or -, got {other:?}")),
        }
    }
}

/// Which piece of a hypersurface germ the index or Euler characteristic refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "zero-set")]
    ZeroSet,
    #[serde(rename = "f-nonneg")]
    NonNeg,
    #[serde(rename = "f-nonpos")]
    NonPos,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::ZeroSet, Target::NonNeg, Target::NonPos];

    pub fn as_str(self) -> &'static str {
        match self {
            Target::ZeroSet => "zero-set",
            Target::NonNeg => "f-nonneg",
            Target::NonPos => "f-nonpos",
        }
    }

    pub fn set_label(self) -> &'static str {
        match self {
            Target::ZeroSet => "f^-1(0)",
            Target::NonNeg => "{f>=0}",
            Target::NonPos => "{f<=0}",
        }
    }
}

impl std::str::FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "zero-set" => Ok(Target::ZeroSet),
            "f-nonneg" => Ok(Target::NonNeg),
            "f-nonpos" => Ok(Target::NonPos),
            other => Err(format!("unknown target {other:?}")),
        }
    }
}

/// One computed value, labelled by the set (or Euler characteristic) it describes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadialValue {
    pub set: String,
    pub value: i64,
}

/// Values together with every index used to obtain them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct RadialReport {
    pub indices: Vec<IndexRecord>,
    pub values: Vec<RadialValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RadialReport {
    pub fn value(&self, set: &str) -> Option<i64> {
        self.values.iter().find(|v| v.set == set).map(|v| v.value)
    }

    pub fn index(&self, label: &str) -> Option<i64> {
        self.indices.iter().find(|r| r.label == label).map(|r| r.index.value)
    }
}
