use radx_core::branches::BranchError;
use radx_core::constructions::ConstructionError;
use radx_core::localdeg::LocalDegError;
use radx_core::numdeg::NumDegError;
use radx_core::radial::RadialError;

/// Failures, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable input, bad JSON, a polynomial that does not parse, or a
    /// problem whose shape does not fit the command.
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Engine(String),
    #[error("{0}")]
    NotCertified(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Engine(_) => 3,
            CliError::NotCertified(_) => 4,
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::FrameCheck(_) => CliError::Engine(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<RadialError> for CliError {
    fn from(e: RadialError) -> Self {
        match e {
            RadialError::NotCertified { .. } => CliError::NotCertified(e.to_string()),
            RadialError::Invalid(_) => CliError::Usage(e.to_string()),
            RadialError::Construction(c) => c.into(),
            _ => CliError::Engine(e.to_string()),
        }
    }
}

impl From<NumDegError> for CliError {
    fn from(e: NumDegError) -> Self {
        match e {
            NumDegError::NotCertified(_) | NumDegError::SuspectIrregularValue => CliError::NotCertified(e.to_string()),
            NumDegError::UnsupportedMethod { .. } | NumDegError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            NumDegError::ZeroOnSphere { .. } => CliError::Engine(e.to_string()),
        }
    }
}

impl From<LocalDegError> for CliError {
    fn from(e: LocalDegError) -> Self {
        CliError::Engine(e.to_string())
    }
}

impl From<BranchError> for CliError {
    fn from(e: BranchError) -> Self {
        match e {
            BranchError::NotCertified(_) => CliError::NotCertified(e.to_string()),
            BranchError::RankDrop { .. } => CliError::Engine(e.to_string()),
            BranchError::Invalid(_) => CliError::Usage(e.to_string()),
        }
    }
}
