use hog_core::euler::EulerError;
use hog_core::homology::HomologyError;
use hog_core::homotopy::HomotopyError;
use hog_core::io::IoError;
use hog_core::pagerank::PageRankError;
use hog_core::reflexive::ReflexiveError;
use hog_core::GraphError;
use thiserror::Error;

/// Failures split by exit code: the input is malformed (2) or the analysis
/// found the requested object does not exist (1).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<HomotopyError> for CliError {
    fn from(e: HomotopyError) -> Self {
        match e {
            HomotopyError::CapExceeded { .. } => CliError::Domain(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<EulerError> for CliError {
    fn from(e: EulerError) -> Self {
        match e {
            EulerError::Replay(inner) => inner.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::WrongSupport { .. } | HomologyError::Graph(_) => CliError::Input(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<PageRankError> for CliError {
    fn from(e: PageRankError) -> Self {
        match e {
            PageRankError::NoConvergence { .. } => CliError::Domain(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ReflexiveError> for CliError {
    fn from(e: ReflexiveError) -> Self {
        match e {
            ReflexiveError::Homotopy(inner) => inner.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}
