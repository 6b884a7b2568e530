use std::path::PathBuf;

use rsp_core::graph::Violation;
use rsp_core::RspError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Violation>),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Solver(#[from] RspError),

    /// A solver finished but its answer failed a check that its assumptions guarantee.
    #[error("assumption violated: {0}")]
    Assumption(String),

    #[error("algorithms disagree: {0}")]
    Disagreement(String),
}

impl CliError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse { line, message: message.into() }
    }

    /// 0 ok, 1 unreadable or malformed input, 2 invalid graph or arguments,
    /// 3 no proper policy, 4 assumption violated, 5 policy cap, 6 disagreement.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 1,
            CliError::Invalid(_) | CliError::Usage(_) => 2,
            CliError::Assumption(_) => 4,
            CliError::Disagreement(_) => 6,
            CliError::Solver(e) => match e {
                RspError::InvalidGraph(_)
                | RspError::InvalidPolicy(_)
                | RspError::InvalidParameter(_)
                | RspError::InvalidSchedule(_)
                | RspError::InvalidGrid(_)
                | RspError::NonFiniteStart => 2,
                RspError::NoProperPolicy { .. }
                | RspError::UnreachableNode { .. }
                | RspError::PrematureExhaustion { .. }
                | RspError::EmptyCandidateSet
                | RspError::NotForcible { .. } => 3,
                RspError::PolicyCapExceeded { .. } => 5,
                _ => 4,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
