use thiserror::Error;

use crate::region::WiStatus;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series did not converge at x = {x} after {terms} terms")]
    NonConvergence { x: f64, terms: usize },

    #[error("invalid bracket [{a}, {b}]: endpoint signs agree")]
    InvalidBracket { a: f64, b: f64 },

    #[error("near-zero local minimum without sign change at r = {location} (possible complex zero pair)")]
    ZeroRealityViolation { location: f64 },

    #[error("zero search failed: {0}")]
    ZeroSearch(String),

    #[error("parameters (omega = {omega}, beta = {beta}) not admitted: W_i verdict {status:?}")]
    ParamsNotAdmitted {
        omega: f64,
        beta: f64,
        status: WiStatus,
    },

    #[error("root solver failed: {0}")]
    ConvergenceFailure(String),

    #[error("zero-sum root did not stabilize with {zeros} zeros")]
    TailNotConverged { zeros: usize },

    #[error("zero table too short: tail uncertainty {uncertainty:e} exceeds 10% of margin {margin:e}")]
    InsufficientZeroTable { uncertainty: f64, margin: f64 },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParams(_)
            | Error::Domain(_)
            | Error::Precondition(_)
            | Error::InvalidBracket { .. } => 2,
            Error::ParamsNotAdmitted { .. } => 3,
            _ => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
