use crate::models::{ModelTag, State};

/// Errors produced by the solvers, the limit harness and the finite-volume checker.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("operation not supported for the {0:?} model")]
    UnsupportedModel(ModelTag),

    #[error("accuracy not reached after {iterations} refinements (best estimate {best})")]
    AccuracyNotReached { best: f64, iterations: usize },

    #[error("no sign change on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("root not converged after {iterations} iterations; best bracket [{lo}, {hi}]")]
    RootNotConverged { lo: f64, hi: f64, iterations: usize },

    #[error("no root in the representable range (last probe {last})")]
    NoRootInRange { last: f64 },

    #[error("equal densities: shock speed undefined")]
    DegenerateShock,

    #[error("internal numerical error: {0}")]
    Internal(String),

    #[error("intermediate state hit the density floor near {state:?}")]
    NumericalLimit { state: State },

    #[error("solution contains no delta shock")]
    NoDeltaShock,

    #[error("not a delta-shock case: {0}")]
    NotDeltaCase(String),

    #[error("schedule error at point {index} (A={a}, B={b}): {reason}")]
    Schedule {
        index: usize,
        a: f64,
        b: f64,
        reason: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain too small: {0}")]
    DomainTooSmall(String),

    #[error("negative density {rho} in cell {cell} at t={time}")]
    Positivity { cell: usize, rho: f64, time: f64 },

    #[error("unsupported comparison: {0}")]
    UnsupportedComparison(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::InvalidParams(_)
                | Error::UnsupportedModel(_)
                | Error::NotDeltaCase(_)
                | Error::Schedule { .. }
                | Error::Precondition(_)
                | Error::DomainTooSmall(_)
                | Error::UnsupportedComparison(_)
                | Error::NoDeltaShock
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
