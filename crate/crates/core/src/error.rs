use crate::iteration::TraceStatus;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The argument lies below the branch point `-1/e`.
    #[error("No solution in real domain.")]
    NoRealSolution { x: f64 },

    /// An argument outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Every seed in the schedule ended in a non-converged trace.
    #[error("no convergence after {attempts} seed(s); last status {status:?}")]
    NonConvergence {
        status: TraceStatus,
        attempts: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}
