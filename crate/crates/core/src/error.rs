use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("x-rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("geometric series with t-step 0 does not converge t-adically")]
    NonConvergentGeometric,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid size: {0}")]
    InvalidSize(String),

    /// The lattice sum did not stabilize before the radius cap.
    #[error(
        "monopole sum did not stabilize within radius {radius}; \
         coweight {ray:?} still contributes at t^{exponent}"
    )]
    NonConvergence {
        radius: i64,
        ray: Vec<Vec<i64>>,
        exponent: i64,
    },

    #[error("coweight {coweight:?} has negative t-exponent {exponent}; theory is bad")]
    NegativeExponent {
        coweight: Vec<Vec<i64>>,
        exponent: i64,
    },

    #[error("ring elements belong to different theories")]
    TheoryMismatch,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}
