use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("term a_{index} of the {family} family does not fit in 64 bits")]
    Overflow { family: &'static str, index: u64 },

    #[error("need at least {needed} terms, got {got}")]
    TooFewTerms { needed: usize, got: usize },

    #[error("terms must be strictly increasing (violated at position {index})")]
    NotStrictlyIncreasing { index: usize },

    #[error("brute-force oracle is capped at {cap} terms, got {size}")]
    OracleCapExceeded { size: usize, cap: usize },

    #[error("convolution window {span} exceeds limit {limit}")]
    WindowExceeded { span: u64, limit: u64 },

    #[error("autocorrelation coefficient at lag {lag} is {residual} away from an integer")]
    RoundingResidual { lag: usize, residual: f64 },

    #[error("histogram backend would enumerate {pairs} differences (cap {cap})")]
    HistogramBudgetExceeded { pairs: u128, cap: u128 },

    #[error("checkpoint {checkpoint} is beyond the {len} generated terms")]
    CheckpointOutOfRange { checkpoint: usize, len: usize },

    #[error("checkpoints must be positive and strictly increasing")]
    BadCheckpoints,

    #[error("empty input")]
    EmptyInput,

    #[error("point {0} is outside [0, 1)")]
    PointOutOfRange(f64),

    #[error("family `{0}` has no exponent prediction; supply kappa")]
    NoPrediction(&'static str),

    #[error("energy {energy} is below n^2 for n = {n}")]
    InconsistentEnergy { energy: u128, n: u64 },

    #[error("quadrature needs more than {cap} panels (last tried {panels})")]
    QuadratureBudgetExceeded { panels: usize, cap: usize },

    #[error("degenerate fit: {0}")]
    DegenerateFit(&'static str),

    #[error("difference a = 0 is the diagonal case and has no divisor decomposition")]
    ZeroDifference,

    #[error("polynomial is not strictly increasing on [1, {0}]")]
    PolynomialNotIncreasing(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures caused by a size or precision budget rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::OracleCapExceeded { .. }
                | Error::WindowExceeded { .. }
                | Error::RoundingResidual { .. }
                | Error::HistogramBudgetExceeded { .. }
                | Error::QuadratureBudgetExceeded { .. }
                | Error::Overflow { .. }
        )
    }
}
