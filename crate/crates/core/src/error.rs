use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed call: sizes, orders, missing data.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// `1 − σ_max(H)` too small for a solve at `r = 1`.
    #[error("near-singular Hankel operator (sigma_max = {sigma_max:.12})")]
    NearSingular { sigma_max: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The symbol lies outside the class on which scattering is one to one.
    #[error("not in one-to-one regime: {0}")]
    NotOneToOne(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
