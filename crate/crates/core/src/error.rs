use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("truncation leakage {leakage:.3e} exceeds tolerance {tol:.1e} at dim {dim}")]
    Truncation { leakage: f64, tol: f64, dim: usize },

    #[error("degenerate state: {0}")]
    Degenerate(String),

    #[error("phase-space grid misses {mass:.3e} of the distribution; enlarge the extents")]
    Coverage { mass: f64 },

    #[error("integrator trace drift {drift:.3e}; increase the step count")]
    Integrator { drift: f64 },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
