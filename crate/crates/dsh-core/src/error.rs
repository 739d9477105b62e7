use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DshError {
    #[error("pole of {func} at {at}")]
    Pole { func: &'static str, at: String },

    #[error("light-cone domain violation: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("{what} did not converge after {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quadrature failed on {label} over [{a}, {b}]: estimated error {err:e}")]
    Quadrature {
        label: String,
        a: f64,
        b: f64,
        err: f64,
    },
}

pub type Result<T> = std::result::Result<T, DshError>;
