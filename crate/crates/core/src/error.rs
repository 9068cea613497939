use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {residual:.3e})")]
    NonHermitian { residual: f64 },

    #[error("dimension {dim} exceeds the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("parameter {name} = {value} is outside {allowed}")]
    Domain {
        name: &'static str,
        value: f64,
        allowed: &'static str,
    },

    #[error("not a valid quantum state: {0}")]
    NotAState(String),

    #[error("not a probability distribution: {0}")]
    NotADistribution(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks that `value` lies in the closed unit interval.
pub(crate) fn unit_interval(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            allowed: "[0, 1]",
        })
    }
}

/// Checks that `value` lies in `[0, 1/2]`, the degradable regime.
pub(crate) fn degradable_regime(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=0.5).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            allowed: "[0, 1/2]",
        })
    }
}
