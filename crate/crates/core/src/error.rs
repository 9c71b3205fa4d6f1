use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested turning point or well does not exist in this energy region.
    #[error("region error: {0}")]
    Region(String),

    /// An intermediate quantity left the validated parameterization.
    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("singular value: {0}")]
    Singular(String),

    /// Evaluation point too close to a double pole of the Weierstrass function.
    #[error("pole: t = {t} is within {distance:e} of a lattice point")]
    Pole { t: f64, distance: f64 },

    #[error("infinite period for invariants g2 = {g2}, g3 = {g3}")]
    InfinitePeriod { g2: f64, g3: f64 },

    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepFailure { t: f64, h: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn region(msg: impl Into<String>) -> Self {
        Error::Region(msg.into())
    }
}
