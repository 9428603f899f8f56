use thiserror::Error;

/// Everything that can go wrong while evaluating a configuration.
///
/// Sweeps report these per grid point through [`FopaError::status`] rather
/// than aborting.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FopaError {
    #[error("|k0| = {k0_abs:e} is within the pole tolerance; the FOPA gain diverges here")]
    PoleProximity { k0_abs: f64 },

    #[error("graph determinant {delta_abs:e} vanishes")]
    ZeroDeterminant { delta_abs: f64 },

    #[error("no forward path from node {source_node} to node {sink_node}")]
    NoForwardPath { source_node: String, sink_node: String },

    #[error("total derivative order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("photon subtraction annihilates the state (A^-2 = {value:e})")]
    ZeroNormalization { value: f64 },

    #[error("normalisation has a non-negligible imaginary part: {re:e} + {im:e}i")]
    NonRealNormalization { re: f64, im: f64 },

    #[error("moment {label} has a non-negligible imaginary part: {re:e} + {im:e}i")]
    NonRealMoment { label: &'static str, re: f64, im: f64 },

    #[error("Fisher information is zero; the bound is infinite")]
    InfiniteBound,

    #[error("Fisher information matrix is singular (det = {det:e})")]
    SingularQfim { det: f64 },

    #[error("correlation undefined: mean photon number {mean:e} vanishes")]
    UndefinedCorrelation { mean: f64 },

    #[error("Fock cutoff {cutoff} too small: truncated tail mass {tail:e} >= {tol:e}")]
    CutoffTooSmall { cutoff: usize, tail: f64, tol: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl FopaError {
    /// Short machine-readable name, used as the status column of sweep output.
    pub fn status(&self) -> &'static str {
        match self {
            FopaError::PoleProximity { .. } => "PoleProximity",
            FopaError::ZeroDeterminant { .. } => "ZeroDeterminant",
            FopaError::NoForwardPath { .. } => "NoForwardPath",
            FopaError::OrderTooLarge { .. } => "OrderTooLarge",
            FopaError::ZeroNormalization { .. } => "ZeroNormalization",
            FopaError::NonRealNormalization { .. } => "NonRealNormalization",
            FopaError::NonRealMoment { .. } => "NonRealMoment",
            FopaError::InfiniteBound => "InfiniteBound",
            FopaError::SingularQfim { .. } => "SingularQfim",
            FopaError::UndefinedCorrelation { .. } => "UndefinedCorrelation",
            FopaError::CutoffTooSmall { .. } => "CutoffTooSmall",
            FopaError::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, FopaError>;
