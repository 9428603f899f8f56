//! Quantum Cramér-Rao bounds for phase estimation with a feedback-assisted
//! optical parametric amplifier (FOPA) followed by multi-photon subtraction.
//!
//! The analytic pipeline runs
//! [`transfer`] → [`gamma`] → [`estimation`] / [`correlations`];
//! [`fock`] rebuilds the same states in a truncated Fock basis as an
//! independent check, and [`verify`] bundles the cross-checks.

pub mod correlations;
pub mod error;
pub mod estimation;
pub mod fock;
pub mod gamma;
pub mod mason;
pub mod optimize;
pub mod par;
pub mod sweep;
pub mod transfer;
pub mod verify;

pub use error::{FopaError, Result};
pub use estimation::{EstimationConfig, LossConfig, Moments, QfimMatrix};
pub use gamma::{ExponentForm, GammaIndex};
pub use transfer::{FopaParams, TransferCoeffs};
