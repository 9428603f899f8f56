//! Second-order coherence of the subtracted output.

use crate::error::{FopaError, Result};
use crate::estimation::{EstimationConfig, Moments};
use crate::transfer::TransferCoeffs;

/// Mean photon numbers below this leave `g⁽²⁾` undefined.
pub const MEAN_FLOOR: f64 = 1e-12;

fn guard(mean: f64) -> Result<f64> {
    if mean > MEAN_FLOOR {
        Ok(mean)
    } else {
        Err(FopaError::UndefinedCorrelation { mean })
    }
}

/// `<a†²a²> / <a†a>²`
pub fn g2_a_from_moments(m: &Moments) -> Result<f64> {
    let n = guard(m.n_a)?;
    Ok(m.aa_aa / (n * n))
}

/// `<b†²b²> / <b†b>²`
pub fn g2_b_from_moments(m: &Moments) -> Result<f64> {
    let n = guard(m.n_b)?;
    Ok(m.bb_bb / (n * n))
}

/// `<a†a b†b> / (<a†a><b†b>)`
pub fn g2_ab_from_moments(m: &Moments) -> Result<f64> {
    let (na, nb) = (guard(m.n_a)?, guard(m.n_b)?);
    Ok(m.ab_ab / (na * nb))
}

pub fn g2_a(cfg: &EstimationConfig, coeffs: &TransferCoeffs) -> Result<f64> {
    g2_a_from_moments(&Moments::from_gamma(cfg, coeffs)?)
}

pub fn g2_b(cfg: &EstimationConfig, coeffs: &TransferCoeffs) -> Result<f64> {
    g2_b_from_moments(&Moments::from_gamma(cfg, coeffs)?)
}

pub fn g2_ab(cfg: &EstimationConfig, coeffs: &TransferCoeffs) -> Result<f64> {
    g2_ab_from_moments(&Moments::from_gamma(cfg, coeffs)?)
}
