//! Quantum Fisher information and Cramér-Rao bounds for one and two phases,
//! without loss and under photon loss.
//!
//! Everything here is a function of five normal-ordered moments of the
//! photon-subtracted state (see [`Moments`]); phase values never enter
//! because the bounds of a phase-encoding family are phase independent.
//!
//! Loss is handled with the phase-dependent Kraus family of a beam-splitter
//! channel. For transmission `η` and variational parameter `λ`,
//!
//! ```text
//! μ = 1 - (1-η)(1+λ)        γ = η(1-η)(1+λ)²
//! C_jj = 4[μ_j² Var(n_j) + γ_j <n_j>]     C_ab = 4 μ_a μ_b Cov(n_a, n_b)
//! ```
//!
//! Every `C(λ)` dominates the true lossy Fisher matrix. The single-phase
//! bound minimises `C_aa` over `λ`; the two-phase bound maximises
//! `Tr C(λ)⁻¹`. Both optima lie in `μ ∈ [0, 1]`, i.e.
//! `λ ∈ [-1, η/(1-η)]`, which is the interval searched.

use num_complex::Complex64;

use crate::error::{FopaError, Result};
use crate::gamma::{normalization, real_part, ExponentForm, GammaContext, GammaIndex};
use crate::optimize::{grid_then_golden_max, Maximum};
use crate::transfer::TransferCoeffs;

/// Coarse grid size of the `λ` search.
pub const LAMBDA_GRID_POINTS: usize = 201;

/// Final bracket width of the golden-section refinement (in `μ`).
pub const LAMBDA_TOLERANCE: f64 = 1e-10;

/// Determinants below this fraction of `F_aa·F_bb` are singular.
pub const SINGULAR_RELATIVE: f64 = 1e-14;

/// Largest subtraction order sum keeping every moment within the Γ order bound.
pub const MAX_SUBTRACTION: u32 = 10;

/// Subtraction orders, coherent amplitude and repetition count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimationConfig {
    pub m: u32,
    pub n: u32,
    pub alpha: Complex64,
    pub v: u32,
}

impl EstimationConfig {
    pub fn new(m: u32, n: u32, alpha: Complex64) -> Result<Self> {
        Self::with_repetitions(m, n, alpha, 1)
    }

    pub fn real(m: u32, n: u32, alpha: f64) -> Result<Self> {
        Self::new(m, n, Complex64::new(alpha, 0.0))
    }

    pub fn with_repetitions(m: u32, n: u32, alpha: Complex64, v: u32) -> Result<Self> {
        if v == 0 {
            return Err(FopaError::InvalidParameter("number of measurements v must be >= 1".into()));
        }
        if m + n > MAX_SUBTRACTION {
            return Err(FopaError::InvalidParameter(format!(
                "m + n = {} exceeds the supported maximum {MAX_SUBTRACTION}",
                m + n
            )));
        }
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(FopaError::InvalidParameter("coherent amplitude must be finite".into()));
        }
        Ok(Self { m, n, alpha, v })
    }
}

/// Loss on a single mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeLoss {
    pub eta: f64,
    pub lambda: f64,
}

impl ModeLoss {
    pub fn new(eta: f64, lambda: f64) -> Result<Self> {
        check_eta(eta)?;
        if !lambda.is_finite() {
            return Err(FopaError::InvalidParameter("λ must be finite".into()));
        }
        Ok(Self { eta, lambda })
    }

    /// Loss given by a fictitious beam splitter of angle `θ`, `η = cos²θ`.
    pub fn from_beam_splitter_angle(theta: f64, lambda: f64) -> Result<Self> {
        Self::new(theta.cos().powi(2), lambda)
    }

    pub fn lossless() -> Self {
        Self { eta: 1.0, lambda: 0.0 }
    }

    pub fn mu(&self) -> f64 {
        1.0 - (1.0 - self.eta) * (1.0 + self.lambda)
    }

    pub fn gamma(&self) -> f64 {
        self.eta * (1.0 - self.eta) * (1.0 + self.lambda).powi(2)
    }
}

/// Per-mode loss; the figures use `η_a = η_b`, `λ_a = λ_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossConfig {
    pub a: ModeLoss,
    pub b: ModeLoss,
}

impl LossConfig {
    pub fn uniform(eta: f64, lambda: f64) -> Result<Self> {
        let mode = ModeLoss::new(eta, lambda)?;
        Ok(Self { a: mode, b: mode })
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(FopaError::InvalidParameter(format!("transmission η = {eta} outside [0, 1]")));
    }
    Ok(())
}

/// `λ` corresponding to `μ` at transmission `η < 1`.
fn lambda_for_mu(mu: f64, eta: f64) -> f64 {
    (1.0 - mu) / (1.0 - eta) - 1.0
}

/// 2×2 real symmetric Fisher-information matrix over `(φ_a, φ_b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfimMatrix {
    pub aa: f64,
    pub ab: f64,
    pub ba: f64,
    pub bb: f64,
}

impl QfimMatrix {
    pub fn symmetric(aa: f64, ab: f64, bb: f64) -> Self {
        Self { aa, ab, ba: ab, bb }
    }

    pub fn determinant(&self) -> f64 {
        self.aa * self.bb - self.ab * self.ba
    }

    /// `Tr F⁻¹ = (F_aa + F_bb) / det F`.
    pub fn inverse_trace(&self) -> Result<f64> {
        let det = self.determinant();
        let scale = (self.aa * self.bb).abs();
        if !(det > SINGULAR_RELATIVE * scale) || det <= 0.0 {
            return Err(FopaError::SingularQfim { det });
        }
        Ok((self.aa + self.bb) / det)
    }

    pub fn max_abs_diff(&self, other: &QfimMatrix) -> f64 {
        [self.aa - other.aa, self.ab - other.ab, self.ba - other.ba, self.bb - other.bb]
            .iter()
            .fold(0.0, |m, d| m.max(d.abs()))
    }
}

/// Normal-ordered moments of the normalised photon-subtracted state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    /// `<a†a>`
    pub n_a: f64,
    /// `<b†b>`
    pub n_b: f64,
    /// `<a†² a²>`
    pub aa_aa: f64,
    /// `<b†² b²>`
    pub bb_bb: f64,
    /// `<a†a b†b>`
    pub ab_ab: f64,
}

impl Moments {
    /// Assembles the moments from `A² Γ[m,n,...]`.
    pub fn from_gamma(cfg: &EstimationConfig, coeffs: &TransferCoeffs) -> Result<Self> {
        let exponent = ExponentForm::new(coeffs, cfg.alpha);
        let norm = normalization(cfg.m, cfg.n, &exponent)?;
        let mut ctx = GammaContext::new(exponent);
        let (m, n) = (cfg.m, cfg.n);
        let mut moment = |idx: GammaIndex, label| -> Result<f64> { Ok(norm * real_part(ctx.get(idx)?, label)?) };
        Ok(Self {
            n_a: moment(GammaIndex::new(m, n, 1, 1, 0, 0), "n_a")?,
            n_b: moment(GammaIndex::new(m, n, 0, 0, 1, 1), "n_b")?,
            aa_aa: moment(GammaIndex::new(m, n, 2, 2, 0, 0), "a†²a²")?,
            bb_bb: moment(GammaIndex::new(m, n, 0, 0, 2, 2), "b†²b²")?,
            ab_ab: moment(GammaIndex::new(m, n, 1, 1, 1, 1), "a†a b†b")?,
        })
    }

    pub fn variance_a(&self) -> f64 {
        self.aa_aa + self.n_a - self.n_a * self.n_a
    }

    pub fn variance_b(&self) -> f64 {
        self.bb_bb + self.n_b - self.n_b * self.n_b
    }

    pub fn covariance(&self) -> f64 {
        self.ab_ab - self.n_a * self.n_b
    }

    pub fn total_photons(&self) -> f64 {
        self.n_a + self.n_b
    }

    /// Ideal QFIM: four times the number covariance matrix.
    pub fn qfim(&self) -> QfimMatrix {
        QfimMatrix::symmetric(4.0 * self.variance_a(), 4.0 * self.covariance(), 4.0 * self.variance_b())
    }

    /// `C_Q` for a given loss configuration.
    pub fn cq(&self, loss: &LossConfig) -> QfimMatrix {
        let (mu_a, mu_b) = (loss.a.mu(), loss.b.mu());
        let (ga, gb) = (loss.a.gamma(), loss.b.gamma());
        let aa = 4.0 * (mu_a * mu_a * (self.aa_aa + self.n_a) + ga * self.n_a - (mu_a * self.n_a).powi(2));
        let bb = 4.0 * (mu_b * mu_b * (self.bb_bb + self.n_b) + gb * self.n_b - (mu_b * self.n_b).powi(2));
        let ab = 4.0 * mu_a * mu_b * (self.ab_ab - self.n_a * self.n_b);
        QfimMatrix::symmetric(aa, ab, bb)
    }
}

/// Single-phase QFI `F_a = 4 Var(n_a)`.
pub fn qfi_single_ideal(cfg: &EstimationConfig, coeffs: &TransferCoeffs) -> Result<f64> {
    Ok(4.0 * Moments::from_gamma(cfg, coeffs)?.variance_a())
}

/// `1 / sqrt(v F)`.
pub fn qcrb_single(fisher: f64, v: u32) -> Result<f64> {
    if v == 0 {
        return Err(FopaError::InvalidParameter("number of measurements v must be >= 1".into()));
    }
    if !(fisher > 0.0) {
        return Err(FopaError::InfiniteBound);
    }
    Ok(1.0 / (v as f64 * fisher).sqrt())
}

/// Closed-form lossy single-phase QFI
/// `F_L = 4 F_a η n_a / ((1-η) F_a + 4 η n_a)`.
pub fn qfi_single_loss(fisher: f64, n_a: f64, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    if !(fisher >= 0.0 && n_a >= 0.0) {
        return Err(FopaError::InvalidParameter(format!("need F_a >= 0 and n_a >= 0, got {fisher}, {n_a}")));
    }
    if eta == 1.0 {
        return Ok(fisher);
    }
    let denominator = (1.0 - eta) * fisher + 4.0 * eta * n_a;
    if denominator == 0.0 {
        return Ok(0.0);
    }
    Ok(4.0 * fisher * eta * n_a / denominator)
}

pub fn qfim_ideal(cfg: &EstimationConfig, coeffs: &TransferCoeffs) -> Result<QfimMatrix> {
    Ok(Moments::from_gamma(cfg, coeffs)?.qfim())
}

/// `sqrt(Tr F⁻¹ / v)`.
pub fn qcrb_two_ideal(fisher: &QfimMatrix, v: u32) -> Result<f64> {
    if v == 0 {
        return Err(FopaError::InvalidParameter("number of measurements v must be >= 1".into()));
    }
    Ok((fisher.inverse_trace()? / v as f64).sqrt())
}

pub fn cq_matrix(cfg: &EstimationConfig, coeffs: &TransferCoeffs, loss: &LossConfig) -> Result<QfimMatrix> {
    Ok(Moments::from_gamma(cfg, coeffs)?.cq(loss))
}

/// Two-phase bound under loss together with the maximising `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossyBound {
    pub bound: f64,
    pub lambda: f64,
}

/// `Tr C(λ)⁻¹` for equal loss on both modes; `None` where `C` is singular.
pub fn lossy_trace_objective(moments: &Moments, eta: f64, lambda: f64) -> Option<f64> {
    let loss = LossConfig::uniform(eta, lambda).ok()?;
    moments.cq(&loss).inverse_trace().ok()
}

pub fn qcrb_two_loss_from_moments(moments: &Moments, eta: f64, v: u32) -> Result<LossyBound> {
    check_eta(eta)?;
    if v == 0 {
        return Err(FopaError::InvalidParameter("number of measurements v must be >= 1".into()));
    }
    if eta == 1.0 {
        let bound = qcrb_two_ideal(&moments.qfim(), v)?;
        return Ok(LossyBound { bound, lambda: 0.0 });
    }
    if eta == 0.0 {
        return Err(FopaError::InfiniteBound);
    }
    let objective = |mu: f64| lossy_trace_objective(moments, eta, lambda_for_mu(mu, eta));
    let Maximum { arg, value } = grid_then_golden_max(objective, 0.0, 1.0, LAMBDA_GRID_POINTS, LAMBDA_TOLERANCE)
        .ok_or(FopaError::SingularQfim { det: moments.qfim().determinant() })?;
    Ok(LossyBound { bound: (value / v as f64).sqrt(), lambda: lambda_for_mu(arg, eta) })
}

/// `sqrt(max_λ Tr C(λ)⁻¹ / v)` at equal transmission `η` on both modes.
pub fn qcrb_two_loss(cfg: &EstimationConfig, coeffs: &TransferCoeffs, eta: f64) -> Result<LossyBound> {
    qcrb_two_loss_from_moments(&Moments::from_gamma(cfg, coeffs)?, eta, cfg.v)
}

/// `C_aa(λ)` for the single-phase problem.
pub fn single_mode_cq(moments: &Moments, eta: f64, lambda: f64) -> Result<f64> {
    let loss = ModeLoss::new(eta, lambda)?;
    let (mu, gamma) = (loss.mu(), loss.gamma());
    Ok(4.0 * (mu * mu * (moments.aa_aa + moments.n_a) + gamma * moments.n_a - (mu * moments.n_a).powi(2)))
}

pub fn qfi_single_loss_variational_from_moments(moments: &Moments, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    if eta == 1.0 {
        return Ok(4.0 * moments.variance_a());
    }
    let objective = |mu: f64| single_mode_cq(moments, eta, lambda_for_mu(mu, eta)).ok().map(|c| -c);
    let best = grid_then_golden_max(objective, 0.0, 1.0, LAMBDA_GRID_POINTS, LAMBDA_TOLERANCE)
        .expect("single-mode objective is defined everywhere");
    Ok(-best.value)
}

/// Lossy single-phase QFI by direct minimisation of `C_aa` over `λ`.
pub fn qfi_single_loss_variational(cfg: &EstimationConfig, coeffs: &TransferCoeffs, eta: f64) -> Result<f64> {
    qfi_single_loss_variational_from_moments(&Moments::from_gamma(cfg, coeffs)?, eta)
}

/// Total mean photon number `<n_a> + <n_b>` after subtraction.
pub fn mean_photon_total(cfg: &EstimationConfig, coeffs: &TransferCoeffs) -> Result<f64> {
    Ok(Moments::from_gamma(cfg, coeffs)?.total_photons())
}
