//! Brute-force two-mode Fock-space model of the probe state.
//!
//! The FOPA acts on `(a, b†)` as the 2×2 Bogoliubov matrix
//! `M = [[c1, c3], [c4, c2]]`. Writing `M⁻¹ = [[d1, d3], [d4, d2]]`, the
//! output `U|α,0>` equals `D_a(α d1*) D_b(-α* d3) U|0,0>` and `U|0,0>` is the
//! two-mode squeezed vacuum `sqrt(1-|t|²) Σ tⁿ |n,n>` with `t = -d3/d1`.
//! Displacements are applied as exponentials of the truncated ladder
//! generators. Nothing in this module uses the generating function.

use num_complex::Complex64;

use crate::error::{FopaError, Result};
use crate::estimation::{Moments, QfimMatrix};
use crate::gamma::NORMALIZATION_FLOOR;
use crate::transfer::{transfer_coefficients, FopaParams, TransferCoeffs};

pub const DEFAULT_CUTOFF: usize = 60;

/// Largest admissible probability mass outside the cutoff box before
/// subtraction.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-10;

/// Largest cutoff the converging builder will try.
pub const MAX_CUTOFF: usize = 1024;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Phases applied by the two phase shifters, `exp(-i φ_a n_a - i φ_b n_b)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePoint {
    pub phi_a: f64,
    pub phi_b: f64,
}

/// Two-mode amplitudes `ψ[n_a][n_b]`, `0 <= n_a, n_b <= cutoff`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    cutoff: usize,
    amps: Vec<Complex64>,
}

impl FockState {
    pub fn zeros(cutoff: usize) -> Self {
        Self { cutoff, amps: vec![ZERO; (cutoff + 1) * (cutoff + 1)] }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn dim(&self) -> usize {
        self.cutoff + 1
    }

    pub fn amplitude(&self, na: usize, nb: usize) -> Complex64 {
        self.amps[na * self.dim() + nb]
    }

    fn set(&mut self, na: usize, nb: usize, z: Complex64) {
        let d = self.dim();
        self.amps[na * d + nb] = z;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &FockState) -> Complex64 {
        assert_eq!(self.cutoff, other.cutoff);
        self.amps.iter().zip(&other.amps).map(|(x, y)| x.conj() * y).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.amps.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn lower_a(&self) -> FockState {
        let mut out = FockState::zeros(self.cutoff);
        for na in 0..self.cutoff {
            let s = ((na + 1) as f64).sqrt();
            for nb in 0..=self.cutoff {
                out.set(na, nb, self.amplitude(na + 1, nb) * s);
            }
        }
        out
    }

    pub fn lower_b(&self) -> FockState {
        let mut out = FockState::zeros(self.cutoff);
        for na in 0..=self.cutoff {
            for nb in 0..self.cutoff {
                out.set(na, nb, self.amplitude(na, nb + 1) * ((nb + 1) as f64).sqrt());
            }
        }
        out
    }

    pub fn number_a(&self) -> FockState {
        self.map_diagonal(|na, _| na as f64)
    }

    pub fn number_b(&self) -> FockState {
        self.map_diagonal(|_, nb| nb as f64)
    }

    fn map_diagonal(&self, f: impl Fn(usize, usize) -> f64) -> FockState {
        let mut out = self.clone();
        for na in 0..=self.cutoff {
            for nb in 0..=self.cutoff {
                out.set(na, nb, self.amplitude(na, nb) * f(na, nb));
            }
        }
        out
    }

    /// `a^m b^n |ψ>`, unnormalised.
    pub fn subtract(&self, m: u32, n: u32) -> FockState {
        let mut s = self.clone();
        for _ in 0..m {
            s = s.lower_a();
        }
        for _ in 0..n {
            s = s.lower_b();
        }
        s
    }

    pub fn normalized(&self) -> Result<FockState> {
        let norm = self.norm_sqr();
        if norm <= NORMALIZATION_FLOOR {
            return Err(FopaError::ZeroNormalization { value: norm });
        }
        let scale = 1.0 / norm.sqrt();
        Ok(FockState { cutoff: self.cutoff, amps: self.amps.iter().map(|z| z * scale).collect() })
    }

    /// Applies `exp(-i φ_a n_a - i φ_b n_b)`.
    pub fn with_phase(&self, phase: &PhasePoint) -> FockState {
        let mut out = self.clone();
        for na in 0..=self.cutoff {
            for nb in 0..=self.cutoff {
                let rot = Complex64::from_polar(1.0, -(phase.phi_a * na as f64 + phase.phi_b * nb as f64));
                out.set(na, nb, self.amplitude(na, nb) * rot);
            }
        }
        out
    }

    /// Probability mass with `n_a > keep` or `n_b > keep`.
    pub fn mass_beyond(&self, keep: usize) -> f64 {
        let mut mass = 0.0;
        for na in 0..=self.cutoff {
            for nb in 0..=self.cutoff {
                if na > keep || nb > keep {
                    mass += self.amplitude(na, nb).norm_sqr();
                }
            }
        }
        mass
    }

    /// Restriction to the smaller box `0..=cutoff`.
    pub fn truncate(&self, cutoff: usize) -> FockState {
        assert!(cutoff <= self.cutoff);
        let mut out = FockState::zeros(cutoff);
        for na in 0..=cutoff {
            for nb in 0..=cutoff {
                out.set(na, nb, self.amplitude(na, nb));
            }
        }
        out
    }
}

/// Two-mode squeezer with local phase rotations reproducing `c1..c4`:
/// `M = diag(e^{iu}, e^{-iw}) · [[cosh r, sinh r], [sinh r, cosh r]] · diag(1, e^{-iq})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezerDecomposition {
    pub r: f64,
    pub u: f64,
    pub w: f64,
    pub q: f64,
}

impl SqueezerDecomposition {
    pub fn new(c: &TransferCoeffs) -> Self {
        let r = c.c3.norm().asinh();
        let u = c.c1.arg();
        let q = u - c.c3.arg();
        let w = -c.c4.arg();
        Self { r, u, w, q }
    }

    /// `(c1, c3, c2, c4)` rebuilt from the factors.
    pub fn reconstruct(&self) -> [Complex64; 4] {
        let (ch, sh) = (self.r.cosh(), self.r.sinh());
        let e = |x: f64| Complex64::from_polar(1.0, x);
        [ch * e(self.u), sh * e(self.u - self.q), ch * e(-self.w - self.q), sh * e(-self.w)]
    }

    /// Schmidt coefficient ratio of the squeezed vacuum, `tanh r · e^{i(u+w)}`.
    pub fn schmidt_ratio(&self) -> Complex64 {
        Complex64::from_polar(self.r.tanh(), self.u + self.w)
    }
}

/// Coefficients of `M⁻¹` and the derived state parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeGeometry {
    /// Schmidt ratio `t` of the squeezed vacuum.
    pub t: Complex64,
    pub beta_a: Complex64,
    pub beta_b: Complex64,
}

impl ProbeGeometry {
    pub fn new(c: &TransferCoeffs, alpha: Complex64) -> Self {
        let det = c.c1 * c.c2 - c.c3 * c.c4;
        let (d1, d3) = (c.c2 / det, -c.c3 / det);
        Self { t: -d3 / d1, beta_a: alpha * d1.conj(), beta_b: -alpha.conj() * d3 }
    }
}

/// Applies `exp(β a† - β* a)` along one axis of the amplitude matrix
/// (`axis = 0` for mode `a`). With `β = |β| e^{iθ}` the operator equals
/// `e^{iθn} exp(|β|(a† - a)) e^{-iθn}`, so the exponential itself has a real
/// generator. It is applied in steps of norm at most `STEP_NORM`, each summed
/// as a Taylor series. Lines whose norm is below `skip` are left untouched.
fn displace(state: &mut FockState, beta: Complex64, axis: usize, skip: f64) {
    const STEP_NORM: f64 = 8.0;
    if beta.norm() == 0.0 {
        return;
    }
    let dim = state.dim();
    let generator_norm = 2.0 * beta.norm() * ((dim - 1) as f64).sqrt();
    let steps = (generator_norm / STEP_NORM).ceil().max(1.0) as usize;
    let b = beta.norm() / steps as f64;
    let theta = beta.arg();
    let sq: Vec<f64> = (0..dim).map(|k| (k as f64).sqrt()).collect();
    let rotation: Vec<Complex64> = (0..dim).map(|k| Complex64::from_polar(1.0, theta * k as f64)).collect();

    // y = b (a† - a) x
    let apply = |x: &[Complex64], y: &mut [Complex64]| {
        for k in 0..dim {
            let mut acc = ZERO;
            if k > 0 {
                acc += x[k - 1] * sq[k];
            }
            if k + 1 < dim {
                acc -= x[k + 1] * sq[k + 1];
            }
            y[k] = acc * b;
        }
    };

    let mut line = vec![ZERO; dim];
    let mut term = vec![ZERO; dim];
    let mut next = vec![ZERO; dim];
    for other in 0..dim {
        for k in 0..dim {
            let z = if axis == 0 { state.amplitude(k, other) } else { state.amplitude(other, k) };
            line[k] = z * rotation[k].conj();
        }
        let base: f64 = line.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if base <= skip {
            continue;
        }
        for _ in 0..steps {
            term.copy_from_slice(&line);
            for j in 1..200 {
                apply(&term, &mut next);
                let inv = 1.0 / j as f64;
                let mut size = 0.0;
                for k in 0..dim {
                    term[k] = next[k] * inv;
                    line[k] += term[k];
                    size += term[k].norm_sqr();
                }
                if size.sqrt() < 1e-18 * base {
                    break;
                }
            }
        }
        for k in 0..dim {
            let z = line[k] * rotation[k];
            if axis == 0 {
                state.set(k, other, z);
            } else {
                state.set(other, k, z);
            }
        }
    }
}

/// Photon-number distribution `p_0, p_1, ...` of a displaced thermal state
/// with Bose ratio `q = n̄/(1+n̄)` and displacement `β`, up to and including
/// `upto`. Uses `p_n ∝ qⁿ L_n(-|β|²(1-q)²/q)` and the Laguerre recurrence.
pub fn displaced_thermal_distribution(q: f64, beta: Complex64, upto: usize) -> Vec<f64> {
    let b2 = beta.norm_sqr();
    let qx = b2 * (1.0 - q) * (1.0 - q);
    let mut p = Vec::with_capacity(upto + 1);
    p.push((1.0 - q) * (-b2 * (1.0 - q)).exp());
    for k in 0..upto {
        let kf = k as f64;
        let prev = if k == 0 { 0.0 } else { p[k - 1] };
        let next = ((q * (2.0 * kf + 1.0) + qx) * p[k] - kf * q * q * prev) / (kf + 1.0);
        p.push(next.max(0.0));
    }
    p
}

/// Relative upper tails of `p_k (k+1)^weight`: entry `n` is the share of
/// the weighted mass carried by `k > n`.
fn weighted_upper_tails(distribution: &[f64], weight: u32) -> Vec<f64> {
    let weighted: Vec<f64> =
        distribution.iter().enumerate().map(|(k, p)| p * ((k + 1) as f64).powi(weight as i32)).collect();
    let total: f64 = weighted.iter().sum();
    let mut tails = vec![0.0; weighted.len()];
    let mut acc = 0.0;
    for k in (0..weighted.len()).rev() {
        tails[k] = acc / total;
        acc += weighted[k];
    }
    tails
}

/// FOPA output `U_F |α>|0>` restricted to `0..=cutoff`, unnormalised, and the
/// probability mass that fell outside the box.
pub fn build_pre_subtraction_state(params: &FopaParams, alpha: Complex64, cutoff: usize) -> Result<(FockState, f64)> {
    if cutoff == 0 {
        return Err(FopaError::InvalidParameter("cutoff must be positive".into()));
    }
    let coeffs = transfer_coefficients(params)?;
    let geometry = ProbeGeometry::new(&coeffs, alpha);
    let work = cutoff + cutoff / 4 + 24;
    let mut state = FockState::zeros(work);
    let norm = (1.0 - geometry.t.norm_sqr()).sqrt();
    let mut amp = Complex64::new(norm, 0.0);
    for k in 0..=work {
        state.set(k, k, amp);
        amp *= geometry.t;
    }
    displace(&mut state, geometry.beta_a, 0, 1e-20);
    displace(&mut state, geometry.beta_b, 1, 0.0);
    let kept = state.truncate(cutoff);
    let tail = (1.0 - kept.norm_sqr()).max(0.0);
    Ok((kept, tail))
}

/// Normalised `a^m b^n |ψ>` from a pre-subtraction state.
pub fn subtract_and_normalize(pre: &FockState, m: u32, n: u32) -> Result<FockState> {
    if !pre.is_finite() {
        return Err(FopaError::InvalidParameter("non-finite Fock amplitudes".into()));
    }
    pre.subtract(m, n).normalized()
}

/// Normalised photon-subtracted probe state at a fixed cutoff.
pub fn build_probe_state(params: &FopaParams, alpha: Complex64, m: u32, n: u32, cutoff: usize) -> Result<FockState> {
    build_probe_state_with_tolerance(params, alpha, m, n, cutoff, DEFAULT_TAIL_TOLERANCE)
}

pub fn build_probe_state_with_tolerance(
    params: &FopaParams,
    alpha: Complex64,
    m: u32,
    n: u32,
    cutoff: usize,
    tail_tol: f64,
) -> Result<FockState> {
    let (pre, tail) = build_pre_subtraction_state(params, alpha, cutoff)?;
    if tail >= tail_tol {
        return Err(FopaError::CutoffTooSmall { cutoff, tail, tol: tail_tol });
    }
    subtract_and_normalize(&pre, m, n)
}

/// Smallest cutoff at which the marginal tails of the pre-subtraction state
/// add up to less than a quarter of `tail_tol`. Each tail is weighted by
/// `(k+1)^(m+n+2)`, which bounds how subtraction and the second moments in
/// the QFIM amplify the part of the state beyond the cutoff.
pub fn suggest_cutoff(params: &FopaParams, alpha: Complex64, m: u32, n: u32, tail_tol: f64) -> Result<usize> {
    let geometry = ProbeGeometry::new(&transfer_coefficients(params)?, alpha);
    let q = geometry.t.norm_sqr();
    let thermal = q / (1.0 - q);
    let mean = geometry.beta_a.norm_sqr().max(geometry.beta_b.norm_sqr()) + thermal;
    let horizon = 4 * MAX_CUTOFF;
    if !mean.is_finite() || mean > MAX_CUTOFF as f64 {
        return Err(FopaError::CutoffTooSmall { cutoff: MAX_CUTOFF, tail: 1.0, tol: tail_tol });
    }
    let weight = m + n + 2;
    let ta = weighted_upper_tails(&displaced_thermal_distribution(q, geometry.beta_a, horizon), weight);
    let tb = weighted_upper_tails(&displaced_thermal_distribution(q, geometry.beta_b, horizon), weight);
    match (0..=MAX_CUTOFF).find(|&c| ta[c] + tb[c] < 0.25 * tail_tol) {
        Some(c) => Ok(c.max(1)),
        None => {
            Err(FopaError::CutoffTooSmall { cutoff: MAX_CUTOFF, tail: ta[MAX_CUTOFF] + tb[MAX_CUTOFF], tol: tail_tol })
        }
    }
}

/// Pre-subtraction state on the first cutoff (starting from
/// [`suggest_cutoff`]) whose tail is below `tail_tol`, adequate for
/// subtraction orders up to `(m, n)`.
pub fn build_converged_pre_subtraction_state(
    params: &FopaParams,
    alpha: Complex64,
    m: u32,
    n: u32,
    tail_tol: f64,
) -> Result<FockState> {
    let mut cutoff = suggest_cutoff(params, alpha, m, n, tail_tol)?;
    loop {
        let (pre, tail) = build_pre_subtraction_state(params, alpha, cutoff)?;
        if tail < tail_tol {
            return Ok(pre);
        }
        if cutoff == MAX_CUTOFF {
            return Err(FopaError::CutoffTooSmall { cutoff, tail, tol: tail_tol });
        }
        cutoff = (cutoff + cutoff / 4).min(MAX_CUTOFF);
    }
}

pub fn build_converged_probe_state(
    params: &FopaParams,
    alpha: Complex64,
    m: u32,
    n: u32,
    tail_tol: f64,
) -> Result<FockState> {
    subtract_and_normalize(&build_converged_pre_subtraction_state(params, alpha, m, n, tail_tol)?, m, n)
}

/// `<ψ| a†^x1 a^y1 b†^x2 b^y2 |ψ>`.
pub fn oracle_moment(state: &FockState, x1: u32, y1: u32, x2: u32, y2: u32) -> Complex64 {
    let left = state.subtract(x1, x2);
    let right = state.subtract(y1, y2);
    left.inner(&right)
}

/// Moments used by the analytic pipeline, evaluated by ladder arithmetic.
pub fn oracle_moments(state: &FockState) -> Moments {
    Moments {
        n_a: oracle_moment(state, 1, 1, 0, 0).re,
        n_b: oracle_moment(state, 0, 0, 1, 1).re,
        aa_aa: oracle_moment(state, 2, 2, 0, 0).re,
        bb_bb: oracle_moment(state, 0, 0, 2, 2).re,
        ab_ab: oracle_moment(state, 1, 1, 1, 1).re,
    }
}

/// `4 Cov(n_i, n_j)` computed with number operators applied directly.
pub fn oracle_qfim(state: &FockState) -> QfimMatrix {
    let (na, nb) = (state.number_a(), state.number_b());
    let mean_a = state.inner(&na).re;
    let mean_b = state.inner(&nb).re;
    let aa = na.inner(&na).re - mean_a * mean_a;
    let bb = nb.inner(&nb).re - mean_b * mean_b;
    let ab = na.inner(&nb).re - mean_a * mean_b;
    QfimMatrix::symmetric(4.0 * aa, 4.0 * ab, 4.0 * bb)
}

/// Fisher matrix of the phase-encoded state at `phase`, from
/// `F_ij = 4 Re[<∂_i ψ|∂_j ψ> - <∂_i ψ|ψ><ψ|∂_j ψ>]` with `∂_i ψ = -i n_i ψ`.
pub fn oracle_qfim_at(state: &FockState, phase: &PhasePoint) -> QfimMatrix {
    let psi = state.with_phase(phase);
    let minus_i = Complex64::new(0.0, -1.0);
    let scale = |s: FockState| FockState { cutoff: s.cutoff, amps: s.amps.iter().map(|z| z * minus_i).collect() };
    let da = scale(psi.number_a());
    let db = scale(psi.number_b());
    let entry = |x: &FockState, y: &FockState| 4.0 * (x.inner(y) - x.inner(&psi) * psi.inner(y)).re;
    QfimMatrix { aa: entry(&da, &da), ab: entry(&da, &db), ba: entry(&db, &da), bb: entry(&db, &db) }
}
