//! Normal-ordered moments of the photon-subtracted FOPA output.
//!
//! For the Gaussian state `U_F |α>|0>` the normal-ordered generating function
//! is `exp(E(λ))` with `E` at most bilinear in the four formal variables
//! `λ1..λ4` (tracking `a†`, `a`, `b†`, `b`). A moment
//!
//! ```text
//! Γ[m,n,x1,y1,x2,y2] = <a†^(m+x1) a^(m+y1) b†^(n+x2) b^(n+y2)>
//! ```
//!
//! is `d1! d2! d3! d4!` times the coefficient of `λ1^d1 λ2^d2 λ3^d3 λ4^d4` in
//! `exp(E)`. [`gamma`] extracts that coefficient as a finite multinomial sum;
//! [`series`] multiplies out truncated series as an independent check.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{FopaError, Result};
use crate::transfer::TransferCoeffs;

pub mod series;

/// Default bound on `d1 + d2 + d3 + d4`.
pub const DEFAULT_MAX_ORDER: usize = 24;

/// Below this magnitude `Γ[m,n,0,0,0,0]` counts as zero.
pub const NORMALIZATION_FLOOR: f64 = 1e-14;

/// Allowed `|Im| / |Re|` for moments that must be real.
pub const REALNESS_TOLERANCE: f64 = 1e-9;

/// Subtraction orders `(m, n)` and moment orders `(x1, y1, x2, y2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GammaIndex {
    pub m: u32,
    pub n: u32,
    pub x1: u32,
    pub y1: u32,
    pub x2: u32,
    pub y2: u32,
}

impl GammaIndex {
    pub const fn new(m: u32, n: u32, x1: u32, y1: u32, x2: u32, y2: u32) -> Self {
        Self { m, n, x1, y1, x2, y2 }
    }

    /// Powers of `λ1..λ4`: `(m+x1, m+y1, n+x2, n+y2)`.
    pub fn degrees(&self) -> [usize; 4] {
        [self.m + self.x1, self.m + self.y1, self.n + self.x2, self.n + self.y2].map(|d| d as usize)
    }

    pub fn total_order(&self) -> usize {
        self.degrees().iter().sum()
    }

    /// Index with the roles of creation and annihilation swapped; its
    /// moment is the complex conjugate of this one.
    pub fn adjoint(&self) -> Self {
        Self::new(self.m, self.n, self.y1, self.x1, self.y2, self.x2)
    }

    fn check_order(&self, max_order: usize) -> Result<()> {
        let order = self.total_order();
        if order > max_order {
            return Err(FopaError::OrderTooLarge { order, max: max_order });
        }
        Ok(())
    }
}

/// Linear and bilinear coefficients of the generating-function exponent
///
/// ```text
/// E = L1 λ1 + L2 λ2 + L3 λ3 + L4 λ4 + B12 λ1λ2 + B13 λ1λ3 + B24 λ2λ4 + B34 λ3λ4
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentForm {
    pub linear: [Complex64; 4],
    pub b12: Complex64,
    pub b13: Complex64,
    pub b24: Complex64,
    pub b34: Complex64,
}

impl ExponentForm {
    pub fn new(coeffs: &TransferCoeffs, alpha: Complex64) -> Self {
        let TransferCoeffs { c1, c2, c3, c4, .. } = *coeffs;
        Self {
            linear: [c1.conj() * alpha.conj(), c1 * alpha, c4 * alpha, c4.conj() * alpha.conj()],
            b12: c3.conj() * c3,
            b13: c3.conj() * c2,
            b24: c4.conj() * c1,
            b34: c4.conj() * c4,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.linear
            .iter()
            .chain([&self.b12, &self.b13, &self.b24, &self.b34])
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

fn factorials(up_to: usize) -> Vec<f64> {
    let mut f = vec![1.0; up_to + 1];
    for k in 1..=up_to {
        f[k] = f[k - 1] * k as f64;
    }
    f
}

fn powers(z: Complex64, up_to: usize) -> Vec<Complex64> {
    let mut p = Vec::with_capacity(up_to + 1);
    p.push(Complex64::new(1.0, 0.0));
    for k in 1..=up_to {
        p.push(p[k - 1] * z);
    }
    p
}

/// Evaluates `Γ` with the default order bound.
pub fn gamma(index: GammaIndex, exponent: &ExponentForm) -> Result<Complex64> {
    gamma_bounded(index, exponent, DEFAULT_MAX_ORDER)
}

pub fn gamma_bounded(index: GammaIndex, exponent: &ExponentForm, max_order: usize) -> Result<Complex64> {
    index.check_order(max_order)?;
    if !exponent.is_finite() {
        return Err(FopaError::InvalidParameter("non-finite generating-function exponent".into()));
    }
    let [d1, d2, d3, d4] = index.degrees();
    let top = d1.max(d2).max(d3).max(d4);
    let fact = factorials(top);
    let l: Vec<Vec<Complex64>> = exponent.linear.iter().map(|&z| powers(z, top)).collect();
    let p12 = powers(exponent.b12, top);
    let p13 = powers(exponent.b13, top);
    let p24 = powers(exponent.b24, top);
    let p34 = powers(exponent.b34, top);
    let outer = fact[d1] * fact[d2] * fact[d3] * fact[d4];

    // a1 + b12 + b13 = d1, a2 + b12 + b24 = d2, a3 + b13 + b34 = d3, a4 + b24 + b34 = d4
    let mut sum = Complex64::new(0.0, 0.0);
    for b12 in 0..=d1.min(d2) {
        for b13 in 0..=(d1 - b12).min(d3) {
            let a1 = d1 - b12 - b13;
            for b24 in 0..=(d2 - b12).min(d4) {
                let a2 = d2 - b12 - b24;
                for b34 in 0..=(d3 - b13).min(d4 - b24) {
                    let a3 = d3 - b13 - b34;
                    let a4 = d4 - b24 - b34;
                    let mut denominators =
                        [fact[a1], fact[a2], fact[a3], fact[a4], fact[b12], fact[b13], fact[b24], fact[b34]];
                    denominators.sort_by(f64::total_cmp);
                    let weight = outer / denominators.iter().product::<f64>();
                    let term = l[0][a1] * l[1][a2] * l[2][a3] * l[3][a4] * p12[b12] * p13[b13] * p24[b24] * p34[b34];
                    sum += term * weight;
                }
            }
        }
    }
    Ok(sum)
}

/// `Re Γ` after checking that the imaginary part is negligible.
pub fn real_part(value: Complex64, label: &'static str) -> Result<f64> {
    if value.im != 0.0 && value.im.abs() > REALNESS_TOLERANCE * value.re.abs() {
        return Err(FopaError::NonRealMoment { label, re: value.re, im: value.im });
    }
    Ok(value.re)
}

/// `A² = 1 / Γ[m,n,0,0,0,0]`, the squared normalisation of the subtracted state.
pub fn normalization(m: u32, n: u32, exponent: &ExponentForm) -> Result<f64> {
    let norm = gamma(GammaIndex::new(m, n, 0, 0, 0, 0), exponent)?;
    if norm.norm() <= NORMALIZATION_FLOOR {
        return Err(FopaError::ZeroNormalization { value: norm.norm() });
    }
    if norm.im.abs() >= REALNESS_TOLERANCE * norm.re.abs() {
        return Err(FopaError::NonRealNormalization { re: norm.re, im: norm.im });
    }
    if norm.re <= 0.0 {
        return Err(FopaError::ZeroNormalization { value: norm.re });
    }
    Ok(1.0 / norm.re)
}

/// Memoising evaluator bound to one exponent (one parameter point).
///
/// Not shared between threads; each sweep point builds its own.
#[derive(Debug, Clone)]
pub struct GammaContext {
    exponent: ExponentForm,
    max_order: usize,
    cache: HashMap<GammaIndex, Complex64>,
}

impl GammaContext {
    pub fn new(exponent: ExponentForm) -> Self {
        Self::with_max_order(exponent, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(exponent: ExponentForm, max_order: usize) -> Self {
        Self { exponent, max_order, cache: HashMap::new() }
    }

    pub fn exponent(&self) -> &ExponentForm {
        &self.exponent
    }

    pub fn get(&mut self, index: GammaIndex) -> Result<Complex64> {
        if let Some(v) = self.cache.get(&index) {
            return Ok(*v);
        }
        let v = gamma_bounded(index, &self.exponent, self.max_order)?;
        self.cache.insert(index, v);
        Ok(v)
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }
}
