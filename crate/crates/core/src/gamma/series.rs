//! Independent evaluator for `Γ`: expand each of the eight exponential
//! factors of `exp(E)` as a truncated power series and multiply them out as
//! dense 4-variable polynomials.

use num_complex::Complex64;

use super::{ExponentForm, GammaIndex, DEFAULT_MAX_ORDER};
use crate::error::{FopaError, Result};

/// Truncated 4-variable power series with per-variable degree bounds.
#[derive(Debug, Clone)]
pub struct SeriesExpansion {
    bounds: [usize; 4],
    coeffs: Vec<Complex64>,
}

impl SeriesExpansion {
    /// Expands `exp(E)` keeping every monomial with `deg_i <= bounds[i]`.
    pub fn new(exponent: &ExponentForm, bounds: [usize; 4]) -> Self {
        let len = bounds.iter().map(|b| b + 1).product();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        coeffs[0] = Complex64::new(1.0, 0.0);
        let mut s = Self { bounds, coeffs };
        for (var, &c) in exponent.linear.iter().enumerate() {
            let mut shift = [0; 4];
            shift[var] = 1;
            s.multiply_by_exp(c, shift);
        }
        s.multiply_by_exp(exponent.b12, [1, 1, 0, 0]);
        s.multiply_by_exp(exponent.b13, [1, 0, 1, 0]);
        s.multiply_by_exp(exponent.b24, [0, 1, 0, 1]);
        s.multiply_by_exp(exponent.b34, [0, 0, 1, 1]);
        s
    }

    fn offset(&self, d: [usize; 4]) -> usize {
        let [_, b1, b2, b3] = self.bounds.map(|b| b + 1);
        ((d[0] * b1 + d[1]) * b2 + d[2]) * b3 + d[3]
    }

    /// Multiplies by `exp(c · λ^shift) = Σ_t c^t/t! λ^(t·shift)`.
    fn multiply_by_exp(&mut self, c: Complex64, shift: [usize; 4]) {
        let max_t = (0..4).filter(|&i| shift[i] > 0).map(|i| self.bounds[i] / shift[i]).min().unwrap_or(0);
        let mut terms = Vec::with_capacity(max_t + 1);
        let mut term = Complex64::new(1.0, 0.0);
        terms.push(term);
        for t in 1..=max_t {
            term = term * c / t as f64;
            terms.push(term);
        }
        let old = self.coeffs.clone();
        let [n0, n1, n2, n3] = self.bounds;
        for i0 in 0..=n0 {
            for i1 in 0..=n1 {
                for i2 in 0..=n2 {
                    for i3 in 0..=n3 {
                        let d = [i0, i1, i2, i3];
                        let mut acc = Complex64::new(0.0, 0.0);
                        for (t, w) in terms.iter().enumerate() {
                            if (0..4).any(|k| shift[k] * t > d[k]) {
                                break;
                            }
                            let src = [0, 1, 2, 3].map(|k| d[k] - shift[k] * t);
                            acc += old[self.offset(src)] * w;
                        }
                        let at = self.offset(d);
                        self.coeffs[at] = acc;
                    }
                }
            }
        }
    }

    pub fn bounds(&self) -> [usize; 4] {
        self.bounds
    }

    /// Raw coefficient of `λ^d`.
    pub fn coefficient(&self, d: [usize; 4]) -> Option<Complex64> {
        if (0..4).any(|k| d[k] > self.bounds[k]) {
            return None;
        }
        Some(self.coeffs[self.offset(d)])
    }

    /// `d1! d2! d3! d4!` times the coefficient, i.e. the mixed derivative at
    /// the origin.
    pub fn derivative(&self, d: [usize; 4]) -> Option<Complex64> {
        let mut scale = 1.0;
        for k in d {
            for j in 2..=k {
                scale *= j as f64;
            }
        }
        self.coefficient(d).map(|c| c * scale)
    }

    /// `Γ` for an index inside this expansion's bounds.
    pub fn gamma(&self, index: GammaIndex) -> Option<Complex64> {
        self.derivative(index.degrees())
    }
}

/// `Γ` via a fresh truncated expansion sized exactly for `index`.
pub fn gamma_series_oracle(index: GammaIndex, exponent: &ExponentForm) -> Result<Complex64> {
    let order = index.total_order();
    if order > DEFAULT_MAX_ORDER {
        return Err(FopaError::OrderTooLarge { order, max: DEFAULT_MAX_ORDER });
    }
    let expansion = SeriesExpansion::new(exponent, index.degrees());
    Ok(expansion.gamma(index).expect("index within its own bounds"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;
    use crate::transfer::{transfer_coefficients, FopaParams};

    fn form(g: f64, r: f64, alpha: f64) -> ExponentForm {
        ExponentForm::new(
            &transfer_coefficients(&FopaParams::symmetric(g, r).unwrap()).unwrap(),
            Complex64::new(alpha, 0.0),
        )
    }

    #[test]
    fn zero_index_is_one() {
        let e = form(1.0, 0.3, 2.0);
        assert_eq!(gamma_series_oracle(GammaIndex::default(), &e).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn agrees_with_multinomial_sum() {
        let e = form(1.0, 0.3, 2.0);
        let idx = GammaIndex::new(1, 1, 0, 0, 0, 0);
        let a = gamma(idx, &e).unwrap();
        let b = gamma_series_oracle(idx, &e).unwrap();
        assert!((a - b).norm() < 1e-10 * a.norm());
    }

    #[test]
    fn shared_expansion_serves_every_smaller_index() {
        let e = form(0.6, 0.1, 1.5);
        let big = SeriesExpansion::new(&e, [4, 4, 4, 4]);
        for idx in [GammaIndex::new(1, 0, 2, 3, 1, 0), GammaIndex::new(0, 2, 1, 1, 2, 2)] {
            let a = big.gamma(idx).unwrap();
            let b = gamma(idx, &e).unwrap();
            assert!((a - b).norm() < 1e-10 * b.norm());
        }
        assert!(big.gamma(GammaIndex::new(3, 0, 2, 0, 0, 0)).is_none());
    }
}
