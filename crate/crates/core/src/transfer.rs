//! Input-output relation of the feedback-assisted OPA (FOPA).
//!
//! The OPA mixes `a` with `b†`; two beam splitters of reflectivity `R1`, `R2`
//! feed its outputs back into its inputs with phases `phi1`, `phi2`. The
//! closed-loop relation is
//!
//! ```text
//! a3  = (k1/k0) a0 + (k3/k0) b0†
//! b3† = (k2/k0) b0† + (k4/k0) a0
//! ```
//!
//! and is computed both in closed form ([`transfer_coefficients`]) and from
//! the signal-flow graph of the device ([`fopa_signal_flow_graph`]).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{FopaError, Result};
use crate::mason::SignalFlowGraph;

/// `|k0|` at or below this value is reported as [`FopaError::PoleProximity`].
pub const POLE_TOLERANCE: f64 = 1e-9;

/// Physical configuration of the FOPA.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FopaParams {
    g: f64,
    r1: f64,
    r2: f64,
    phi1: f64,
    phi2: f64,
}

impl FopaParams {
    pub fn new(g: f64, r1: f64, r2: f64, phi1: f64, phi2: f64) -> Result<Self> {
        if !(g.is_finite() && g >= 0.0) {
            return Err(FopaError::InvalidParameter(format!("gain g = {g} must be finite and >= 0")));
        }
        for (name, r) in [("R1", r1), ("R2", r2)] {
            if !(0.0..=1.0).contains(&r) {
                return Err(FopaError::InvalidParameter(format!("{name} = {r} outside [0, 1]")));
            }
        }
        if !(phi1.is_finite() && phi2.is_finite()) {
            return Err(FopaError::InvalidParameter("feedback phases must be finite".into()));
        }
        Ok(Self { g, r1, r2, phi1, phi2 })
    }

    /// Equal reflectivities and `phi1 = phi2 = π`, the configuration used
    /// throughout the figures.
    pub fn symmetric(g: f64, r: f64) -> Result<Self> {
        Self::new(g, r, r, PI, PI)
    }

    /// Plain OPA, no feedback.
    pub fn topa(g: f64) -> Result<Self> {
        Self::symmetric(g, 0.0)
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// `G = sqrt(1 + g²)`.
    pub fn big_g(&self) -> f64 {
        (1.0 + self.g * self.g).sqrt()
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn phi1(&self) -> f64 {
        self.phi1
    }

    pub fn phi2(&self) -> f64 {
        self.phi2
    }
}

/// Closed-loop coefficients `k0..k4` and the ratios `c_i = k_i / k0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferCoeffs {
    pub k0: Complex64,
    pub k1: Complex64,
    pub k2: Complex64,
    pub k3: Complex64,
    pub k4: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
    pub c4: Complex64,
}

impl TransferCoeffs {
    /// `|c1|² - |c3|² - 1`; zero for a canonical Bogoliubov map.
    pub fn commutator_defect_a(&self) -> f64 {
        self.c1.norm_sqr() - self.c3.norm_sqr() - 1.0
    }

    /// `|c2|² - |c4|² - 1`.
    pub fn commutator_defect_b(&self) -> f64 {
        self.c2.norm_sqr() - self.c4.norm_sqr() - 1.0
    }

    /// `c1 c4* - c2* c3`: vanishes when the two output modes commute.
    pub fn cross_commutator(&self) -> Complex64 {
        self.c1 * self.c4.conj() - self.c2.conj() * self.c3
    }
}

fn k_values(p: &FopaParams) -> [Complex64; 5] {
    let big_g = p.big_g();
    let (s1, s2) = (p.r1.sqrt(), p.r2.sqrt());
    let s12 = (p.r1 * p.r2).sqrt();
    let e = |x: f64| Complex64::from_polar(1.0, x);
    let t = p.g * ((1.0 - p.r1) * (1.0 - p.r2)).sqrt();

    let k0 = 1.0 + big_g * (s1 * e(p.phi1) + s2 * e(-p.phi2)) + s12 * e(p.phi1 - p.phi2);
    let k1 = s1 + big_g * (s12 * e(-p.phi2) + e(p.phi1)) + s2 * e(p.phi1 - p.phi2);
    let k2 = s2 + big_g * (s12 * e(p.phi1) + e(-p.phi2)) + s1 * e(p.phi1 - p.phi2);
    let k3 = t * e(-p.phi2);
    let k4 = t * e(p.phi1);
    [k0, k1, k2, k3, k4]
}

/// `k0` alone; finite everywhere including at the pole.
pub fn k0(params: &FopaParams) -> Complex64 {
    k_values(params)[0]
}

pub fn transfer_coefficients(params: &FopaParams) -> Result<TransferCoeffs> {
    let [k0, k1, k2, k3, k4] = k_values(params);
    if k0.norm() <= POLE_TOLERANCE {
        return Err(FopaError::PoleProximity { k0_abs: k0.norm() });
    }
    Ok(TransferCoeffs { k0, k1, k2, k3, k4, c1: k1 / k0, c2: k2 / k0, c3: k3 / k0, c4: k4 / k0 })
}

/// Node names of [`fopa_signal_flow_graph`]; `d` marks a creation operator.
pub mod nodes {
    pub const A0: &str = "a0";
    pub const A1: &str = "a1";
    pub const A2: &str = "a2";
    pub const A3: &str = "a3";
    pub const B0D: &str = "b0d";
    pub const B1D: &str = "b1d";
    pub const B2D: &str = "b2d";
    pub const B3D: &str = "b3d";
}

/// Signal-flow graph of the FOPA built branch by branch from the OPA and
/// beam-splitter relations. Mode `b` is carried as `b†` so all branches are
/// linear.
pub fn fopa_signal_flow_graph(p: &FopaParams) -> SignalFlowGraph {
    use nodes::*;
    let mut graph = SignalFlowGraph::new();
    let [a0, a1, a2, a3, b0d, b1d, b2d, b3d] =
        [A0, A1, A2, A3, B0D, B1D, B2D, B3D].map(|n| graph.add_node(n).expect("fresh node"));
    let re = |x: f64| Complex64::new(x, 0.0);
    let e = |x: f64| Complex64::from_polar(1.0, x);
    let big_g = p.big_g();
    let branches = [
        // BS1
        (a0, a1, re((1.0 - p.r1).sqrt())),
        (a2, a1, re(-p.r1.sqrt())),
        (a0, a3, re(p.r1.sqrt())),
        (a2, a3, re((1.0 - p.r1).sqrt())),
        // BS2 (conjugated)
        (b0d, b1d, re((1.0 - p.r2).sqrt())),
        (b2d, b1d, re(-p.r2.sqrt())),
        (b0d, b3d, re(p.r2.sqrt())),
        (b2d, b3d, re((1.0 - p.r2).sqrt())),
        // OPA
        (a1, a2, big_g * e(p.phi1)),
        (b1d, a2, p.g * e(-p.phi2)),
        (b1d, b2d, big_g * e(-p.phi2)),
        (a1, b2d, p.g * e(p.phi1)),
    ];
    for (from, to, gain) in branches {
        graph.add_branch(from, to, gain).expect("finite gains on known nodes");
    }
    graph
}

/// `(c1, c3, c2, c4)` obtained from the signal-flow graph, in the order
/// `a0→a3`, `b0†→a3`, `b0†→b3†`, `a0→b3†`.
pub fn mason_ratios(p: &FopaParams) -> Result<[Complex64; 4]> {
    use nodes::*;
    let graph = fopa_signal_flow_graph(p);
    let id = |n: &str| graph.node(n).expect("node present");
    Ok([
        graph.transfer(id(A0), id(A3))?,
        graph.transfer(id(B0D), id(A3))?,
        graph.transfer(id(B0D), id(B3D))?,
        graph.transfer(id(A0), id(B3D))?,
    ])
}

/// Optimal feedback reflectivity `1 + 2g² - 2g sqrt(1 + g²)`, the value of
/// `R` at which `k0` vanishes for `phi1 = phi2 = π`.
pub fn r_opt(g: f64) -> f64 {
    1.0 + 2.0 * g * g - 2.0 * g * (1.0 + g * g).sqrt()
}

/// Locates the zero of `k0(R)` on `[0, 1]` at `phi1 = phi2 = π` by bisection.
///
/// There `k0 = 1 - 2G sqrt(R) + R` is real, positive at `R = 0` and
/// non-positive at `R = 1`.
pub fn r_opt_by_bisection(g: f64) -> Result<f64> {
    let k0_at = |r: f64| -> Result<f64> { Ok(k0(&FopaParams::symmetric(g, r)?).re) };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let (f_lo, f_hi) = (k0_at(lo)?, k0_at(hi)?);
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(FopaError::InvalidParameter(format!("k0 does not change sign on [0, 1] for g = {g}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = k0_at(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn topa_reduction() {
        let c = transfer_coefficients(&FopaParams::topa(1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(c.k0.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.k1.re, -(2.0_f64.sqrt()), epsilon = 1e-15);
        assert_abs_diff_eq!(c.k3.re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.k0.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn topa_pair_is_exact_for_arbitrary_phases() {
        let (g, p1, p2) = (0.7, 0.4, -1.3);
        let c = transfer_coefficients(&FopaParams::new(g, 0.0, 0.0, p1, p2).unwrap()).unwrap();
        let big_g = (1.0 + g * g).sqrt();
        assert_eq!(c.k0, Complex64::new(1.0, 0.0));
        assert_eq!(c.c1, big_g * Complex64::from_polar(1.0, p1));
        assert_eq!(c.c3, g * Complex64::from_polar(1.0, -p2));
    }

    #[test]
    fn pole_at_r_opt() {
        let r = 3.0 - 2.0 * 2.0_f64.sqrt();
        let err = transfer_coefficients(&FopaParams::symmetric(1.0, r).unwrap()).unwrap_err();
        assert!(matches!(err, FopaError::PoleProximity { .. }));
    }

    #[test]
    fn zero_gain_decouples_modes() {
        let c = transfer_coefficients(&FopaParams::symmetric(0.0, 0.3).unwrap()).unwrap();
        assert_eq!(c.k3.norm(), 0.0);
        assert_eq!(c.k4.norm(), 0.0);
        assert_abs_diff_eq!(c.c1.re, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.c1.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(FopaParams::symmetric(1.0, 1.2).is_err());
        assert!(FopaParams::symmetric(1.0, -0.1).is_err());
        assert!(FopaParams::symmetric(-1.0, 0.1).is_err());
        assert!(FopaParams::new(1.0, 0.1, 0.1, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn r_opt_closed_form_values() {
        assert_abs_diff_eq!(r_opt(1.0), 3.0 - 2.0 * 2.0_f64.sqrt(), epsilon = 1e-15);
        assert!((r_opt(1.0) - 0.17157).abs() < 1e-5);
        assert_eq!(r_opt(0.0), 1.0);
        assert_eq!(r_opt_by_bisection(0.0).unwrap(), 1.0);
        for g in [0.25, 0.5, 1.0, 2.0, 3.0] {
            assert_abs_diff_eq!(r_opt_by_bisection(g).unwrap(), r_opt(g), epsilon = 1e-10);
            let k = k0(&FopaParams::symmetric(g, r_opt(g)).unwrap());
            assert!(k.norm() < 1e-10, "g = {g}: |k0| = {}", k.norm());
        }
    }

    #[test]
    fn loop_gains_and_cross_path() {
        // φ = π, R1 = R2 = R: loops G√R, G√R, R g²; b0† → a3 has the single path -g(1-R)
        let (g, r) = (1.0, 0.3);
        let p = FopaParams::symmetric(g, r).unwrap();
        let graph = fopa_signal_flow_graph(&p);
        let mut loops: Vec<f64> = graph.loops().iter().map(|l| l.gain.re).collect();
        loops.sort_by(f64::total_cmp);
        let big_g = p.big_g();
        assert_eq!(loops.len(), 3);
        assert_abs_diff_eq!(loops[0], r * g * g, epsilon = 1e-14);
        assert_abs_diff_eq!(loops[1], big_g * r.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(loops[2], big_g * r.sqrt(), epsilon = 1e-14);

        let (b0d, a3) = (graph.node(nodes::B0D).unwrap(), graph.node(nodes::A3).unwrap());
        let paths = graph.forward_paths(b0d, a3);
        assert_eq!(paths.len(), 1);
        assert_abs_diff_eq!(paths[0].gain.re, -g * (1.0 - r), epsilon = 1e-14);
        assert_abs_diff_eq!(graph.cofactor(&paths[0]).re, 1.0, epsilon = 1e-15);
        let delta = graph.graph_determinant();
        let c3 = graph.transfer(b0d, a3).unwrap();
        assert_abs_diff_eq!((c3 - (-g * (1.0 - r)) / delta).norm(), 0.0, epsilon = 1e-14);

        let (a0,) = (graph.node(nodes::A0).unwrap(),);
        let mut gains: Vec<f64> = graph.forward_paths(a0, a3).iter().map(|p| p.gain.re).collect();
        gains.sort_by(f64::total_cmp);
        let mut expected = [r.sqrt(), -(1.0 - r) * big_g, -(1.0 - r) * r.sqrt() * g * g];
        expected.sort_by(f64::total_cmp);
        for (x, y) in gains.iter().zip(expected) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-14);
        }
    }

    #[test]
    fn graph_determinant_is_k0() {
        let p = FopaParams::new(0.8, 0.2, 0.45, 2.0, -0.7).unwrap();
        let d = fopa_signal_flow_graph(&p).graph_determinant();
        assert_abs_diff_eq!((d - k0(&p)).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn mason_matches_closed_form() {
        let p = FopaParams::symmetric(1.0, 0.3).unwrap();
        let c = transfer_coefficients(&p).unwrap();
        let [c1, c3, c2, c4] = mason_ratios(&p).unwrap();
        for (x, y) in [(c1, c.c1), (c3, c.c3), (c2, c.c2), (c4, c.c4)] {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn mason_sees_the_pole() {
        let p = FopaParams::symmetric(1.0, r_opt(1.0)).unwrap();
        assert!(matches!(mason_ratios(&p), Err(FopaError::ZeroDeterminant { .. })));
    }

    proptest! {
        #[test]
        fn canonical_commutators_hold(
            g in 0.0..3.0_f64,
            r1 in 0.0..1.0_f64,
            r2 in 0.0..1.0_f64,
            p1 in -PI..PI,
            p2 in -PI..PI,
        ) {
            let p = FopaParams::new(g, r1, r2, p1, p2).unwrap();
            prop_assume!(k0(&p).norm() > 1e-3);
            let c = transfer_coefficients(&p).unwrap();
            let scale = c.c1.norm_sqr().max(1.0);
            prop_assert!(c.commutator_defect_a().abs() < 1e-10 * scale);
            prop_assert!(c.commutator_defect_b().abs() < 1e-10 * scale);
            prop_assert!(c.cross_commutator().norm() < 1e-10 * scale);
        }

        #[test]
        fn real_coefficients_at_pi(g in 0.0..3.0_f64, r in 0.0..1.0_f64) {
            let p = FopaParams::symmetric(g, r).unwrap();
            prop_assume!((r - r_opt(g)).abs() > 1e-3);
            let c = transfer_coefficients(&p).unwrap();
            let scale = c.c1.norm_sqr().max(1.0);
            prop_assert!((c.c1 * c.c4 - c.c2 * c.c3).norm() < 1e-10 * scale);
        }
    }
}
