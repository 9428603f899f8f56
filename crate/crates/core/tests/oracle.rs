use fopa_core::estimation::{EstimationConfig, Moments};
use fopa_core::fock::{
    build_converged_pre_subtraction_state, build_pre_subtraction_state, oracle_moment, oracle_moments, oracle_qfim,
    subtract_and_normalize,
};
use fopa_core::gamma::{gamma, ExponentForm, GammaIndex};
use fopa_core::transfer::{transfer_coefficients, FopaParams};
use num_complex::Complex64;

const TAIL: f64 = 1e-13;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn reported(m: &Moments) -> [f64; 5] {
    [m.n_a, m.n_b, m.aa_aa, m.bb_bb, m.ab_ab]
}

#[test]
fn doubling_the_cutoff_leaves_moments_unchanged() {
    let alpha = Complex64::new(2.0, 0.0);
    for r in [0.0, 0.3] {
        let p = FopaParams::symmetric(1.0, r).unwrap();
        let pre = build_converged_pre_subtraction_state(&p, alpha, 2, 2, TAIL).unwrap();
        let (doubled, _) = build_pre_subtraction_state(&p, alpha, 2 * pre.cutoff()).unwrap();
        for m in 0..=2 {
            for n in 0..=2 {
                let a = oracle_moments(&subtract_and_normalize(&pre, m, n).unwrap());
                let b = oracle_moments(&subtract_and_normalize(&doubled, m, n).unwrap());
                for (x, y) in reported(&a).iter().zip(reported(&b)) {
                    assert!(rel(*x, y) < 1e-6, "R={r} (m,n)=({m},{n}): {x} vs {y}");
                }
            }
        }
    }
}

#[test]
fn oracle_agrees_off_the_symmetric_configuration() {
    let cases = [
        (FopaParams::new(0.6, 0.2, 0.05, 0.4, -1.1).unwrap(), Complex64::from_polar(1.5, 0.7), 1, 2),
        (FopaParams::new(1.0, 0.0, 0.4, 3.0, 2.0).unwrap(), Complex64::new(0.0, -1.2), 2, 0),
        (FopaParams::new(0.3, 0.5, 0.5, 1.0, 1.0).unwrap(), Complex64::new(1.0, 0.0), 0, 0),
    ];
    for (p, alpha, m, n) in cases {
        let coeffs = transfer_coefficients(&p).unwrap();
        let analytic = Moments::from_gamma(&EstimationConfig::new(m, n, alpha).unwrap(), &coeffs).unwrap();
        let pre = build_converged_pre_subtraction_state(&p, alpha, 2, 2, TAIL).unwrap();
        let state = subtract_and_normalize(&pre, m, n).unwrap();
        for (x, y) in reported(&oracle_moments(&state)).iter().zip(reported(&analytic)) {
            assert!(rel(*x, y) < 1e-8, "{p:?}: {x} vs {y}");
        }
        let (f, g) = (oracle_qfim(&state), analytic.qfim());
        assert!(f.max_abs_diff(&g) < 1e-8 * g.aa.abs().max(g.bb.abs()));

        // an off-diagonal (complex) moment against the raw generating function
        let ix = GammaIndex::new(m, n, 2, 1, 0, 1);
        let exponent = ExponentForm::new(&coeffs, alpha);
        let norm = gamma(GammaIndex::new(m, n, 0, 0, 0, 0), &exponent).unwrap().re;
        let expected = gamma(ix, &exponent).unwrap() / norm;
        let got = oracle_moment(&state, 2, 1, 0, 1);
        assert!((got - expected).norm() < 1e-8 * expected.norm().max(1.0), "{got} vs {expected}");
    }
}
