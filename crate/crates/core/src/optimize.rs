//! One-dimensional maximisation on a bounded interval: a coarse grid scan
//! locates the best bracket, golden-section search refines it.

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `tol`.
pub fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Outcome of [`grid_then_golden_max`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
}

/// Maximises `f` on `[lo, hi]`. Points where `f` returns `None` are
/// skipped; `None` is returned only if every grid point was skipped.
pub fn grid_then_golden_max<F>(f: F, lo: f64, hi: f64, grid_points: usize, tol: f64) -> Option<Maximum>
where
    F: Fn(f64) -> Option<f64>,
{
    assert!(grid_points >= 2 && hi >= lo);
    let step = (hi - lo) / (grid_points - 1) as f64;
    let at = |i: usize| if i + 1 == grid_points { hi } else { lo + step * i as f64 };
    let mut best: Option<(usize, f64)> = None;
    for i in 0..grid_points {
        if let Some(v) = f(at(i)) {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((i, v));
            }
        }
    }
    let (i, grid_value) = best?;
    let (a, b) = (at(i.saturating_sub(1)), at((i + 1).min(grid_points - 1)));
    let (arg, value) = golden_section_max(|x| f(x).unwrap_or(f64::NEG_INFINITY), a, b, tol);
    // golden section may wander onto a skipped point; never report worse than the grid
    if value.is_finite() && value >= grid_value {
        Some(Maximum { arg, value })
    } else {
        Some(Maximum { arg: at(i), value: grid_value })
    }
}
