//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;

use fopa_core::verify::{self, CheckResult, Fault, Level};

type Criterion = (&'static str, fn() -> CheckResult);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("optimal feedback anchor", verify::r_opt_anchor),
        ("symplectic invariants", verify::symplectic_invariants),
        ("Mason gain formula vs closed form", verify::mason_vs_closed_form),
        ("generating function vs series oracle", || verify::gamma_vs_series(Level::Full)),
        ("analytic pipeline vs Fock oracle", || verify::fock_oracle(Level::Full)),
        ("loss reductions", || verify::loss_reductions(Fault::None)),
        ("two-parameter bound ordering", || verify::two_parameter_ordering(Level::Full)),
        ("figure-shape regression", verify::figure_shapes),
        ("correlation trends", verify::correlation_trends),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let result = check();
        if !result.passed {
            failed += 1;
        }
        println!("[{}/9] {title}: {result}", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
