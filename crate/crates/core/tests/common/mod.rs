#![allow(dead_code)] // each test binary uses a different slice of these helpers

//! Shared helpers for the integration suites: frozen oracle constants,
//! the independent oracles that produced them, and corpus builders.

pub mod oracle;

use meanosc::funcspace::{compile, FunctionDescriptor, GridSpec, StepFunction};
use meanosc::Interval;

/// Supremum of interval mean oscillation of (-log|x|)_+, frozen from the
/// closed-form oracle in `oracle::log_bump_supremum`. The maximizing
/// intervals are straddles (-r, K r) with K about 7.276; symmetric
/// straddles give only 2/e.
pub const LOG_BUMP_SUP: f64 = 0.930585624275;

/// Small-scale oscillation of the p = 1/2 bump at delta = 1e-1 and 1e-4,
/// frozen from the dense-scan oracle in `oracle::p_half_omega`.
pub const P_HALF_OMEGA_1E1: f64 = 0.233515;
pub const P_HALF_OMEGA_1E4: f64 = 0.140306;

/// Oscillation of (1 - sqrt(ln(4/s)))_+ on (0, 2), frozen from the
/// quadrature oracle in `oracle::nocont_v`.
pub const NOCONT_V: f64 = 0.0339796;

pub fn log_bump(p: f64) -> FunctionDescriptor {
    FunctionDescriptor::LogPowBump {
        a: 1.0,
        b: 1.0,
        x0: 0.0,
        p,
    }
}

pub fn indicator_unit() -> FunctionDescriptor {
    FunctionDescriptor::Indicator {
        support: Interval::new(0.0, 1.0).unwrap(),
    }
}

/// The mesh used by the distribution/rearrangement oracle checks: fine
/// enough for 1e-3 absolute accuracy of quantiles, within the cell cap.
pub fn fine_log_grid() -> GridSpec {
    GridSpec {
        base_cells: 4096,
        grading: 0.9995,
        min_cell: 1e-12,
        quad_tol: 1e-10,
    }
}

pub fn compile_on(f: &FunctionDescriptor, a: f64, b: f64) -> StepFunction {
    let dom = Interval::new(a, b).unwrap();
    compile(f, &GridSpec::default_for(dom), dom).unwrap()
}

pub fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} within {tol}"
    );
}

/// Reports one acceptance line and returns whether the clause held.
pub fn clause(ok: bool, label: &str, detail: String) -> bool {
    println!(
        "  {} {label}: {detail}",
        if ok { "pass" } else { "FAIL" }
    );
    ok
}

pub fn criterion_line(n: u32, ok: bool, summary: &str) {
    println!(
        "criterion {n:02}: {} - {summary}",
        if ok { "PASS" } else { "FAIL" }
    );
}
