//! Oracle agreement: every closed form attached by the catalog must
//! match the compiled pipeline at sampled points, within
//! max(1e-3, 1% of the oracle value).

mod common;

use common::oracle;

use meanosc::catalog::{compile_pair, make_example, ExampleId, ExampleName};
use meanosc::funcspace::compile;
use meanosc::rearrange::{decreasing_rearrangement, distribution};

fn agree(got: f64, want: f64, what: &str) {
    let tol = (0.01 * want.abs()).max(1e-3);
    assert!(
        (got - want).abs() <= tol,
        "{what}: pipeline {got}, oracle {want}, tol {tol}"
    );
}

fn sample_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    // log-spaced samples suit quantities that live across scales
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

#[test]
fn series_a_oracles() {
    let ex = make_example(&ExampleId::named(ExampleName::SeriesA)).unwrap();
    let s = compile(&ex.f, &ex.grid, ex.domain).unwrap();
    let mu = ex.oracle_mu_f.as_ref().unwrap();
    for alpha in sample_points(0.2, 4.0, 32) {
        agree(distribution(&s, alpha), mu(alpha), "series_a mu");
    }
    let r = decreasing_rearrangement(&s);
    let fstar = ex.oracle_fstar_f.as_ref().unwrap();
    // quantiles meaningful inside the support measure 2 * sum(e^-k)
    for q in sample_points(1e-3, 1.1, 32) {
        agree(r.fstar.eval(q), fstar(q), "series_a fstar");
    }
}

#[test]
fn series_c_fstar_oracle() {
    let ex = make_example(&ExampleId::named(ExampleName::SeriesC)).unwrap();
    let s = compile(&ex.f, &ex.grid, ex.domain).unwrap();
    let r = decreasing_rearrangement(&s);
    let fstar = ex.oracle_fstar_f.as_ref().unwrap();
    // the infinite-series closed form is valid where the truncation tail
    // is negligible: quantiles below mu(1.5)
    for q in sample_points(0.05, 3.0, 32) {
        agree(r.fstar.eval(q), fstar(q), "series_c fstar");
    }
    // spot value: f*(2) = 1 + log 2
    agree(r.fstar.eval(2.0), 1.0 + 2.0_f64.ln(), "series_c f*(2)");
}

#[test]
fn ex_discont_oracles() {
    for k in [2u32, 5] {
        let id = ExampleId::named(ExampleName::ExDiscont).with_k(k);
        let ex = make_example(&id).unwrap();
        let pair = compile_pair(&id).unwrap();
        let mu = ex.oracle_mu_fk.as_ref().unwrap();
        for alpha in sample_points(0.05, 3.0, 32) {
            agree(distribution(&pair.f_k, alpha), mu(alpha), "ex_discont mu_fk");
        }
        let fstar = ex.oracle_fstar_fk.as_ref().unwrap();
        for q in sample_points(1e-3, 1.9, 32) {
            agree(pair.rk.fstar.eval(q), fstar(q), "ex_discont fstar_fk");
        }
        // the high branch: value 2 at quantile e^{-2k}
        let q = (-2.0 * k as f64).exp();
        agree(pair.rk.fstar.eval(q), 2.0, "ex_discont high branch");
    }
}

#[test]
fn ex_nocont_oracles_and_limit_structure() {
    let k = 12u32;
    let id = ExampleId::named(ExampleName::ExNocont).with_k(k);
    let ex = make_example(&id).unwrap();
    let pair = compile_pair(&id).unwrap();
    let mu_f = ex.oracle_mu_f.as_ref().unwrap();
    for alpha in sample_points(0.3, 2.5, 32) {
        agree(distribution(&pair.f, alpha), mu_f(alpha), "ex_nocont mu_f");
    }
    agree(mu_f(1.0), 4.0 / std::f64::consts::E, "mu_f(1) closed form");
    let mu_fk = ex.oracle_mu_fk.as_ref().unwrap();
    for alpha in sample_points(0.3, 2.5, 32) {
        agree(distribution(&pair.f_k, alpha), mu_fk(alpha), "ex_nocont mu_fk");
    }
    // truncated limit structure: (f_k* - 1)_+ against the inverted
    // truncated distribution at the sampled quantiles
    for s in [0.5, 1.0, 2.0] {
        let got = (pair.rk.fstar.eval(s) - 1.0).max(0.0);
        let alpha = oracle::nocont_fk_quantile(k as f64, s, 1.0, 4.0);
        let want = (alpha - 1.0).max(0.0);
        assert!(
            (got - want).abs() <= 1e-2,
            "limit structure at s={s}: {got} vs {want}"
        );
    }
}

#[test]
fn ex_inf_oracles() {
    for k in [1u32, 5] {
        let id = ExampleId::named(ExampleName::ExInf).with_k(k);
        let ex = make_example(&id).unwrap();
        let pair = compile_pair(&id).unwrap();
        let mu = ex.oracle_mu_fk.as_ref().unwrap();
        for alpha in sample_points(0.2, 1.9, 32) {
            agree(distribution(&pair.f_k, alpha), mu(alpha), "ex_inf mu_fk");
        }
        let fstar = ex.oracle_fstar_fk.as_ref().unwrap();
        for q in sample_points(0.05, 0.9, 16) {
            let q = q * pair.rk.fstar.domain().len();
            agree(pair.rk.fstar.eval(q), fstar(q), "ex_inf fstar_fk");
        }
    }
}

#[test]
fn logbump_oracles_across_exponents() {
    for p in [1.0, 0.5, 0.25] {
        let id = ExampleId::named(ExampleName::LogbumpP).with_p(p);
        let ex = make_example(&id).unwrap();
        let s = compile(&ex.f, &ex.grid, ex.domain).unwrap();
        let mu = ex.oracle_mu_f.as_ref().unwrap();
        for alpha in sample_points(0.1, 2.0, 32) {
            agree(distribution(&s, alpha), mu(alpha), "logbump mu");
        }
        let r = decreasing_rearrangement(&s);
        let fstar = ex.oracle_fstar_f.as_ref().unwrap();
        for q in sample_points(1e-3, 1.9, 32) {
            agree(r.fstar.eval(q), fstar(q), "logbump fstar");
        }
    }
}
