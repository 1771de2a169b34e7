//! Seeded property suites for the rearrangement and oscillation
//! invariants. These run from both the test suite and the `proptest`
//! CLI verb; all randomness flows through one ChaCha stream per suite,
//! so a fixed seed reproduces every case bitwise.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::funcspace::StepFunction;
use crate::interval::Interval;
use crate::oscillation::{
    double_integral_oscillation, mean_on, mean_oscillation, median_on, BasisSpec,
};
use crate::rearrange::{decreasing_rearrangement, distribution};
use crate::seminorm::bmo_seminorm;

/// Outcome of one property suite.
#[derive(Debug, Clone)]
pub struct PropReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub const FUNCTIONS_PER_SUITE: usize = 200;
pub const MAX_CELLS: usize = 64;

fn random_step(rng: &mut ChaCha8Rng, lo: f64, hi: f64, vmin: f64, vmax: f64) -> StepFunction {
    let cells = rng.gen_range(1..=MAX_CELLS);
    let mut xs: Vec<f64> = (0..cells - 1).map(|_| rng.gen_range(lo..hi)).collect();
    xs.push(lo);
    xs.push(hi);
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * (hi - lo));
    if xs.len() < 2 {
        xs = vec![lo, hi];
    }
    *xs.first_mut().unwrap() = lo;
    *xs.last_mut().unwrap() = hi;
    let vs = (0..xs.len() - 1).map(|_| rng.gen_range(vmin..vmax)).collect();
    StepFunction::new(Interval::new(lo, hi).unwrap(), xs, vs).unwrap()
}

fn random_shape(rng: &mut ChaCha8Rng, dom: Interval) -> Interval {
    let min_len = 1e-6 * dom.len();
    loop {
        let a = rng.gen_range(dom.a..dom.b);
        let b = rng.gen_range(dom.a..dom.b);
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        if b - a >= min_len {
            return Interval::new(a, b).unwrap();
        }
    }
}

fn rel_close(x: f64, y: f64, rel: f64) -> bool {
    (x - y).abs() <= rel * x.abs().max(y.abs()) + 1e-12
}

/// R1: a function and its rearrangement share the distribution function,
/// bitwise, at 50 sampled levels.
pub fn r1_equimeasurability(seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PropReport::new("R1 equimeasurability");
    for _ in 0..FUNCTIONS_PER_SUITE {
        let s = random_step(&mut rng, 0.0, 10.0, -5.0, 5.0);
        let r = decreasing_rearrangement(&s);
        for _ in 0..50 {
            let alpha = rng.gen_range(0.0..6.0);
            let a = distribution(&s, alpha);
            let b = distribution(&r.fstar, alpha);
            rep.check(a == b, || format!("mu({alpha}) {a} vs {b}"));
        }
    }
    rep
}

/// R2: rearrangement is non-expansive in L1 on common breakpoints and
/// preserves the L1, L2 and sup norms.
pub fn r2_nonexpansive(seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PropReport::new("R2 non-expansive / norm-preserving");
    for _ in 0..FUNCTIONS_PER_SUITE {
        let f = random_step(&mut rng, 0.0, 10.0, 0.0, 8.0);
        // second function on the same breakpoints
        let vs: Vec<f64> = (0..f.num_cells()).map(|_| rng.gen_range(0.0..8.0)).collect();
        let g = StepFunction::new(f.domain(), f.breakpoints().to_vec(), vs).unwrap();
        let rf = decreasing_rearrangement(&f);
        let rg = decreasing_rearrangement(&g);
        let dom = f.domain();
        let lhs = rf.fstar.l1_distance(&rg.fstar, rf.fstar.domain()).unwrap();
        let rhs = f.l1_distance(&g, dom).unwrap();
        rep.check(lhs <= rhs * (1.0 + 1e-12) + 1e-12, || {
            format!("L1 contraction {lhs} > {rhs}")
        });
        rep.check(rel_close(rf.fstar.norm_l1(), f.norm_l1(), 1e-9), || {
            "L1 norm not preserved".into()
        });
        rep.check(rel_close(rf.fstar.norm_l2(), f.norm_l2(), 1e-9), || {
            "L2 norm not preserved".into()
        });
        rep.check(rel_close(rf.fstar.norm_linf(), f.norm_linf(), 1e-9), || {
            "sup norm not preserved".into()
        });
    }
    rep
}

/// R3: rearrangement preserves monotone convergence along increasing
/// chains, pointwise at sampled quantiles.
pub fn r3_monotone_chains(seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PropReport::new("R3 monotone chains");
    for _ in 0..FUNCTIONS_PER_SUITE / 5 {
        let base = random_step(&mut rng, 0.0, 10.0, 0.0, 4.0);
        let mut chain = vec![base.clone()];
        for _ in 1..5 {
            let prev = chain.last().unwrap();
            let inc: Vec<f64> = (0..prev.num_cells())
                .map(|_| rng.gen_range(0.0..1.0))
                .collect();
            let next = StepFunction::new(
                prev.domain(),
                prev.breakpoints().to_vec(),
                prev.values()
                    .iter()
                    .zip(&inc)
                    .map(|(&v, &d)| v + d)
                    .collect(),
            )
            .unwrap();
            chain.push(next);
        }
        let stars: Vec<_> = chain.iter().map(decreasing_rearrangement).collect();
        for _ in 0..64 {
            let s = rng.gen_range(0.0..10.0);
            for w in stars.windows(2) {
                let (lo, hi) = (w[0].fstar.eval(s), w[1].fstar.eval(s));
                rep.check(hi >= lo - 1e-12, || format!("chain decreased at s={s}"));
            }
        }
    }
    rep
}

/// R4: truncation commutes with rearrangement for step functions. The
/// two routes sum tied cell lengths in different orders, so breakpoints
/// may drift by an ulp; values at quantiles away from those slivers
/// agree bitwise, and the L1 gap stays at summation-noise level.
pub fn r4_truncation_commutes(seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PropReport::new("R4 truncation commutes");
    for _ in 0..FUNCTIONS_PER_SUITE {
        let f = random_step(&mut rng, 0.0, 10.0, 0.0, 8.0);
        let rf = decreasing_rearrangement(&f);
        for _ in 0..20 {
            let alpha = rng.gen_range(0.0..4.0);
            let beta = alpha + rng.gen_range(0.1..4.0);
            let clamp_then = decreasing_rearrangement(&f.map(|v| v.max(alpha).min(beta)));
            let then_clamp = rf.fstar.map(|v| v.max(alpha).min(beta));
            let l1 = clamp_then
                .fstar
                .merge_with(&then_clamp, |x, y| (x - y).abs())
                .unwrap()
                .integrate(then_clamp.domain())
                .unwrap();
            rep.check(l1 <= 1e-12, || {
                format!("truncation L1 gap {l1} at ({alpha}, {beta})")
            });
            for _ in 0..10 {
                let s = rng.gen_range(0.0..then_clamp.domain().b);
                let (x, y) = (clamp_then.fstar.eval(s), then_clamp.eval(s));
                rep.check(x == y, || {
                    format!("truncation value mismatch at s={s}: {x} vs {y}")
                });
            }
        }
    }
    rep
}

/// Scaling law: the rearrangement of a f(x/b) is a fstar(s/b).
pub fn scaling_law(seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PropReport::new("scaling law");
    for _ in 0..FUNCTIONS_PER_SUITE {
        let f = random_step(&mut rng, 0.0, 10.0, 0.0, 8.0);
        let a = rng.gen_range(0.1..4.0);
        let b = rng.gen_range(0.1..4.0);
        let rf = decreasing_rearrangement(&f);
        let rt = decreasing_rearrangement(&f.transform(a, b, 0.0).unwrap());
        for _ in 0..16 {
            let s = rng.gen_range(0.0..rt.fstar.domain().b * 0.999);
            let want = a * rf.fstar.eval(s / b);
            let got = rt.fstar.eval(s);
            rep.check(rel_close(got, want, 1e-12), || {
                format!("scaling mismatch at s={s}: {got} vs {want}")
            });
        }
    }
    rep
}

/// Structure of the rearranged output: values nonincreasing, total
/// variation equal to max - min.
pub fn fstar_structure(seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PropReport::new("fstar structure");
    for _ in 0..FUNCTIONS_PER_SUITE {
        let f = random_step(&mut rng, 0.0, 10.0, 0.0, 8.0);
        let r = decreasing_rearrangement(&f);
        let vs = r.fstar.values();
        rep.check(vs.windows(2).all(|w| w[0] >= w[1]), || {
            "values not sorted".into()
        });
        let tv: f64 = vs.windows(2).map(|w| (w[0] - w[1]).abs()).sum();
        let span = vs[0] - vs[vs.len() - 1];
        rep.check(rel_close(tv, span, 1e-12), || {
            format!("tv {tv} vs span {span}")
        });
    }
    rep
}

/// O1 through O7 on random functions and shapes, plus the B2 and B4
/// comparisons against the computed seminorm.
pub fn oscillation_identities(seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PropReport::new("O1-O7 shapewise identities");
    for _ in 0..FUNCTIONS_PER_SUITE {
        let dom = Interval::new(0.0, 10.0).unwrap();
        let f = random_step(&mut rng, 0.0, 10.0, -5.0, 5.0);
        let big = random_shape(&mut rng, dom);
        let shape = random_shape(&mut rng, big);

        let osc = mean_oscillation(&f, shape).unwrap();

        // O1: invariance under added constants
        let c = rng.gen_range(-10.0..10.0);
        let osc_shift = mean_oscillation(&f.map(|v| v + c), shape).unwrap();
        rep.check(rel_close(osc, osc_shift, 1e-9), || {
            format!("O1: {osc} vs {osc_shift}")
        });

        // O2: positive-part form
        let mean = mean_on(&f, shape).unwrap();
        let pos = f
            .map(|v| (v - mean).max(0.0))
            .integrate(shape)
            .unwrap();
        let o2 = 2.0 * pos / shape.len();
        rep.check(rel_close(osc, o2, 1e-12), || format!("O2: {osc} vs {o2}"));

        // O3: absolute value at most doubles oscillation
        let osc_abs = mean_oscillation(&f.map(f64::abs), shape).unwrap();
        rep.check(osc_abs <= 2.0 * osc + 1e-12, || {
            format!("O3: {osc_abs} > 2*{osc}")
        });

        // O4: median bound and median minimality
        let m = median_on(&f, shape).unwrap();
        let dev_m = f.map(|v| (v - m).abs()).integrate(shape).unwrap() / shape.len();
        rep.check(osc <= 2.0 * dev_m + 1e-12, || {
            format!("O4 bound: {osc} > 2*{dev_m}")
        });
        for _ in 0..10 {
            let alpha = rng.gen_range(-6.0..6.0);
            let dev_a = f.map(|v| (v - alpha).abs()).integrate(shape).unwrap() / shape.len();
            rep.check(dev_m <= dev_a * (1.0 + 1e-9) + 1e-12, || {
                format!("O4 minimality: median dev {dev_m} > {dev_a} at {alpha}")
            });
        }

        // O5: double-integral sandwich
        let dbl = double_integral_oscillation(&f, shape).unwrap();
        rep.check(
            osc <= dbl + 1e-9 * osc.max(1.0) && dbl <= 2.0 * osc + 1e-9 * osc.max(1.0),
            || format!("O5: osc {osc} dbl {dbl}"),
        );

        // O6: truncation contracts oscillation
        let alpha = rng.gen_range(-4.0..2.0);
        let beta = alpha + rng.gen_range(0.5..6.0);
        let osc_tr = mean_oscillation(&f.map(|v| v.max(alpha).min(beta)), shape).unwrap();
        rep.check(osc_tr <= osc + 1e-12, || {
            format!("O6: {osc_tr} > {osc}")
        });

        // O7: comparison against a containing shape
        let osc_big = mean_oscillation(&f, big).unwrap();
        rep.check(
            osc <= (big.len() / shape.len()) * osc_big + 1e-12,
            || format!("O7: {osc} vs scaled {osc_big}"),
        );
    }
    rep
}

/// B2: the L1 deviation from the mean on any shape is controlled by the
/// measure times the seminorm.
pub fn b2_l1_bound(seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PropReport::new("B2 L1 bound");
    for _ in 0..FUNCTIONS_PER_SUITE {
        let f = random_step(&mut rng, 0.0, 10.0, -5.0, 5.0);
        let sup = bmo_seminorm(&f, &BasisSpec::default(), 1e-2).unwrap();
        for _ in 0..4 {
            let shape = random_shape(&mut rng, f.domain());
            let mean = mean_on(&f, shape).unwrap();
            let dev = f.map(|v| (v - mean).abs()).integrate(shape).unwrap();
            rep.check(
                dev <= shape.len() * sup.value * (1.0 + 1e-6) + 1e-9,
                || format!("B2: {dev} > |S| * {}", sup.value),
            );
        }
    }
    rep
}

/// B4: for a nonnegative function supported in an interval, oscillation
/// on shapes that leak outside the support decays linearly in the
/// overlap ratio.
pub fn b4_support_bound(seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PropReport::new("B4 support bound");
    for _ in 0..FUNCTIONS_PER_SUITE {
        let dom = Interval::new(0.0, 10.0).unwrap();
        let ia = rng.gen_range(1.0..4.0);
        let ib = ia + rng.gen_range(1.0..4.0);
        let support = Interval::new(ia, ib).unwrap();
        let inner = random_step(&mut rng, ia, ib, 0.0, 6.0);
        let mut xs = vec![dom.a];
        xs.extend_from_slice(inner.breakpoints());
        xs.push(dom.b);
        let mut vs = vec![0.0];
        vs.extend_from_slice(inner.values());
        vs.push(0.0);
        let f = StepFunction::new(dom, xs, vs).unwrap();
        let sup = bmo_seminorm(&f, &BasisSpec::default(), 1e-2).unwrap();
        for _ in 0..4 {
            let shape = random_shape(&mut rng, dom);
            let overlap = support.overlap(&shape);
            if overlap >= shape.len() * (1.0 - 1e-9) {
                continue;
            }
            let osc = mean_oscillation(&f, shape).unwrap();
            let bound = 4.0 * overlap / shape.len() * sup.value;
            rep.check(osc <= bound * (1.0 + 1e-6) + 1e-9, || {
                format!("B4: {osc} > {bound}")
            });
        }
    }
    rep
}

/// The optimizer never under-reports relative to independent probes.
pub fn seminorm_soundness(seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PropReport::new("seminorm soundness");
    for _ in 0..20 {
        let f = random_step(&mut rng, 0.0, 10.0, -5.0, 5.0);
        let sup = bmo_seminorm(&f, &BasisSpec::default(), 1e-2).unwrap();
        for _ in 0..500 {
            let shape = random_shape(&mut rng, f.domain());
            let osc = mean_oscillation(&f, shape).unwrap();
            rep.check(sup.value >= osc - 1e-12, || {
                format!(
                    "probe ({}, {}) reached {} above reported {}",
                    shape.a, shape.b, osc, sup.value
                )
            });
        }
    }
    rep
}

/// Runs every suite with sibling seeds derived from `seed`.
pub fn run_all(seed: u64) -> Vec<PropReport> {
    vec![
        r1_equimeasurability(seed),
        r2_nonexpansive(seed.wrapping_add(1)),
        r3_monotone_chains(seed.wrapping_add(2)),
        r4_truncation_commutes(seed.wrapping_add(3)),
        scaling_law(seed.wrapping_add(4)),
        fstar_structure(seed.wrapping_add(5)),
        oscillation_identities(seed.wrapping_add(6)),
        b2_l1_bound(seed.wrapping_add(7)),
        b4_support_bound(seed.wrapping_add(8)),
        seminorm_soundness(seed.wrapping_add(9)),
    ]
}
