//! Global functionals: the BMO seminorm as a supremum of interval
//! oscillations, VMO modulus curves, BMO distances, the jump lower-bound
//! diagnostic, uniform-convergence checking for monotone sequences, and
//! the one-dimensional transfer check between the decreasing and the
//! symmetric decreasing rearrangement.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcspace::StepFunction;
use crate::interval::Interval;
use crate::oscillation::{mean_oscillation, BasisSpec, OscIndex};
use crate::rearrange::RearrangementResult;

/// Result of the interval-supremum search. `value` is a max over probed
/// intervals, so it never over-reports the true supremum; `tol` is the
/// claimed optimization slack, carried so downstream checks can budget
/// for it.
#[derive(Debug, Clone, Serialize)]
pub struct SupResult {
    pub value: f64,
    pub witness: Interval,
    pub tol: f64,
    pub evaluations: u64,
}

/// The small-scale oscillation curve omega(delta) = sup over shapes of
/// measure at most delta. `near_origin` restricts shapes to a left
/// neighbourhood of the domain, the criterion relevant for decreasing
/// functions.
#[derive(Debug, Clone, Serialize)]
pub struct ModulusCurve {
    pub deltas: Vec<f64>,
    pub omegas: Vec<f64>,
    pub near_origin: bool,
    pub tol: f64,
}

impl ModulusCurve {
    pub fn min_omega(&self) -> f64 {
        self.omegas.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("delta,omega\n");
        for (d, w) in self.deltas.iter().zip(&self.omegas) {
            out.push_str(&format!("{d},{w}\n"));
        }
        out
    }
}

const TOP_CANDIDATES: usize = 16;
const GOLDEN_ITERS: usize = 48;
const BREAKPOINT_CAP: usize = 768;
const GRID_CAP: usize = 1536;
const PAIR_CAP: usize = 200_000;
const INVPHI: f64 = 0.618_033_988_749_894_8;

struct Candidate {
    a: f64,
    b: f64,
    value: f64,
}

fn better(x: &Candidate, y: &Candidate) -> bool {
    x.value > y.value
        || (x.value == y.value && (x.a, x.b) < (y.a, y.b))
}

/// Golden-section maximization on [lo, hi]; returns the best abscissa,
/// its value, and the evaluation count.
fn golden_max<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, min_width: f64) -> (f64, f64, u64) {
    if hi - lo <= min_width {
        let x = 0.5 * (lo + hi);
        return (x, f(x), 1);
    }
    let mut x1 = hi - INVPHI * (hi - lo);
    let mut x2 = lo + INVPHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2u64;
    for _ in 0..GOLDEN_ITERS {
        if hi - lo <= min_width {
            break;
        }
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INVPHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INVPHI * (hi - lo);
            f2 = f(x2);
        }
        evals += 1;
    }
    if f1 >= f2 {
        (x1, f1, evals)
    } else {
        (x2, f2, evals)
    }
}

/// Supremum search over intervals (a, b) inside `window` with
/// b - a <= max_len: breakpoint pairs, a uniform endpoint grid crossed
/// with a geometric length ladder, centered straddles, and anchored
/// prefixes, followed by coordinate-wise golden-section refinement of
/// the best candidates.
fn sup_in_window(
    idx: &OscIndex<'_>,
    window: Interval,
    max_len: f64,
    tol: f64,
) -> SupResult {
    let s = idx.step();
    let dom_len = s.domain().len();
    let win_len = window.len();
    let max_len = max_len.min(win_len);
    let min_len = (1e-11 * dom_len).min(0.25 * max_len).max(1e-300);

    // endpoint candidates: subsampled breakpoints and a uniform grid
    let mut bp_sub: Vec<f64> = Vec::new();
    {
        let bps = s.breakpoints();
        let lo = bps.partition_point(|&x| x < window.a);
        let hi = bps.partition_point(|&x| x <= window.b);
        let inside = &bps[lo..hi];
        let stride = inside.len().div_ceil(BREAKPOINT_CAP).max(1);
        for (i, &x) in inside.iter().enumerate() {
            if i % stride == 0 || i + 1 == inside.len() {
                bp_sub.push(x);
            }
        }
    }
    let h_spec = tol * dom_len / 8.0;
    let grid_n = ((win_len / h_spec).ceil() as usize).clamp(8, GRID_CAP);
    let mut anchors: Vec<f64> = (0..=grid_n)
        .map(|i| window.a + win_len * (i as f64) / (grid_n as f64))
        .collect();
    anchors.extend_from_slice(&bp_sub);
    anchors.sort_by(f64::total_cmp);
    anchors.dedup();

    // length ladder: geometric halving from the cap
    let mut ladder = Vec::new();
    let mut l = max_len;
    while l >= min_len.max(max_len * 2_f64.powi(-44)) {
        ladder.push(l);
        l *= 0.5;
    }
    if ladder.is_empty() {
        ladder.push(max_len);
    }

    let clip = |a: f64, b: f64| -> Option<(f64, f64)> {
        let a = a.max(window.a);
        let b = b.min(window.b);
        if b - a >= min_len && b - a <= max_len * (1.0 + 1e-12) {
            Some((a, b))
        } else {
            None
        }
    };

    let mut probes: Vec<(f64, f64)> = Vec::new();
    // breakpoint pairs; lengths beyond the cap are pruned by sortedness
    'outer: for i in 0..bp_sub.len() {
        for j in (i + 1)..bp_sub.len() {
            let (a, b) = (bp_sub[i], bp_sub[j]);
            if b - a > max_len {
                break;
            }
            if let Some(p) = clip(a, b) {
                probes.push(p);
            }
            if probes.len() >= PAIR_CAP {
                break 'outer;
            }
        }
    }
    // anchor x ladder, both directions, plus straddles
    for &x in &anchors {
        for &l in &ladder {
            if let Some(p) = clip(x, x + l) {
                probes.push(p);
            }
            if let Some(p) = clip(x - l, x) {
                probes.push(p);
            }
            if let Some(p) = clip(x - 0.5 * l, x + 0.5 * l) {
                probes.push(p);
            }
        }
    }
    // window prefix and suffix
    for &l in &ladder {
        if let Some(p) = clip(window.a, window.a + l) {
            probes.push(p);
        }
        if let Some(p) = clip(window.b - l, window.b) {
            probes.push(p);
        }
    }
    // exhaustive cell-pair boxes for small inputs: every endpoint
    // configuration is seeded and polished on its own, so narrow basins
    // between breakpoints cannot hide behind the top-candidate cut
    let mut boxes: Vec<(f64, f64, f64, f64)> = Vec::new();
    {
        let bps = s.breakpoints();
        let lo = bps.partition_point(|&x| x <= window.a).saturating_sub(1);
        let hi = bps.partition_point(|&x| x < window.b);
        if hi - lo <= 128 {
            for i in lo..hi {
                let (ia, ib) = (bps[i].max(window.a), bps[i + 1].min(window.b));
                if ib <= ia {
                    continue;
                }
                for j in (i + 1)..hi {
                    let (ja, jb) = (bps[j].max(window.a), bps[j + 1].min(window.b));
                    if jb <= ja {
                        continue;
                    }
                    if ja - ib > max_len {
                        break;
                    }
                    boxes.push((ia, ib, ja, jb));
                }
            }
        }
    }
    let seeded_boxes = !boxes.is_empty();
    if probes.is_empty() && boxes.is_empty() {
        let fallback = clip(window.a, window.b).unwrap_or((window.a, window.b));
        probes.push(fallback);
    }

    let values: Vec<f64> = probes
        .par_iter()
        .map(|&(a, b)| idx.oscillation(a, b))
        .collect();
    let mut evaluations = probes.len() as u64;
    let move_tol = tol * dom_len / 64.0;

    let mut order: Vec<usize> = (0..probes.len()).collect();
    order.sort_by(|&i, &j| {
        values[j]
            .total_cmp(&values[i])
            .then(probes[i].0.total_cmp(&probes[j].0))
            .then(probes[i].1.total_cmp(&probes[j].1))
    });

    let mut best = if probes.is_empty() {
        Candidate {
            a: window.a,
            b: window.b,
            value: idx.oscillation(window.a, window.b),
        }
    } else {
        Candidate {
            a: probes[order[0]].0,
            b: probes[order[0]].1,
            value: values[order[0]],
        }
    };

    // per-box search: seed a coarse lattice inside every cell pair and
    // polish the best seed with in-box golden ascent
    let box_results: Vec<(Candidate, u64)> = boxes
        .par_iter()
        .map(|&(ia, ib, ja, jb)| {
            let mut local_evals = 0u64;
            let mut top = Candidate {
                a: ia,
                b: jb,
                value: f64::NEG_INFINITY,
            };
            for fa in [0.25, 0.5, 0.75] {
                for fb in [0.25, 0.5, 0.75] {
                    let a = ia + fa * (ib - ia);
                    let b = ja + fb * (jb - ja);
                    if b > a && b - a >= min_len && b - a <= max_len {
                        local_evals += 1;
                        let cand = Candidate {
                            a,
                            b,
                            value: idx.oscillation(a, b),
                        };
                        if better(&cand, &top) {
                            top = cand;
                        }
                    }
                }
            }
            if !top.value.is_finite() {
                return (top, local_evals);
            }
            let (mut a, mut b, mut val) = (top.a, top.b, top.value);
            for _ in 0..3 {
                let lo = ia.max(b - max_len);
                let hi = ib.min(b - min_len);
                if hi > lo {
                    let (na, nv, ev) =
                        golden_max(&|x| idx.oscillation(x, b), lo, hi, 0.25 * move_tol);
                    local_evals += ev;
                    if nv > val {
                        val = nv;
                        a = na;
                    }
                }
                let lo2 = ja.max(a + min_len);
                let hi2 = jb.min(a + max_len);
                if hi2 > lo2 {
                    let (nb, nv, ev) =
                        golden_max(&|x| idx.oscillation(a, x), lo2, hi2, 0.25 * move_tol);
                    local_evals += ev;
                    if nv > val {
                        val = nv;
                        b = nb;
                    }
                }
            }
            (Candidate { a, b, value: val }, local_evals)
        })
        .collect();
    for (cand, ev) in box_results {
        evaluations += ev;
        if cand.value.is_finite() && better(&cand, &best) {
            best = cand;
        }
    }

    // refinement: local golden ascent on each endpoint in turn
    let refine_count = if probes.len() <= 4096 {
        probes.len().min(64)
    } else if seeded_boxes {
        64
    } else {
        TOP_CANDIDATES
    };
    let h_eff = win_len / (grid_n as f64);
    let refined: Vec<(Candidate, u64)> = order[..refine_count.min(order.len())]
        .par_iter()
        .map(|&pi| {
            let (mut a, mut b) = probes[pi];
            let mut val = values[pi];
            let mut local_evals = 0u64;
            for _round in 0..4 {
                let radius = (2.0 * h_eff).max(0.5 * (b - a));
                // left endpoint
                let lo = (b - max_len).max(window.a).max(a - radius);
                let hi = (b - min_len).min(a + radius);
                if hi > lo {
                    let (na, nv, ev) = golden_max(&|x| idx.oscillation(x, b), lo, hi, move_tol);
                    local_evals += ev;
                    if nv > val {
                        val = nv;
                        a = na;
                    }
                }
                // right endpoint
                let lo2 = (a + min_len).max(b - radius);
                let hi2 = (a + max_len).min(window.b).min(b + radius);
                let mut moved = 0.0;
                if hi2 > lo2 {
                    let (nb, nv, ev) = golden_max(&|x| idx.oscillation(a, x), lo2, hi2, move_tol);
                    local_evals += ev;
                    if nv > val {
                        moved = (nb - b).abs();
                        val = nv;
                        b = nb;
                    }
                }
                if moved < move_tol {
                    break;
                }
            }
            (Candidate { a, b, value: val }, local_evals)
        })
        .collect();

    for (cand, ev) in refined {
        evaluations += ev;
        if better(&cand, &best) {
            best = cand;
        }
    }

    SupResult {
        value: best.value,
        witness: Interval {
            a: best.a,
            b: best.b,
        },
        tol,
        evaluations,
    }
}

/// The BMO seminorm of a step function: max over probed intervals of the
/// mean oscillation, honoring `constraint.max_measure` when set.
pub fn bmo_seminorm(s: &StepFunction, constraint: &BasisSpec, tol: f64) -> Result<SupResult> {
    constraint.validate()?;
    if !(tol > 0.0) {
        return Err(Error::InvalidDescriptor {
            field: "tol".into(),
            reason: "must be positive".into(),
        });
    }
    let idx = OscIndex::build(s);
    let max_len = constraint.max_measure.unwrap_or(f64::INFINITY);
    Ok(sup_in_window(&idx, s.domain(), max_len, tol))
}

/// The VMO modulus curve: omega(delta) for each delta in a decreasing
/// list, each a capped-measure seminorm search; with `near_origin`, only
/// shapes inside [left end, left end + delta) are admitted. The returned
/// curve is made monotone by carrying every small-scale witness upward.
pub fn vmo_modulus(
    s: &StepFunction,
    deltas: &[f64],
    near_origin: bool,
    tol: f64,
) -> Result<ModulusCurve> {
    if deltas.is_empty() {
        return Err(Error::InvalidDescriptor {
            field: "deltas".into(),
            reason: "need at least one scale".into(),
        });
    }
    if deltas.iter().any(|&d| !(d > 0.0)) {
        return Err(Error::InvalidDescriptor {
            field: "deltas".into(),
            reason: "scales must be positive".into(),
        });
    }
    if deltas.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidDescriptor {
            field: "deltas".into(),
            reason: "scales must be sorted decreasing".into(),
        });
    }
    let idx = OscIndex::build(s);
    let dom = s.domain();
    let mut omegas = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let window = if near_origin {
            Interval::new(dom.a, (dom.a + delta).min(dom.b))?
        } else {
            dom
        };
        omegas.push(sup_in_window(&idx, window, delta, tol).value);
    }
    // a witness at a small scale is admissible at every larger scale
    for i in (0..omegas.len().saturating_sub(1)).rev() {
        if omegas[i] < omegas[i + 1] {
            omegas[i] = omegas[i + 1];
        }
    }
    Ok(ModulusCurve {
        deltas: deltas.to_vec(),
        omegas,
        near_origin,
        tol,
    })
}

/// BMO distance: the seminorm of the cellwise difference on the merged
/// breakpoint set.
pub fn bmo_distance(s1: &StepFunction, s2: &StepFunction, tol: f64) -> Result<SupResult> {
    let diff = s1.merge_with(s2, |a, b| a - b)?;
    bmo_seminorm(&diff, &BasisSpec::default(), tol)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct JumpGapCheck {
    pub gap: f64,
    pub bound: f64,
    pub bound_ok: bool,
}

/// Checks the jump bound: the largest interior jump of the rearrangement
/// is at most (2q)^{-1} times the small-scale oscillation of the
/// pre-rearrangement function.
pub fn jump_gap_bound_check(
    r: &RearrangementResult,
    curve: &ModulusCurve,
    q: f64,
) -> Result<JumpGapCheck> {
    if !(q > 0.0 && q <= 0.25) {
        return Err(Error::InvalidDescriptor {
            field: "q".into(),
            reason: format!("must lie in (0, 1/4], got {q}"),
        });
    }
    let bound = curve.min_omega() / (2.0 * q);
    let ok = r.jump_gap <= bound + curve.tol;
    Ok(JumpGapCheck {
        gap: r.jump_gap,
        bound,
        bound_ok: ok,
    })
}

/// Per-index sup distance between each rearrangement in `seq` and
/// `limit`, sampled on a dense grid (>= 4096 points plus all breakpoints
/// inside the compact window).
pub fn polya_uniform_check(
    seq: &[RearrangementResult],
    limit: &StepFunction,
    window: Interval,
) -> Result<Vec<f64>> {
    let dom = limit.domain();
    if window.a <= dom.a || window.b >= dom.b {
        return Err(Error::NotCompactlyContained {
            a: window.a,
            b: window.b,
            lo: dom.a,
            hi: dom.b,
        });
    }
    let mut out = Vec::with_capacity(seq.len());
    for r in seq {
        let rdom = r.fstar.domain();
        if window.a <= rdom.a || window.b >= rdom.b {
            return Err(Error::NotCompactlyContained {
                a: window.a,
                b: window.b,
                lo: rdom.a,
                hi: rdom.b,
            });
        }
        let mut sup = 0.0_f64;
        let n = 4096;
        for i in 0..=n {
            let x = window.a + window.len() * (i as f64) / (n as f64);
            sup = sup.max((r.fstar.eval(x) - limit.eval(x)).abs());
        }
        for src in [limit.breakpoints(), r.fstar.breakpoints()] {
            for &x in src {
                if window.contains(x) {
                    sup = sup.max((r.fstar.eval(x) - limit.eval(x)).abs());
                }
            }
        }
        out.push(sup);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SdrTransferCheck {
    pub lhs: f64,
    pub rhs_best: f64,
    pub ok: bool,
}

/// One-dimensional transfer bound between radial profiles and decreasing
/// rearrangements: the oscillation of Sf1 - Sf2 on a cube Q inside
/// B(0, R) is bounded by twice the oscillation of f1* - f2* on some
/// interval of length at most 2 diam(Q). The search family consists of
/// grid intervals containing the radial image of Q; `rhs_best` is the
/// tightest witnessing bound.
pub fn sdr_transfer_check(
    r1: &RearrangementResult,
    r2: &RearrangementResult,
    radius: f64,
    q: Interval,
) -> Result<SdrTransferCheck> {
    let d = q.len();
    let c = q.midpoint();
    if c.abs() > radius - 0.5 * d + 1e-12 * radius {
        return Err(Error::CubeOutsideBall {
            center: c,
            diameter: d,
            radius,
        });
    }
    for r in [r1, r2] {
        let len = r.fstar.domain().len();
        if len < 2.0 * radius {
            return Err(Error::RadiusOutOfRange {
                radius,
                s: 2.0 * radius,
                len,
            });
        }
    }

    // profile difference on Q: breakpoints where 2|x| crosses a
    // rearrangement breakpoint
    let mut pxs: Vec<f64> = vec![q.a, q.b];
    if q.contains(0.0) {
        pxs.push(0.0);
    }
    let hi_abs = q.a.abs().max(q.b.abs());
    for src in [r1.fstar.breakpoints(), r2.fstar.breakpoints()] {
        for &s in src {
            if s <= 0.0 || s > 2.0 * hi_abs {
                continue;
            }
            for x in [s / 2.0, -s / 2.0] {
                if q.contains(x) {
                    pxs.push(x);
                }
            }
        }
    }
    pxs.sort_by(f64::total_cmp);
    pxs.dedup();
    let mut pvs = Vec::with_capacity(pxs.len() - 1);
    for w in pxs.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let s = 2.0 * mid.abs();
        pvs.push(r1.fstar.eval(s) - r2.fstar.eval(s));
    }
    let profile = StepFunction::new(q, pxs, pvs)?;
    let lhs = mean_oscillation(&profile, q)?;

    // rearrangement-side difference on (0, 2R)
    let sub = Interval::new(0.0, 2.0 * radius)?;
    let d1 = r1.fstar.restrict(sub)?;
    let d2 = r2.fstar.restrict(sub)?;
    let diff = d1.merge_with(&d2, |a, b| a - b)?;

    let lo_abs = if q.contains(0.0) || q.a == 0.0 || q.b == 0.0 {
        0.0
    } else {
        q.a.abs().min(q.b.abs())
    };
    let image = Interval::new(2.0 * lo_abs, 2.0 * hi_abs)?;
    let max_len = 2.0 * d;

    let mut family: Vec<Interval> = vec![image];
    let n = 512;
    let g = |i: usize| 2.0 * radius * (i as f64) / (n as f64);
    for i in 0..n {
        let u = g(i);
        if u > image.a {
            continue;
        }
        for j in (i + 1)..=n {
            let v = g(j);
            if v < image.b {
                continue;
            }
            if v - u > max_len {
                break;
            }
            family.push(Interval { a: u, b: v });
        }
    }

    let tol = 1e-9 * lhs.abs().max(1.0);
    let mut rhs_best = f64::INFINITY;
    let mut rhs_max = 0.0_f64;
    for cand in &family {
        let val = 2.0 * mean_oscillation(&diff, *cand)?;
        rhs_max = rhs_max.max(val);
        if val + tol >= lhs && val < rhs_best {
            rhs_best = val;
        }
    }
    let ok = rhs_best.is_finite();
    Ok(SdrTransferCheck {
        lhs,
        rhs_best: if ok { rhs_best } else { rhs_max },
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indicator() -> StepFunction {
        StepFunction::new(
            Interval::new(-4.0, 5.0).unwrap(),
            vec![-4.0, 0.0, 1.0, 5.0],
            vec![0.0, 1.0, 0.0],
        )
        .unwrap()
    }

    #[test]
    fn indicator_seminorm_is_half() {
        let r = bmo_seminorm(&indicator(), &BasisSpec::default(), 1e-3).unwrap();
        assert!((r.value - 0.5).abs() < 1e-3, "value {}", r.value);
        let w = r.witness;
        let support = Interval::new(0.0, 1.0).unwrap();
        let rho = support.overlap(&w) / w.len();
        assert!((rho - 0.5).abs() < 1e-2, "rho {rho}");
        let at_witness = mean_oscillation(&indicator(), w).unwrap();
        assert!((at_witness - r.value).abs() <= 1e-12 * r.value.max(1.0));
    }

    #[test]
    fn constant_seminorm_is_zero() {
        let s = StepFunction::constant(Interval::new(0.0, 1.0).unwrap(), 7.0);
        let r = bmo_seminorm(&s, &BasisSpec::default(), 1e-3).unwrap();
        // partial-cell means of a constant round at the last ulp
        assert!(r.value <= 1e-12, "value {}", r.value);
    }

    #[test]
    fn modulus_of_indicator_stays_half() {
        let curve = vmo_modulus(&indicator(), &[1e-1, 1e-2, 1e-3, 1e-4], false, 1e-3).unwrap();
        for (&d, &w) in curve.deltas.iter().zip(&curve.omegas) {
            assert!((w - 0.5).abs() < 1e-3, "omega({d}) = {w}");
        }
    }

    #[test]
    fn modulus_is_monotone() {
        let curve = vmo_modulus(&indicator(), &[1.0, 0.5, 0.1, 0.02], false, 1e-3).unwrap();
        for w in curve.omegas.windows(2) {
            assert!(w[0] >= w[1] - 1e-15);
        }
    }

    #[test]
    fn distance_to_self_is_zero() {
        let s = indicator();
        let r = bmo_distance(&s, &s, 1e-3).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn distance_requires_common_domain() {
        let s = indicator();
        let t = StepFunction::constant(Interval::new(0.0, 1.0).unwrap(), 1.0);
        assert!(matches!(
            bmo_distance(&s, &t, 1e-3),
            Err(crate::error::Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn jump_bound_on_indicator_is_tight() {
        use crate::rearrange::decreasing_rearrangement;
        let s = StepFunction::new(
            Interval::new(-1.0, 1.0).unwrap(),
            vec![-1.0, 0.0, 1.0],
            vec![0.0, 1.0],
        )
        .unwrap();
        let r = decreasing_rearrangement(&s);
        assert_eq!(r.jump_gap, 1.0);
        let curve = vmo_modulus(&s, &[1e-1, 1e-2, 1e-3], false, 1e-3).unwrap();
        let check = jump_gap_bound_check(&r, &curve, 0.25).unwrap();
        assert!(check.bound_ok, "gap {} bound {}", check.gap, check.bound);
    }

    #[test]
    fn two_level_step_jump_bound() {
        use crate::rearrange::decreasing_rearrangement;
        let s = StepFunction::new(
            Interval::new(0.0, 2.0).unwrap(),
            vec![0.0, 1.0, 2.0],
            vec![3.0, 1.0],
        )
        .unwrap();
        let r = decreasing_rearrangement(&s);
        assert_eq!(r.jump_gap, 2.0);
        let curve = vmo_modulus(&s, &[1e-1, 1e-2], false, 1e-3).unwrap();
        assert!((curve.min_omega() - 1.0).abs() < 1e-3);
        let check = jump_gap_bound_check(&r, &curve, 0.25).unwrap();
        assert!(check.bound_ok);
    }

    #[test]
    fn polya_constant_offsets() {
        use crate::rearrange::decreasing_rearrangement;
        let dom = Interval::new(0.0, 2.0).unwrap();
        let base = StepFunction::new(dom, vec![0.0, 1.0, 2.0], vec![2.0, 1.0]).unwrap();
        let limit = decreasing_rearrangement(&base).fstar;
        let seq: Vec<_> = (1..=4)
            .map(|k| decreasing_rearrangement(&base.map(|v| v + 1.0 / k as f64)))
            .collect();
        let window = Interval::new(0.1, 1.9).unwrap();
        let sups = polya_uniform_check(&seq, &limit, window).unwrap();
        for (k, sup) in sups.iter().enumerate() {
            let expect = 1.0 / (k as f64 + 1.0);
            assert!((sup - expect).abs() < 1e-12, "k={k} sup={sup}");
        }
    }

    #[test]
    fn polya_rejects_non_compact_window() {
        use crate::rearrange::decreasing_rearrangement;
        let dom = Interval::new(0.0, 2.0).unwrap();
        let base = StepFunction::constant(dom, 1.0);
        let limit = decreasing_rearrangement(&base).fstar;
        let err = polya_uniform_check(&[], &limit, Interval::new(0.0, 1.0).unwrap());
        assert!(matches!(err, Err(Error::NotCompactlyContained { .. })));
    }

    #[test]
    fn sdr_transfer_trivial_for_constants() {
        use crate::rearrange::decreasing_rearrangement;
        let dom = Interval::new(0.0, 4.0).unwrap();
        let c = StepFunction::constant(dom, 3.0);
        let z = StepFunction::constant(dom, 0.0);
        let r1 = decreasing_rearrangement(&c);
        let r2 = decreasing_rearrangement(&z);
        let q = Interval::new(-0.2, 0.2).unwrap();
        let check = sdr_transfer_check(&r1, &r2, 1.0, q).unwrap();
        assert!(check.ok);
        assert!(check.lhs <= 1e-12, "lhs {}", check.lhs);
    }

    #[test]
    fn sdr_transfer_rejects_bad_geometry() {
        use crate::rearrange::decreasing_rearrangement;
        let dom = Interval::new(0.0, 4.0).unwrap();
        let c = StepFunction::constant(dom, 3.0);
        let r = decreasing_rearrangement(&c);
        let q = Interval::new(0.8, 1.2).unwrap();
        assert!(matches!(
            sdr_transfer_check(&r, &r, 1.0, q),
            Err(Error::CubeOutsideBall { .. })
        ));
    }
}
