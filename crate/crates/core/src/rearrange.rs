//! Distribution functions, the decreasing rearrangement, the symmetric
//! decreasing radial profile, and rearrangeability diagnosis for
//! well-spaced series.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcspace::{FunctionDescriptor, SeriesSpec, StepFunction};
use crate::interval::Interval;

/// Decreasing rearrangement of a step function plus its inspection data.
///
/// `fstar` lives on (0, |domain|) and is nonincreasing; `jump_gap` is the
/// largest interior value drop; `ess_inf` the final (smallest) value.
#[derive(Debug, Clone)]
pub struct RearrangementResult {
    pub fstar: StepFunction,
    pub jump_gap: f64,
    pub ess_inf: f64,
    pub truncation_stable: bool,
}

/// Metadata serialization for the CSV/JSON external interface.
#[derive(Debug, Clone, Serialize)]
pub struct RearrangementMeta {
    pub jump_gap: f64,
    pub ess_inf: f64,
    pub truncation_stable: bool,
}

impl RearrangementResult {
    pub fn meta(&self) -> RearrangementMeta {
        RearrangementMeta {
            jump_gap: self.jump_gap,
            ess_inf: self.ess_inf,
            truncation_stable: self.truncation_stable,
        }
    }

    /// CSV rows `s_left,s_right,value`, one per cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s_left,s_right,value\n");
        let xs = self.fstar.breakpoints();
        for (i, v) in self.fstar.values().iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", xs[i], xs[i + 1], v));
        }
        out
    }
}

/// Spatial dimension with the unit-ball volume used by the radial
/// profile: omega_1 = 2, omega_2 = pi, omega_n = omega_{n-2} * 2 pi / n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dimension {
    pub n: u32,
    pub omega_n: f64,
}

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDescriptor {
                field: "dimension.n".into(),
                reason: "must be positive".into(),
            });
        }
        let mut omega = if n % 2 == 1 { 2.0 } else { std::f64::consts::PI };
        let mut k = if n % 2 == 1 { 1 } else { 2 };
        while k < n {
            k += 2;
            omega *= 2.0 * std::f64::consts::PI / (k as f64);
        }
        Ok(Self { n, omega_n: omega })
    }
}

/// Cell indices ordered by |value| descending, ties by original position.
fn order_by_abs_value_desc(s: &StepFunction) -> Vec<u32> {
    let vs = s.values();
    let mut idx: Vec<u32> = (0..vs.len() as u32).collect();
    idx.sort_by(|&i, &j| {
        vs[j as usize]
            .abs()
            .total_cmp(&vs[i as usize].abs())
            .then(i.cmp(&j))
    });
    idx
}

/// Lebesgue measure of {|f| > alpha}, exact.
///
/// Lengths are summed in |value|-descending order. For a nonincreasing
/// layout starting at the origin (a rearrangement), the measure is read
/// off the stored breakpoint directly; since those breakpoints are the
/// partial sums of the same sorted length sequence, a function and its
/// rearrangement produce bitwise-identical values.
pub fn distribution(s: &StepFunction, alpha: f64) -> f64 {
    assert!(alpha >= 0.0, "distribution needs alpha >= 0");
    let xs = s.breakpoints();
    let vs = s.values();
    if xs[0] == 0.0 && vs.windows(2).all(|w| w[0].abs() >= w[1].abs()) {
        // first cell whose |value| is at or below alpha
        let k = vs.partition_point(|v| v.abs() > alpha);
        return xs[k];
    }
    let mut acc = 0.0;
    for &i in &order_by_abs_value_desc(s) {
        let i = i as usize;
        if vs[i].abs() > alpha {
            acc += xs[i + 1] - xs[i];
        } else {
            break;
        }
    }
    acc
}

/// The decreasing rearrangement: the (|value|, length) multiset of the
/// input sorted by value descending, laid out on (0, |domain|). Exact; a
/// sort, no approximation.
pub fn decreasing_rearrangement(s: &StepFunction) -> RearrangementResult {
    let xs = s.breakpoints();
    let vs = s.values();
    let order = order_by_abs_value_desc(s);
    let mut bx = Vec::with_capacity(order.len() + 1);
    let mut bv = Vec::with_capacity(order.len());
    bx.push(0.0);
    let mut acc = 0.0;
    for &i in &order {
        let i = i as usize;
        acc += xs[i + 1] - xs[i];
        let v = vs[i].abs();
        if bv.last() == Some(&v) {
            *bx.last_mut().unwrap() = acc;
        } else {
            bv.push(v);
            bx.push(acc);
        }
    }
    // the layout ends at the accumulated total, which tracks |domain|
    // up to summation rounding; using it keeps the breakpoints equal to
    // the partial sums the distribution function recomputes
    let domain = Interval::new(0.0, acc).expect("positive domain length");
    let fstar = StepFunction::new(domain, bx, bv).expect("sorted layout is valid");

    let vals = fstar.values();
    let mut jump_gap = 0.0_f64;
    for w in vals.windows(2) {
        jump_gap = jump_gap.max(w[0] - w[1]);
    }
    let ess_inf = *vals.last().unwrap();
    RearrangementResult {
        fstar,
        jump_gap,
        ess_inf,
        truncation_stable: true,
    }
}

/// The last (smallest) value of the rearrangement.
pub fn essential_inf(r: &RearrangementResult) -> f64 {
    r.ess_inf
}

/// Radial profile of the symmetric decreasing rearrangement:
/// Sf(x) = fstar(omega_n |x|^n) evaluated at |x| = radius.
pub fn sdr_profile(r: &RearrangementResult, dim: Dimension, radius: f64) -> Result<f64> {
    assert!(radius > 0.0, "radius must be positive");
    let s = dim.omega_n * radius.powi(dim.n as i32);
    let len = r.fstar.domain().len();
    if s >= len {
        return Err(Error::RadiusOutOfRange { radius, s, len });
    }
    Ok(r.fstar.eval(s))
}

/// Outcome of the series rearrangeability test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rearrangeability {
    pub rearrangeable: bool,
    /// Estimate of mu_f(alpha); infinite when the series diverges.
    pub mu_estimate: f64,
}

/// Closed-form distribution of a log-power bump at level alpha:
/// mu(alpha) = 2 b exp(-(alpha/a)^(1/p)).
fn logpow_mu(a: f64, b: f64, p: f64, alpha: f64) -> f64 {
    if alpha <= 0.0 {
        return 2.0 * b;
    }
    let t = (alpha / a).powf(1.0 / p);
    2.0 * b * (-t).exp()
}

/// How many consecutive terms decide the geometric-tail test.
const TAIL_RUN: usize = 64;

/// Term-by-term evaluation of sum_k b_k mu_base(alpha / a_k) with a
/// geometric-tail test: a run of 64 nondecreasing terms declares
/// divergence, a run of 64 with ratio bounded below 1 declares
/// convergence and bounds the tail by the geometric sum. A list
/// exhausted without either verdict is a finite function, hence
/// rearrangeable, with the partial sum as the exact value.
pub fn is_rearrangeable(spec: &SeriesSpec, alpha_probe: f64) -> Result<Rearrangeability> {
    let (ba, bb, bp) = match spec.base.as_ref() {
        FunctionDescriptor::LogPowBump { a, b, x0: _, p } => (*a, *b, *p),
        other => {
            return Err(Error::UnsupportedBase {
                kind: format!("{other:?}")
                    .split(&[' ', '{'][..])
                    .next()
                    .unwrap_or("unknown")
                    .to_string(),
            })
        }
    };
    let term = |k: usize| -> f64 { spec.b[k] * logpow_mu(ba, bb, bp, alpha_probe / spec.a[k]) };

    let mut sum = term(0);
    let mut prev = sum;
    let mut grow_run = 0usize;
    let mut decay_run = 0usize;
    let mut decay_ratio_max = 0.0_f64;
    for k in 1..spec.k {
        let t = term(k);
        if t >= prev && t > 0.0 {
            grow_run += 1;
            decay_run = 0;
            decay_ratio_max = 0.0;
            if grow_run >= TAIL_RUN {
                return Ok(Rearrangeability {
                    rearrangeable: false,
                    mu_estimate: f64::INFINITY,
                });
            }
        } else {
            let ratio = if prev > 0.0 { t / prev } else { 0.0 };
            decay_run += 1;
            grow_run = 0;
            decay_ratio_max = decay_ratio_max.max(ratio);
            if decay_run >= TAIL_RUN && decay_ratio_max < 1.0 {
                let r = decay_ratio_max;
                let tail = t * r / (1.0 - r);
                return Ok(Rearrangeability {
                    rearrangeable: true,
                    mu_estimate: sum + t + tail,
                });
            }
        }
        sum += t;
        prev = t;
    }
    Ok(Rearrangeability {
        rearrangeable: true,
        mu_estimate: sum,
    })
}

/// Essential infimum of the limit rearrangement of a series on an
/// infinite-measure domain: the supremum of levels at which the
/// distribution series diverges, found by bisection on the tail test.
pub fn series_ess_inf_limit(spec: &SeriesSpec) -> Result<f64> {
    let diverges = |alpha: f64| -> Result<bool> {
        Ok(!is_rearrangeable(spec, alpha)?.rearrangeable)
    };
    if !diverges(0.0)? {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    let mut guard = 0;
    while diverges(hi)? {
        hi *= 2.0;
        guard += 1;
        if guard > 64 {
            return Ok(f64::INFINITY);
        }
    }
    let mut lo = 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if diverges(mid)? {
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

    fn step(dom: (f64, f64), xs: Vec<f64>, vs: Vec<f64>) -> StepFunction {
        StepFunction::new(Interval::new(dom.0, dom.1).unwrap(), xs, vs).unwrap()
    }

    #[test]
    fn distribution_counts_levels() {
        let s = step((0.0, 3.0), vec![0.0, 1.0, 3.0], vec![2.0, 1.0]);
        assert_eq!(distribution(&s, 1.5), 1.0);
        assert_eq!(distribution(&s, 0.5), 3.0);
        assert_eq!(distribution(&s, 2.5), 0.0);
    }

    #[test]
    fn rearrangement_sorts_cells() {
        let s = step((0.0, 3.0), vec![0.0, 2.0, 3.0], vec![1.0, 3.0]);
        let r = decreasing_rearrangement(&s);
        assert_eq!(r.fstar.breakpoints(), &[0.0, 1.0, 3.0]);
        assert_eq!(r.fstar.values(), &[3.0, 1.0]);
        assert_eq!(r.jump_gap, 2.0);
        assert_eq!(r.ess_inf, 1.0);
    }

    #[test]
    fn rearrangement_of_constant() {
        let s = StepFunction::constant(Interval::new(0.0, 2.0).unwrap(), 2.0);
        let r = decreasing_rearrangement(&s);
        assert_eq!(essential_inf(&r), 2.0);
        assert_eq!(r.jump_gap, 0.0);
    }

    #[test]
    fn equimeasurable_bitwise() {
        let s = step(
            (0.0, 4.0),
            vec![0.0, 0.7, 1.9, 2.4, 4.0],
            vec![3.0, -1.0, 2.0, 0.5],
        );
        let r = decreasing_rearrangement(&s);
        for alpha in [0.0, 0.3, 0.5, 1.0, 1.7, 2.0, 2.5, 3.0] {
            assert_eq!(distribution(&s, alpha), distribution(&r.fstar, alpha));
        }
    }

    #[test]
    fn dimension_ball_volumes() {
        assert_eq!(Dimension::new(1).unwrap().omega_n, 2.0);
        assert!((Dimension::new(2).unwrap().omega_n - std::f64::consts::PI).abs() < 1e-15);
        let w3 = Dimension::new(3).unwrap().omega_n;
        assert!((w3 - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
        let w4 = Dimension::new(4).unwrap().omega_n;
        assert!((w4 - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn profile_reads_fstar_at_scaled_radius() {
        let s = step((0.0, 4.0), vec![0.0, 1.0, 4.0], vec![3.0, 1.0]);
        let r = decreasing_rearrangement(&s);
        let d1 = Dimension::new(1).unwrap();
        assert_eq!(sdr_profile(&r, d1, 0.25).unwrap(), 3.0);
        assert_eq!(sdr_profile(&r, d1, 1.0).unwrap(), 1.0);
        assert!(sdr_profile(&r, d1, 3.0).is_err());
        let d2 = Dimension::new(2).unwrap();
        let v = sdr_profile(&r, d2, 1.0).unwrap();
        assert_eq!(v, r.fstar.eval(std::f64::consts::PI));
    }

    fn series(a: Vec<f64>, b: Vec<f64>) -> SeriesSpec {
        let k = a.len();
        SeriesSpec::new(
            Box::new(FunctionDescriptor::LogPowBump {
                a: 1.0,
                b: 1.0,
                x0: 0.0,
                p: 1.0,
            }),
            a,
            b,
            None,
            k,
        )
        .unwrap()
    }

    #[test]
    fn divergent_series_detected() {
        let k = 160;
        let a: Vec<f64> = (1..=k).map(|j| 1.0 / (j as f64).sqrt()).collect();
        let b: Vec<f64> = (1..=k).map(|j| (j as f64).exp()).collect();
        let spec = series(a, b);
        let r = is_rearrangeable(&spec, 10.0).unwrap();
        assert!(!r.rearrangeable);
        assert!(r.mu_estimate.is_infinite());
    }

    #[test]
    fn geometric_series_sums_with_tail_bound() {
        let k = 160;
        let a: Vec<f64> = vec![1.0; k];
        let b: Vec<f64> = (1..=k).map(|j| (-(j as f64)).exp()).collect();
        let spec = series(a, b);
        let r = is_rearrangeable(&spec, 1.0).unwrap();
        assert!(r.rearrangeable);
        let expect = 2.0 * (-1.0_f64).exp() / (1.0_f64.exp() - 1.0);
        assert!(
            (r.mu_estimate - expect).abs() < 1e-6 * expect,
            "mu {} vs {}",
            r.mu_estimate,
            expect
        );
    }

    #[test]
    fn single_bump_is_rearrangeable() {
        let spec = series(vec![1.0], vec![1.0]);
        let r = is_rearrangeable(&spec, 0.5).unwrap();
        assert!(r.rearrangeable);
        assert!((r.mu_estimate - 2.0 * (-0.5_f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn tail_divergence_level_for_harmonic_scales() {
        // a_k = 1/k, b_k = e^k: the distribution series diverges exactly
        // for levels below 1
        let k = 200;
        let a: Vec<f64> = (1..=k).map(|j| 1.0 / j as f64).collect();
        let b: Vec<f64> = (1..=k).map(|j| (j as f64).exp()).collect();
        let spec = series(a, b);
        let level = series_ess_inf_limit(&spec).unwrap();
        assert!((level - 1.0).abs() < 1e-3, "level {level}");
    }
}
