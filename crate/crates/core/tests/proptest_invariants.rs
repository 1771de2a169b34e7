//! Structural invariants under randomized inputs.

use meanosc::funcspace::{
    ClampBound, DescriptorDoc, FunctionDescriptor, StepFunction,
};
use meanosc::rearrange::{decreasing_rearrangement, distribution};
use meanosc::Interval;
use proptest::prelude::*;

fn step_strategy() -> impl Strategy<Value = StepFunction> {
    (2usize..40, any::<u64>()).prop_map(|(cells, seed)| {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut xs: Vec<f64> = (0..cells - 1).map(|_| rng.gen_range(0.0..10.0)).collect();
        xs.push(0.0);
        xs.push(10.0);
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
        *xs.first_mut().unwrap() = 0.0;
        *xs.last_mut().unwrap() = 10.0;
        let vs = (0..xs.len() - 1).map(|_| rng.gen_range(-6.0..6.0)).collect();
        StepFunction::new(Interval::new(0.0, 10.0).unwrap(), xs, vs).unwrap()
    })
}

fn leaf_descriptor() -> impl Strategy<Value = FunctionDescriptor> {
    prop_oneof![
        (-5.0..5.0_f64).prop_map(|c| FunctionDescriptor::Constant { c }),
        ((-2.0..2.0_f64), (-2.0..2.0_f64), (0.0..4.0_f64), (0.1..4.0_f64)).prop_map(
            |(slope, intercept, a, len)| FunctionDescriptor::Affine {
                slope,
                intercept,
                support: Interval::new(a, a + len).unwrap(),
            }
        ),
        ((0.1..3.0_f64), (0.1..3.0_f64), (-2.0..2.0_f64), (0.1..1.0_f64)).prop_map(
            |(a, b, x0, p)| FunctionDescriptor::LogPowBump { a, b, x0, p }
        ),
        ((0.0..4.0_f64), (0.5..3.0_f64)).prop_map(|(a, len)| FunctionDescriptor::Indicator {
            support: Interval::new(a, a + len).unwrap(),
        }),
        (
            (-1.0..1.0_f64),
            (0.1..3.0_f64),
            (-3.0..3.0_f64),
            (-1.0..1.0_f64),
            (0.0..2.0_f64),
            (0.5..3.0_f64)
        )
            .prop_map(|(amp, freq, phase, offset, a, len)| FunctionDescriptor::Cosine {
                amp,
                freq,
                phase,
                offset,
                support: Interval::new(a, a + len).unwrap(),
            }),
    ]
}

fn descriptor_strategy() -> impl Strategy<Value = FunctionDescriptor> {
    leaf_descriptor().prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..4)
                .prop_map(|terms| FunctionDescriptor::Sum { terms }),
            (inner, (-3.0..0.0_f64), (0.5..4.0_f64)).prop_map(|(d, lo, hi)| {
                FunctionDescriptor::Clamp {
                    inner: Box::new(d),
                    lo: ClampBound(lo),
                    hi: ClampBound(hi),
                }
            }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rearrangement_is_idempotent(s in step_strategy()) {
        let once = decreasing_rearrangement(&s);
        let twice = decreasing_rearrangement(&once.fstar);
        prop_assert_eq!(once.fstar.values(), twice.fstar.values());
        prop_assert_eq!(once.fstar.breakpoints(), twice.fstar.breakpoints());
    }

    #[test]
    fn distribution_is_nonincreasing_and_bounded(s in step_strategy(), a in 0.0..8.0f64, d in 0.0..2.0f64) {
        let hi = distribution(&s, a);
        let lo = distribution(&s, a + d);
        prop_assert!(lo <= hi);
        // the full-mass sum can exceed the domain length by rounding
        prop_assert!(hi <= s.domain().len() * (1.0 + 1e-12));
    }

    #[test]
    fn descriptor_json_round_trips(node in descriptor_strategy()) {
        let doc = DescriptorDoc {
            domain: Interval::new(-8.0, 8.0).unwrap(),
            node,
        };
        let text = serde_json::to_string(&doc).unwrap();
        let back: DescriptorDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn merged_sum_integral_is_additive(s in step_strategy(), t in step_strategy()) {
        let sum = s.merge_with(&t, |a, b| a + b).unwrap();
        let lhs = sum.integrate(sum.domain()).unwrap();
        let rhs = s.integrate(s.domain()).unwrap() + t.integrate(t.domain()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0));
    }
}
