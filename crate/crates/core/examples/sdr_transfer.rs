//! Oscillation estimates transfer from decreasing rearrangements to
//! radial profiles: on any cube Q inside B(0, R), the oscillation of
//! Sf1 - Sf2 is bounded by twice the oscillation of f1* - f2* on some
//! interval of length at most 2 diam(Q).

use meanosc::funcspace::{compile, FunctionDescriptor, GridSpec};
use meanosc::rearrange::decreasing_rearrangement;
use meanosc::seminorm::sdr_transfer_check;
use meanosc::Interval;

fn main() -> meanosc::Result<()> {
    let dom = Interval::new(-1.0, 1.0)?;
    let g = FunctionDescriptor::LogPowBump {
        a: 1.0,
        b: 1.0,
        x0: 0.0,
        p: 1.0,
    };
    let log_bump = decreasing_rearrangement(&compile(&g, &GridSpec::default_for(dom), dom)?);

    let dom = Interval::new(-4.0, 5.0)?;
    let ind = FunctionDescriptor::Indicator {
        support: Interval::new(0.0, 1.0)?,
    };
    let indicator = decreasing_rearrangement(&compile(&ind, &GridSpec::default_for(dom), dom)?);
    let zero = decreasing_rearrangement(&meanosc::funcspace::StepFunction::constant(
        Interval::new(0.0, 2.0)?,
        0.0,
    ));

    let radius = 1.0;
    for (label, f1, f2, q) in [
        ("log bump vs 0, Q at the origin", &log_bump, &zero, (-0.2, 0.2)),
        ("log bump vs 0, Q off-center", &log_bump, &zero, (0.4, 0.6)),
        ("log bump vs indicator", &log_bump, &indicator, (0.1, 0.45)),
        ("indicator vs 0", &indicator, &zero, (-0.3, 0.1)),
    ] {
        let q = Interval::new(q.0, q.1)?;
        let check = sdr_transfer_check(f1, f2, radius, q)?;
        println!(
            "{label}: O(Sf1 - Sf2, Q) = {:.6} <= {:.6} = 2 O(f1* - f2*, I)  ok = {}",
            check.lhs, check.rhs_best, check.ok
        );
    }
    Ok(())
}
