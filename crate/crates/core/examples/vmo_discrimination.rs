//! Modulus curves omega(delta) separate three regimes: an indicator
//! (jump: the modulus stays flat at 1/2), the p = 1 log bump (unbounded
//! but with scale-invariant oscillation: flat at its seminorm), and the
//! p = 1/2 bump (vanishing mean oscillation: the modulus decays like
//! 1/sqrt(log(1/delta))).

use meanosc::catalog::{make_example, ExampleId, ExampleName};
use meanosc::funcspace::compile;
use meanosc::seminorm::vmo_modulus;

fn main() -> meanosc::Result<()> {
    let deltas = [1e-1, 1e-2, 1e-3, 1e-4];

    let mut columns = Vec::new();
    for (label, p) in [("p = 1", 1.0), ("p = 1/2", 0.5)] {
        let ex = make_example(&ExampleId::named(ExampleName::LogbumpP).with_p(p))?;
        let s = compile(&ex.f, &ex.grid, ex.domain)?;
        let curve = vmo_modulus(&s, &deltas, false, 1e-3)?;
        columns.push((label, curve.omegas));
    }

    let dom = meanosc::Interval::new(-4.0, 5.0)?;
    let ind = meanosc::funcspace::FunctionDescriptor::Indicator {
        support: meanosc::Interval::new(0.0, 1.0)?,
    };
    let s = compile(&ind, &meanosc::funcspace::GridSpec::default_for(dom), dom)?;
    let curve = vmo_modulus(&s, &deltas, false, 1e-3)?;
    columns.push(("indicator", curve.omegas));

    println!("delta      {:>12} {:>12} {:>12}", columns[0].0, columns[1].0, columns[2].0);
    for (i, d) in deltas.iter().enumerate() {
        println!(
            "{d:<10.0e} {:>12.6} {:>12.6} {:>12.6}",
            columns[0].1[i], columns[1].1[i], columns[2].1[i]
        );
    }
    println!(
        "\np = 1/2 decay ratio omega(1e-4) / omega(1e-1) = {:.4}",
        columns[1].1[3] / columns[1].1[0]
    );
    println!("the indicator and the p = 1 bump do not decay: neither is in VMO");
    Ok(())
}
