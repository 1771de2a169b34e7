//! The rearrangement map is bounded on BMO but not continuous: a
//! sequence f_k = indicator + (1/k) log bump converges to the indicator
//! in the seminorm, while the rearranged sequence keeps distance about
//! 1/2 from the rearranged limit. In L1 the rearrangements do converge.

use meanosc::catalog::{converge_experiment, rows_to_csv, ExampleName};

fn main() -> meanosc::Result<()> {
    let rows = converge_experiment(ExampleName::ExDiscont, 6, None, 1e-2)?;
    print!("{}", rows_to_csv(&rows));
    println!();
    println!("d_in  -> 0      : the inputs converge in the seminorm");
    println!("d_out stays ~1/2: the rearrangements do not; the limit has a");
    println!("                  unit jump at s = 1 and every f_k* is continuous,");
    println!("                  so a short interval straddling s = 1 keeps");
    println!("                  oscillation 1/2 in the difference");
    println!("l1_out -> 0     : convergence does hold in L1(0, 2)");
    Ok(())
}
