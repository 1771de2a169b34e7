//! Command-line front end: descriptor ingestion, experiment execution,
//! and CSV/JSON emission for offline plotting.
//!
//! Exit codes: 0 success, 1 usage errors, 2 descriptor or validation
//! errors, 3 stabilization failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::catalog::{
    converge_experiment, make_example, rows_to_csv, ExampleId, ExampleName,
};
use crate::error::{Error, Result};
use crate::funcspace::{compile, DescriptorDoc, GridSpec};
use crate::oscillation::BasisSpec;
use crate::properties::run_all;
use crate::rearrange::{decreasing_rearrangement, is_rearrangeable, sdr_profile, Dimension};
use crate::seminorm::{bmo_distance, bmo_seminorm, vmo_modulus};

#[derive(Parser)]
#[command(
    name = "meanosc",
    about = "Rearrangements and mean-oscillation functionals for 1-D functions",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decreasing rearrangement of a descriptor: CSV cells plus metadata JSON
    Rearrange {
        /// Descriptor JSON file ({"domain": [a, b], "node": {...}})
        #[arg(long)]
        input: PathBuf,
        /// CSV destination; metadata JSON goes to standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// BMO seminorm via interval-supremum search
    Bmo {
        #[arg(long)]
        input: PathBuf,
        /// Optimization tolerance (endpoint grid resolution tol*|domain|/8)
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// VMO modulus curve omega(delta), CSV columns delta,omega
    VmoModulus {
        #[arg(long)]
        input: PathBuf,
        /// Scale delta; repeatable, defaults to 1e-1..1e-4 log-spaced
        #[arg(long = "delta")]
        deltas: Vec<f64>,
        /// Restrict shapes to a left neighbourhood [left, left + delta)
        #[arg(long)]
        near_origin: bool,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// BMO distance between two descriptors on a common domain
    Distance {
        /// Descriptor JSON files; pass exactly twice
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetric-decreasing radial profile value Sf at a radius
    Sdr {
        #[arg(long)]
        input: PathBuf,
        /// Spatial dimension n (unit-ball volume enters as omega_n)
        #[arg(long, default_value_t = 1)]
        dim: u32,
        /// Radius |x| to evaluate at
        #[arg(long = "R")]
        radius: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Catalog queries: dump a named descriptor or probe rearrangeability
    Example {
        /// Catalog name: series_a, series_b, series_c, ex_discont,
        /// ex_nocont, ex_local, ex_inf, logbump_p
        #[arg(long)]
        name: String,
        /// Sequence index for the sequence examples
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Retained series terms
        #[arg(long = "K", default_value_t = 12)]
        terms: usize,
        /// Log-power exponent for logbump_p
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Probe level for the series rearrangeability test
        #[arg(long)]
        probe_alpha: Option<f64>,
        /// Emit the descriptor document as JSON (default action)
        #[arg(long)]
        dump: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convergence experiment: CSV rows k,d_in,d_out,l1_out,ess_inf_k,residual,stable
    Converge {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        /// L1 comparison window (0, X); defaults per example
        #[arg(long = "X")]
        window: Option<f64>,
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded property suites for the rearrangement/oscillation laws
    Proptest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_out(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn load_doc(path: &Path) -> Result<DescriptorDoc> {
    let text = fs::read_to_string(path)?;
    let doc: DescriptorDoc = serde_json::from_str(&text)?;
    doc.node.validate()?;
    Ok(doc)
}

fn compile_doc(doc: &DescriptorDoc) -> Result<crate::funcspace::StepFunction> {
    compile(&doc.node, &GridSpec::default_for(doc.domain), doc.domain)
}

#[derive(Serialize)]
struct RearrangeabilityOut {
    name: String,
    probe_alpha: f64,
    rearrangeable: bool,
    /// Absent when the distribution series diverges.
    mu_estimate: Option<f64>,
}

#[derive(Serialize)]
struct SdrOut {
    dim: u32,
    omega_n: f64,
    radius: f64,
    s: f64,
    value: f64,
}

fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Rearrange { input, out } => {
            let doc = load_doc(&input)?;
            let step = compile_doc(&doc)?;
            let r = decreasing_rearrangement(&step);
            write_out(&out, &r.to_csv())?;
            println!("{}", serde_json::to_string(&r.meta())?);
            Ok(0)
        }
        Command::Bmo { input, tol, out } => {
            let doc = load_doc(&input)?;
            let step = compile_doc(&doc)?;
            let sup = bmo_seminorm(&step, &BasisSpec::default(), tol)?;
            write_out(&out, &format!("{}\n", serde_json::to_string(&sup)?))?;
            Ok(0)
        }
        Command::VmoModulus {
            input,
            deltas,
            near_origin,
            tol,
            out,
        } => {
            let doc = load_doc(&input)?;
            let step = compile_doc(&doc)?;
            let deltas = if deltas.is_empty() {
                vec![1e-1, 1e-2, 1e-3, 1e-4]
            } else {
                deltas
            };
            let curve = vmo_modulus(&step, &deltas, near_origin, tol)?;
            write_out(&out, &curve.to_csv())?;
            Ok(0)
        }
        Command::Distance { input, tol, out } => {
            if input.len() != 2 {
                return Err(Error::InvalidDescriptor {
                    field: "input".into(),
                    reason: format!("pass --input exactly twice, got {}", input.len()),
                });
            }
            let d0 = load_doc(&input[0])?;
            let d1 = load_doc(&input[1])?;
            let s0 = compile_doc(&d0)?;
            let s1 = compile_doc(&d1)?;
            let sup = bmo_distance(&s0, &s1, tol)?;
            write_out(&out, &format!("{}\n", serde_json::to_string(&sup)?))?;
            Ok(0)
        }
        Command::Sdr {
            input,
            dim,
            radius,
            out,
        } => {
            let doc = load_doc(&input)?;
            let step = compile_doc(&doc)?;
            let r = decreasing_rearrangement(&step);
            let d = Dimension::new(dim)?;
            let value = sdr_profile(&r, d, radius)?;
            let payload = SdrOut {
                dim,
                omega_n: d.omega_n,
                radius,
                s: d.omega_n * radius.powi(dim as i32),
                value,
            };
            write_out(&out, &format!("{}\n", serde_json::to_string(&payload)?))?;
            Ok(0)
        }
        Command::Example {
            name,
            k,
            terms,
            p,
            probe_alpha,
            dump: _,
            out,
        } => {
            let name = ExampleName::parse(&name)?;
            let id = ExampleId::named(name).with_k(k).with_terms(terms).with_p(p);
            let ex = make_example(&id)?;
            if let Some(alpha) = probe_alpha {
                let spec = ex.series.as_ref().ok_or_else(|| Error::UnsupportedBase {
                    kind: format!("{} is not a series example", name.as_str()),
                })?;
                let verdict = is_rearrangeable(spec, alpha)?;
                let payload = RearrangeabilityOut {
                    name: name.as_str().to_string(),
                    probe_alpha: alpha,
                    rearrangeable: verdict.rearrangeable,
                    mu_estimate: verdict.mu_estimate.is_finite().then_some(verdict.mu_estimate),
                };
                write_out(&out, &format!("{}\n", serde_json::to_string(&payload)?))?;
                return Ok(0);
            }
            let doc = DescriptorDoc {
                domain: ex.domain,
                node: ex.f,
            };
            write_out(&out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
            Ok(0)
        }
        Command::Converge {
            name,
            kmax,
            window,
            tol,
            out,
        } => {
            let name = ExampleName::parse(&name)?;
            let rows = converge_experiment(name, kmax, window, tol)?;
            write_out(&out, &rows_to_csv(&rows))?;
            if rows.iter().any(|r| !r.stable) {
                eprintln!("stabilization failed for at least one row");
                return Ok(3);
            }
            Ok(0)
        }
        Command::Proptest { seed, out } => {
            let reports = run_all(seed);
            let mut text = String::new();
            let mut all_ok = true;
            for rep in &reports {
                all_ok &= rep.passed();
                text.push_str(&format!(
                    "{} {} cases={} failures={}\n",
                    if rep.passed() { "PASS" } else { "FAIL" },
                    rep.name,
                    rep.cases,
                    rep.failures
                ));
                if let Some(detail) = &rep.first_failure {
                    text.push_str(&format!("  first failure: {detail}\n"));
                }
            }
            write_out(&out, &text)?;
            Ok(if all_ok { 0 } else { 2 })
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::StabilizationFailure { .. } => 3,
        _ => 2,
    }
}

/// Parses and executes one invocation; returns the process exit code.
pub fn dispatch<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("meanosc"))
        .chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_verb_is_usage_error() {
        assert_eq!(dispatch(["frobnicate"]), 1);
    }

    #[test]
    fn unknown_example_is_validation_error() {
        assert_eq!(dispatch(["example", "--name", "nope"]), 2);
    }
}
