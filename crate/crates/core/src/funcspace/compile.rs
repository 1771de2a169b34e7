use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::Interval;

use super::descriptor::{series_build, FunctionDescriptor};
use super::quad::adaptive_quad;
use super::step::StepFunction;

const MAX_CELLS: usize = 4_000_000;

/// Mesh parameters for descriptor compilation.
///
/// `base_cells` uniform cells cover the domain; around every logarithmic
/// singularity the mesh is refined geometrically with ratio `grading`
/// down to `min_cell`. `quad_tol` is the absolute integral tolerance per
/// cell on the quadrature path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub base_cells: usize,
    pub grading: f64,
    pub min_cell: f64,
    pub quad_tol: f64,
}

impl GridSpec {
    pub fn new(base_cells: usize, grading: f64, min_cell: f64, quad_tol: f64) -> Result<Self> {
        if base_cells == 0 {
            return Err(Error::InvalidDescriptor {
                field: "grid.base_cells".into(),
                reason: "must be positive".into(),
            });
        }
        if !(grading > 0.0 && grading < 1.0) {
            return Err(Error::InvalidDescriptor {
                field: "grid.grading".into(),
                reason: format!("must lie in (0, 1), got {grading}"),
            });
        }
        if !(min_cell > 0.0) {
            return Err(Error::InvalidDescriptor {
                field: "grid.min_cell".into(),
                reason: "must be positive".into(),
            });
        }
        if !(quad_tol > 0.0) {
            return Err(Error::InvalidDescriptor {
                field: "grid.quad_tol".into(),
                reason: "must be positive".into(),
            });
        }
        Ok(Self {
            base_cells,
            grading,
            min_cell,
            quad_tol,
        })
    }

    /// Default mesh for a given domain: 4096 base cells, grading 0.99,
    /// min_cell pinned at 1e-12 of the domain length.
    pub fn default_for(domain: Interval) -> Self {
        Self {
            base_cells: 4096,
            grading: 0.99,
            min_cell: 1e-12 * domain.len(),
            quad_tol: 1e-10,
        }
    }

    /// Same shape with a different grading ratio.
    pub fn with_grading(mut self, grading: f64) -> Self {
        self.grading = grading;
        self
    }

    pub fn with_base_cells(mut self, base_cells: usize) -> Self {
        self.base_cells = base_cells;
        self
    }

    pub fn with_min_cell(mut self, min_cell: f64) -> Self {
        self.min_cell = min_cell;
        self
    }
}

/// Replaces every series node by its expanded sum of bumps.
fn expand_series(f: &FunctionDescriptor) -> Result<FunctionDescriptor> {
    Ok(match f {
        FunctionDescriptor::Series { spec } => series_build(spec)?,
        FunctionDescriptor::Sum { terms } => FunctionDescriptor::Sum {
            terms: terms
                .iter()
                .map(expand_series)
                .collect::<Result<Vec<_>>>()?,
        },
        FunctionDescriptor::Clamp { inner, lo, hi } => FunctionDescriptor::Clamp {
            inner: Box::new(expand_series(inner)?),
            lo: *lo,
            hi: *hi,
        },
        other => other.clone(),
    })
}

/// Structural mesh points: support edges, bump centers and edges, clamp
/// kink locations where an inner log bump crosses a clamp threshold.
fn collect_features(f: &FunctionDescriptor, out: &mut Vec<f64>) {
    match f {
        FunctionDescriptor::Affine { support, .. }
        | FunctionDescriptor::Cosine { support, .. }
        | FunctionDescriptor::Indicator { support } => {
            out.push(support.a);
            out.push(support.b);
        }
        FunctionDescriptor::LogPowBump { b, x0, .. } => {
            out.push(*x0);
            out.push(x0 - b);
            out.push(x0 + b);
        }
        FunctionDescriptor::Clamp { inner, lo, hi } => {
            collect_features(inner, out);
            for radius_set in clamp_kink_radii(inner, lo.0, hi.0) {
                out.push(radius_set);
            }
        }
        FunctionDescriptor::Sum { terms } => {
            for t in terms {
                collect_features(t, out);
            }
        }
        FunctionDescriptor::Series { .. } => unreachable!("series expanded before meshing"),
        FunctionDescriptor::Constant { .. } => {}
    }
}

/// Where a clamp threshold intersects an inner `bump + constants` shape.
/// Only the pattern Sum[LogPowBump, Constant..., flat Affine...] is
/// solved in closed form; other shapes rely on the graded mesh alone.
fn clamp_kink_radii(inner: &FunctionDescriptor, lo: f64, hi: f64) -> Vec<f64> {
    let mut bump: Option<(f64, f64, f64, f64)> = None;
    let mut consts = vec![0.0_f64];
    let mut ok = true;
    let mut scan = |node: &FunctionDescriptor| match node {
        FunctionDescriptor::LogPowBump { a, b, x0, p } => {
            if bump.is_some() {
                ok = false;
            } else {
                bump = Some((*a, *b, *x0, *p));
            }
        }
        FunctionDescriptor::Constant { c } => {
            for v in consts.iter_mut() {
                *v += c;
            }
        }
        FunctionDescriptor::Affine { slope, intercept, .. } if *slope == 0.0 => {
            // a guard active on part of the line: branch the offset
            let mut with = consts.clone();
            for v in with.iter_mut() {
                *v += intercept;
            }
            consts.extend(with);
        }
        _ => ok = false,
    };
    match inner {
        FunctionDescriptor::Sum { terms } => {
            for t in terms {
                scan(t);
            }
        }
        other => scan(other),
    }
    let mut pts = Vec::new();
    if !ok {
        return pts;
    }
    if let Some((a, b, x0, p)) = bump {
        for &c in &consts {
            for theta in [lo, hi] {
                if !theta.is_finite() {
                    continue;
                }
                let t = (theta - c) / a;
                if t > 0.0 {
                    let r = b * (-t.powf(1.0 / p)).exp();
                    if r > 0.0 && r < b {
                        pts.push(x0 - r);
                        pts.push(x0 + r);
                    }
                }
            }
        }
    }
    pts
}

fn build_mesh(f: &FunctionDescriptor, grid: &GridSpec, domain: Interval) -> Result<Vec<f64>> {
    let len = domain.len();
    let mut pts: Vec<f64> = Vec::with_capacity(grid.base_cells + 64);
    for i in 1..grid.base_cells {
        pts.push(domain.a + len * (i as f64) / (grid.base_cells as f64));
    }
    collect_features(f, &mut pts);

    let mut sing = Vec::new();
    f.singularities(&mut sing);
    sing.sort_by(|a, b| a.0.total_cmp(&b.0));
    sing.dedup_by(|a, b| (a.0 - b.0).abs() <= 1e-14 * len.max(1.0));
    for &(x0, w) in &sing {
        if x0 + w < domain.a || x0 - w > domain.b {
            continue;
        }
        pts.push(x0);
        let mut r = w;
        let mut guard = 0usize;
        while r >= grid.min_cell {
            pts.push(x0 - r);
            pts.push(x0 + r);
            r *= grid.grading;
            guard += 1;
            if guard > 2_000_000 {
                return Err(Error::MeshTooFine { max: MAX_CELLS });
            }
        }
    }

    pts.retain(|&x| x > domain.a && x < domain.b && x.is_finite());
    pts.push(domain.a);
    pts.push(domain.b);
    pts.sort_by(f64::total_cmp);
    let tol = 1e-14 * len.max(1.0);
    let mut xs: Vec<f64> = Vec::with_capacity(pts.len());
    for x in pts {
        if xs.last().is_none_or(|&last| x - last > tol) {
            xs.push(x);
        }
    }
    // the right endpoint must survive deduplication exactly
    if *xs.last().unwrap() != domain.b {
        let last = xs.len() - 1;
        if xs[last] > domain.b - tol {
            xs[last] = domain.b;
        } else {
            xs.push(domain.b);
        }
    }
    if xs.len() - 1 > MAX_CELLS {
        return Err(Error::MeshTooFine { max: MAX_CELLS });
    }
    Ok(xs)
}

/// A term of the flattened descriptor with an integration strategy.
enum Atom<'a> {
    Exact(&'a FunctionDescriptor),
    Quadrature(&'a FunctionDescriptor),
}

fn flatten<'a>(f: &'a FunctionDescriptor, out: &mut Vec<Atom<'a>>) {
    match f {
        FunctionDescriptor::Sum { terms } => {
            for t in terms {
                flatten(t, out);
            }
        }
        FunctionDescriptor::Constant { .. }
        | FunctionDescriptor::Affine { .. }
        | FunctionDescriptor::Cosine { .. }
        | FunctionDescriptor::Indicator { .. } => out.push(Atom::Exact(f)),
        FunctionDescriptor::LogPowBump { p, .. } => {
            if *p == 1.0 {
                out.push(Atom::Exact(f));
            } else {
                out.push(Atom::Quadrature(f));
            }
        }
        FunctionDescriptor::Clamp { .. } => out.push(Atom::Quadrature(f)),
        FunctionDescriptor::Series { .. } => unreachable!("series expanded before flattening"),
    }
}

/// Signed cumulative integral of a p = 1 log bump measured from its
/// center: H(t) = sign(t) * G(min(|t|, b)) with G(u) = a u (1 - ln(u/b)).
fn log_bump_cumulative(a: f64, b: f64, t: f64) -> f64 {
    let u = t.abs().min(b);
    if u == 0.0 {
        return 0.0;
    }
    let g = a * u * (1.0 - (u / b).ln());
    if t < 0.0 {
        -g
    } else {
        g
    }
}

fn exact_integral(f: &FunctionDescriptor, xl: f64, xr: f64) -> f64 {
    match f {
        FunctionDescriptor::Constant { c } => c * (xr - xl),
        FunctionDescriptor::Affine {
            slope,
            intercept,
            support,
        } => {
            let lo = xl.max(support.a);
            let hi = xr.min(support.b);
            if hi <= lo {
                0.0
            } else {
                0.5 * slope * (hi * hi - lo * lo) + intercept * (hi - lo)
            }
        }
        FunctionDescriptor::Cosine {
            amp,
            freq,
            phase,
            offset,
            support,
        } => {
            let lo = xl.max(support.a);
            let hi = xr.min(support.b);
            if hi <= lo {
                0.0
            } else if *freq == 0.0 {
                (amp * phase.cos() + offset) * (hi - lo)
            } else {
                amp / freq * ((freq * hi + phase).sin() - (freq * lo + phase).sin())
                    + offset * (hi - lo)
            }
        }
        FunctionDescriptor::Indicator { support } => (xr.min(support.b) - xl.max(support.a)).max(0.0),
        FunctionDescriptor::LogPowBump { a, b, x0, .. } => {
            log_bump_cumulative(*a, *b, xr - x0) - log_bump_cumulative(*a, *b, xl - x0)
        }
        _ => unreachable!("not an exact atom"),
    }
}

/// Evaluation that keeps quadrature total: an exactly singular node is
/// nudged off the center instead of erroring.
fn eval_lenient(f: &FunctionDescriptor, x: f64) -> f64 {
    match f {
        FunctionDescriptor::LogPowBump { a, b, x0, p } => {
            let u = (x - x0).abs().max(f64::MIN_POSITIVE);
            if u >= *b {
                0.0
            } else {
                let t = -(u / b).ln();
                if *p == 1.0 {
                    a * t
                } else {
                    a * t.powf(*p)
                }
            }
        }
        FunctionDescriptor::Clamp { inner, lo, hi } => {
            eval_lenient(inner, x).max(lo.0).min(hi.0)
        }
        FunctionDescriptor::Sum { terms } => terms.iter().map(|t| eval_lenient(t, x)).sum(),
        other => other.evaluate(x).unwrap_or(0.0),
    }
}

/// Compiles a descriptor to a step function of per-cell averages on a
/// graded mesh. Averages use closed-form antiderivatives where they
/// exist and adaptive quadrature elsewhere; every cell integral is
/// accurate to `grid.quad_tol`.
pub fn compile(
    f: &FunctionDescriptor,
    grid: &GridSpec,
    domain: Interval,
) -> Result<StepFunction> {
    f.validate()?;
    GridSpec::new(grid.base_cells, grid.grading, grid.min_cell, grid.quad_tol)?;
    let expanded = expand_series(f)?;
    let xs = build_mesh(&expanded, grid, domain)?;
    let mut atoms = Vec::new();
    flatten(&expanded, &mut atoms);

    let vs: Vec<f64> = xs
        .par_windows(2)
        .map(|w| {
            let (xl, xr) = (w[0], w[1]);
            let width = xr - xl;
            let mut total = 0.0;
            for atom in &atoms {
                total += match atom {
                    Atom::Exact(d) => exact_integral(d, xl, xr),
                    Atom::Quadrature(d) => {
                        adaptive_quad(|x| eval_lenient(d, x), xl, xr, grid.quad_tol)
                    }
                };
            }
            total / width
        })
        .collect();

    StepFunction::new(domain, xs, vs)
}

/// Convenience wrapper compiling with the default grid for the domain.
pub fn compile_default(f: &FunctionDescriptor, domain: Interval) -> Result<StepFunction> {
    compile(f, &GridSpec::default_for(domain), domain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_bump() -> FunctionDescriptor {
        FunctionDescriptor::LogPowBump {
            a: 1.0,
            b: 1.0,
            x0: 0.0,
            p: 1.0,
        }
    }

    #[test]
    fn constant_compiles_to_single_value() {
        let dom = Interval::new(0.0, 4.0).unwrap();
        let s = compile(
            &FunctionDescriptor::Constant { c: 2.0 },
            &GridSpec::new(4, 0.5, 1e-12, 1e-10).unwrap(),
            dom,
        )
        .unwrap();
        assert!(s.values().iter().all(|&v| v == 2.0));
        assert_eq!(s.integrate(dom).unwrap(), 8.0);
    }

    #[test]
    fn indicator_compiles_exactly() {
        let dom = Interval::new(-1.0, 2.0).unwrap();
        let f = FunctionDescriptor::Indicator {
            support: Interval::new(0.0, 1.0).unwrap(),
        };
        let s = compile(&f, &GridSpec::new(3, 0.5, 1e-12, 1e-10).unwrap(), dom).unwrap();
        let c = s.compress();
        assert_eq!(c.values(), &[0.0, 1.0, 0.0]);
        assert_eq!(c.breakpoints(), &[-1.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn log_bump_mean_on_its_support_is_one() {
        let dom = Interval::new(-1.0, 1.0).unwrap();
        let s = compile_default(&log_bump(), dom).unwrap();
        let total = s.integrate(dom).unwrap();
        assert!((total - 2.0).abs() < 1e-6, "integral {total}");
    }

    #[test]
    fn sqrt_bump_integrates_via_quadrature() {
        let dom = Interval::new(-1.0, 1.0).unwrap();
        let f = FunctionDescriptor::LogPowBump {
            a: 1.0,
            b: 1.0,
            x0: 0.0,
            p: 0.5,
        };
        let s = compile_default(&f, dom).unwrap();
        let total = s.integrate(dom).unwrap();
        let expect = std::f64::consts::PI.sqrt(); // 2 * Gamma(3/2)
        assert!((total - expect).abs() < 1e-6, "integral {total}");
    }

    #[test]
    fn mesh_refuses_absurd_cell_counts() {
        let dom = Interval::new(0.0, 1.0).unwrap();
        let err = compile(
            &log_bump(),
            &GridSpec::new(3_999_999, 0.5, 1e-12, 1e-8).unwrap(),
            dom,
        );
        assert!(matches!(err, Err(Error::MeshTooFine { .. })));
    }
}
