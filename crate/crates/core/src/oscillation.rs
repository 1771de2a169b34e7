//! Shapewise functionals on intervals: means, mean oscillation, medians,
//! the symmetric double-integral form, and the indicator-overlap formula.
//! Everything here is exact on step functions; no quadrature occurs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcspace::StepFunction;
use crate::interval::Interval;

/// Shape basis description: finite open intervals, optionally capped in
/// measure, with the density constant used by the jump diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub max_measure: Option<f64>,
    pub density_q: f64,
}

impl Default for BasisSpec {
    fn default() -> Self {
        Self {
            max_measure: None,
            density_q: 0.25,
        }
    }
}

impl BasisSpec {
    pub fn with_max_measure(delta: f64) -> Self {
        Self {
            max_measure: Some(delta),
            density_q: 0.25,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.density_q > 0.0 && self.density_q <= 0.25) {
            return Err(Error::InvalidDescriptor {
                field: "basis.density_q".into(),
                reason: format!("must lie in (0, 1/4], got {}", self.density_q),
            });
        }
        if let Some(m) = self.max_measure {
            if !(m > 0.0) {
                return Err(Error::InvalidDescriptor {
                    field: "basis.max_measure".into(),
                    reason: "must be positive when set".into(),
                });
            }
        }
        Ok(())
    }
}

fn check_shape(s: &StepFunction, shape: Interval) -> Result<()> {
    let dom = s.domain();
    let slack = 1e-12 * dom.len().max(1.0);
    if !dom.contains_interval(&shape, slack) {
        return Err(Error::ShapeOutsideDomain {
            a: shape.a,
            b: shape.b,
            lo: dom.a,
            hi: dom.b,
        });
    }
    let min = 1e-12 * dom.len();
    if shape.len() < min {
        return Err(Error::DegenerateShape {
            measure: shape.len(),
            min,
        });
    }
    Ok(())
}

/// Average of a step function over a shape, exact via prefix sums.
pub fn mean_on(s: &StepFunction, shape: Interval) -> Result<f64> {
    check_shape(s, shape)?;
    Ok(s.integrate(shape)? / shape.len())
}

/// Visits every (value, length) pair of the cells meeting the shape,
/// with partial cells clipped to it.
fn for_cells_in<F: FnMut(f64, f64)>(s: &StepFunction, shape: Interval, mut visit: F) {
    let xs = s.breakpoints();
    let vs = s.values();
    let a = shape.a.max(s.domain().a);
    let b = shape.b.min(s.domain().b);
    let i = s.cell_index(a);
    let j = s.cell_index(b);
    if i == j {
        visit(vs[i], b - a);
        return;
    }
    visit(vs[i], xs[i + 1] - a);
    for c in i + 1..j {
        visit(vs[c], xs[c + 1] - xs[c]);
    }
    visit(vs[j], b - xs[j]);
}

/// Mean oscillation: the average over the shape of |f - f_S|.
pub fn mean_oscillation(s: &StepFunction, shape: Interval) -> Result<f64> {
    let mean = mean_on(s, shape)?;
    let mut dev = 0.0;
    for_cells_in(s, shape, |v, len| dev += (v - mean).abs() * len);
    Ok(dev / shape.len())
}

/// The lower median: smallest cell value m with |{f < m}| <= |S|/2 and
/// |{f > m}| <= |S|/2, lengths as weights.
pub fn median_on(s: &StepFunction, shape: Interval) -> Result<f64> {
    check_shape(s, shape)?;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    for_cells_in(s, shape, |v, len| cells.push((v, len)));
    cells.sort_by(|x, y| x.0.total_cmp(&y.0));
    let half = 0.5 * shape.len();
    let mut below = 0.0;
    let mut i = 0;
    while i < cells.len() {
        // group ties so the weight strictly below the candidate is right
        let v = cells[i].0;
        let mut at = 0.0;
        let mut j = i;
        while j < cells.len() && cells[j].0 == v {
            at += cells[j].1;
            j += 1;
        }
        let above = shape.len() - below - at;
        if below <= half && above <= half {
            return Ok(v);
        }
        below += at;
        i = j;
    }
    unreachable!("a weighted median always exists")
}

/// The double-integral oscillation form: the mean over S x S of
/// |f(x) - f(y)|, computed with sorted values and weighted prefix sums.
pub fn double_integral_oscillation(s: &StepFunction, shape: Interval) -> Result<f64> {
    check_shape(s, shape)?;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    for_cells_in(s, shape, |v, len| cells.push((v, len)));
    cells.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut len_below = 0.0;
    let mut weighted_below = 0.0;
    let mut acc = 0.0;
    for &(v, len) in &cells {
        acc += len * (v * len_below - weighted_below);
        len_below += len;
        weighted_below += v * len;
    }
    Ok(2.0 * acc / (shape.len() * shape.len()))
}

/// Oscillation of an indicator with overlap ratio rho: 2 rho (1 - rho).
pub fn indicator_oscillation(rho: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::InvalidDescriptor {
            field: "rho".into(),
            reason: format!("must lie in [0, 1], got {rho}"),
        });
    }
    Ok(2.0 * rho * (1.0 - rho))
}

/// Block-decomposed index over a step function for fast repeated
/// oscillation queries. Exact: every query reproduces the direct scan up
/// to summation order.
pub struct OscIndex<'a> {
    s: &'a StepFunction,
    block: usize,
    /// per block: prefix sums of lengths in value order (len b+1)
    plen: Vec<Vec<f64>>,
    /// per block: prefix sums of value*length in value order
    pvlen: Vec<Vec<f64>>,
    /// per block: values in sorted order, for binary search
    sorted_vals: Vec<Vec<f64>>,
}

impl<'a> OscIndex<'a> {
    pub fn build(s: &'a StepFunction) -> Self {
        let m = s.num_cells();
        let block = (m as f64).sqrt().ceil().max(1.0) as usize;
        let xs = s.breakpoints();
        let vs = s.values();
        let nblocks = m.div_ceil(block);
        let mut plen = Vec::with_capacity(nblocks);
        let mut pvlen = Vec::with_capacity(nblocks);
        let mut sorted_vals = Vec::with_capacity(nblocks);
        for bi in 0..nblocks {
            let lo = bi * block;
            let hi = (lo + block).min(m);
            let mut idx: Vec<u32> = (lo as u32..hi as u32).collect();
            idx.sort_by(|&i, &j| vs[i as usize].total_cmp(&vs[j as usize]));
            let mut pl = Vec::with_capacity(idx.len() + 1);
            let mut pv = Vec::with_capacity(idx.len() + 1);
            let mut sv = Vec::with_capacity(idx.len());
            pl.push(0.0);
            pv.push(0.0);
            let (mut al, mut av) = (0.0, 0.0);
            for &i in &idx {
                let i = i as usize;
                let len = xs[i + 1] - xs[i];
                al += len;
                av += vs[i] * len;
                pl.push(al);
                pv.push(av);
                sv.push(vs[i]);
            }
            plen.push(pl);
            pvlen.push(pv);
            sorted_vals.push(sv);
        }
        Self {
            s,
            block,
            plen,
            pvlen,
            sorted_vals,
        }
    }

    pub fn step(&self) -> &StepFunction {
        self.s
    }

    /// Integral of |f - c| over (a, b); edge cells direct, full blocks via
    /// binary search on the sorted values.
    fn abs_dev(&self, a: f64, b: f64, c: f64) -> f64 {
        let xs = self.s.breakpoints();
        let vs = self.s.values();
        let i = self.s.cell_index(a);
        let j = self.s.cell_index(b);
        if i == j {
            return (vs[i] - c).abs() * (b - a);
        }
        let mut acc = (vs[i] - c).abs() * (xs[i + 1] - a) + (vs[j] - c).abs() * (b - xs[j]);
        let mut cell = i + 1;
        while cell < j {
            let bi = cell / self.block;
            let bstart = bi * self.block;
            let bend = (bstart + self.block).min(vs.len());
            if cell == bstart && bend <= j {
                // whole block inside: split at c
                let sv = &self.sorted_vals[bi];
                let k = sv.partition_point(|&v| v <= c);
                let pl = &self.plen[bi];
                let pv = &self.pvlen[bi];
                let below = c * pl[k] - pv[k];
                let total_len = pl[pl.len() - 1];
                let total_v = pv[pv.len() - 1];
                let above = (total_v - pv[k]) - c * (total_len - pl[k]);
                acc += below + above;
                cell = bend;
            } else {
                acc += (vs[cell] - c).abs() * (xs[cell + 1] - xs[cell]);
                cell += 1;
            }
        }
        acc
    }

    /// Mean oscillation over (a, b) using the block index.
    pub fn oscillation(&self, a: f64, b: f64) -> f64 {
        let len = b - a;
        if len <= 0.0 {
            return 0.0;
        }
        let mean = self.s.integrate_range(a, b).unwrap_or(0.0) / len;
        self.abs_dev(a, b, mean) / len
    }
}
