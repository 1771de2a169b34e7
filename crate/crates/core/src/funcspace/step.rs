use crate::error::{Error, Result};
use crate::interval::Interval;

/// A finite piecewise-constant function: strictly increasing breakpoints
/// x_0 < ... < x_m spanning the domain, and the value taken on each open
/// cell (x_{i-1}, x_i).
///
/// This is the exact computational substrate: every shapewise functional
/// downstream is computed on step functions without further approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    domain: Interval,
    xs: Vec<f64>,
    vs: Vec<f64>,
    /// Prefix sums of v_i * (x_i - x_{i-1}); pref[0] = 0.
    pref: Vec<f64>,
}

impl StepFunction {
    pub fn new(domain: Interval, xs: Vec<f64>, vs: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 || vs.len() + 1 != xs.len() {
            return Err(Error::InvalidDescriptor {
                field: "step.breakpoints".into(),
                reason: format!(
                    "need m >= 1 cells, got {} breakpoints and {} values",
                    xs.len(),
                    vs.len()
                ),
            });
        }
        if xs[0] != domain.a || *xs.last().unwrap() != domain.b {
            return Err(Error::InvalidDescriptor {
                field: "step.breakpoints".into(),
                reason: "breakpoints must span the domain exactly".into(),
            });
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidDescriptor {
                field: "step.breakpoints".into(),
                reason: "breakpoints must be strictly increasing".into(),
            });
        }
        if vs.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDescriptor {
                field: "step.values".into(),
                reason: "cell values must be finite".into(),
            });
        }
        let mut pref = Vec::with_capacity(xs.len());
        pref.push(0.0);
        let mut acc = 0.0;
        for i in 0..vs.len() {
            acc += vs[i] * (xs[i + 1] - xs[i]);
            pref.push(acc);
        }
        Ok(Self {
            domain,
            xs,
            vs,
            pref,
        })
    }

    /// Single-cell constant function.
    pub fn constant(domain: Interval, c: f64) -> Self {
        Self::new(domain, vec![domain.a, domain.b], vec![c]).expect("valid by construction")
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.vs
    }

    pub fn num_cells(&self) -> usize {
        self.vs.len()
    }

    /// Index of the cell whose closure contains x, treating cells as
    /// right-open: cell i covers [x_i, x_{i+1}).
    pub fn cell_index(&self, x: f64) -> usize {
        if x < self.xs[1] {
            return 0;
        }
        if x >= self.xs[self.xs.len() - 2] {
            return self.vs.len() - 1;
        }
        // partition_point gives the first breakpoint > x.
        self.xs.partition_point(|&b| b <= x) - 1
    }

    /// Right-continuous evaluation: value of the cell [x_i, x_{i+1})
    /// containing x. At the right domain endpoint the last value is used.
    pub fn eval(&self, x: f64) -> f64 {
        self.vs[self.cell_index(x)]
    }

    /// Exact integral over (a, b) via prefix sums. Degenerate ranges
    /// (b <= a) integrate to zero.
    pub fn integrate_range(&self, a: f64, b: f64) -> Result<f64> {
        let slack = 1e-12 * self.domain.len().max(1.0);
        if a < self.domain.a - slack || b > self.domain.b + slack {
            return Err(Error::ShapeOutsideDomain {
                a,
                b,
                lo: self.domain.a,
                hi: self.domain.b,
            });
        }
        let a = a.max(self.domain.a);
        let b = b.min(self.domain.b);
        if b <= a {
            return Ok(0.0);
        }
        let i = self.cell_index(a);
        let j = self.cell_index(b.min(self.domain.b));
        if i == j {
            return Ok(self.vs[i] * (b - a));
        }
        let head = self.vs[i] * (self.xs[i + 1] - a);
        let tail = self.vs[j] * (b - self.xs[j]);
        let inner = self.pref[j] - self.pref[i + 1];
        Ok(head + inner + tail)
    }

    pub fn integrate(&self, shape: Interval) -> Result<f64> {
        self.integrate_range(shape.a, shape.b)
    }

    /// Apply a pointwise map to all cell values.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> StepFunction {
        let vs = self.vs.iter().map(|&v| f(v)).collect();
        StepFunction::new(self.domain, self.xs.clone(), vs).expect("same breakpoints stay valid")
    }

    /// Merge the breakpoint sets of two step functions on a common domain
    /// and combine cell values with `op`.
    pub fn merge_with<F: Fn(f64, f64) -> f64>(&self, other: &StepFunction, op: F) -> Result<StepFunction> {
        let slack = 1e-12 * self.domain.len().max(1.0);
        if (self.domain.a - other.domain.a).abs() > slack
            || (self.domain.b - other.domain.b).abs() > slack
        {
            return Err(Error::DomainMismatch {
                a0: self.domain.a,
                b0: self.domain.b,
                a1: other.domain.a,
                b1: other.domain.b,
            });
        }
        let mut xs = Vec::with_capacity(self.xs.len() + other.xs.len());
        xs.push(self.domain.a);
        let (mut i, mut j) = (0usize, 0usize);
        loop {
            let x = match (self.xs.get(i), other.xs.get(j)) {
                (Some(&a), Some(&b)) => {
                    if a <= b {
                        i += 1;
                        a
                    } else {
                        j += 1;
                        b
                    }
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => break,
            };
            if x > *xs.last().unwrap() && x < self.domain.b {
                xs.push(x);
            }
        }
        xs.push(self.domain.b);
        let mut vs = Vec::with_capacity(xs.len() - 1);
        for w in xs.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            vs.push(op(self.eval(mid), other.eval(mid)));
        }
        StepFunction::new(self.domain, xs, vs)
    }

    /// Restriction to a subinterval, keeping interior breakpoints.
    pub fn restrict(&self, shape: Interval) -> Result<StepFunction> {
        let slack = 1e-12 * self.domain.len().max(1.0);
        if !self.domain.contains_interval(&shape, slack) {
            return Err(Error::ShapeOutsideDomain {
                a: shape.a,
                b: shape.b,
                lo: self.domain.a,
                hi: self.domain.b,
            });
        }
        let a = shape.a.max(self.domain.a);
        let b = shape.b.min(self.domain.b);
        let dom = Interval::new(a, b)?;
        let mut xs = vec![a];
        for &x in &self.xs {
            if x > a && x < b {
                xs.push(x);
            }
        }
        xs.push(b);
        let mut vs = Vec::with_capacity(xs.len() - 1);
        for w in xs.windows(2) {
            vs.push(self.eval(0.5 * (w[0] + w[1])));
        }
        StepFunction::new(dom, xs, vs)
    }

    /// Domain scaling and value scaling: x -> a * f(x / b) on the
    /// correspondingly scaled domain shifted by x0.
    pub fn transform(&self, a: f64, b: f64, x0: f64) -> Result<StepFunction> {
        assert!(a > 0.0 && b > 0.0, "scaling factors must be positive");
        let xs: Vec<f64> = self.xs.iter().map(|&x| x0 + b * x).collect();
        let vs: Vec<f64> = self.vs.iter().map(|&v| a * v).collect();
        let dom = Interval::new(xs[0], *xs.last().unwrap())?;
        StepFunction::new(dom, xs, vs)
    }

    /// L1 distance over a window, exact on the merged grid.
    pub fn l1_distance(&self, other: &StepFunction, window: Interval) -> Result<f64> {
        let diff = self.merge_with(other, |x, y| (x - y).abs())?;
        diff.integrate(window)
    }

    /// L^p norms over the whole domain, p in {1, 2} plus the sup norm.
    pub fn norm_l1(&self) -> f64 {
        self.map(f64::abs).integrate(self.domain).unwrap()
    }

    pub fn norm_l2(&self) -> f64 {
        self.map(|v| v * v).integrate(self.domain).unwrap().sqrt()
    }

    pub fn norm_linf(&self) -> f64 {
        self.vs.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
    }

    /// Merge adjacent cells carrying bitwise-identical values.
    pub fn compress(&self) -> StepFunction {
        let mut xs = vec![self.xs[0]];
        let mut vs: Vec<f64> = Vec::new();
        for i in 0..self.vs.len() {
            if vs.last().is_none_or(|&last| last != self.vs[i]) {
                vs.push(self.vs[i]);
                xs.push(self.xs[i + 1]);
            } else {
                *xs.last_mut().unwrap() = self.xs[i + 1];
            }
        }
        StepFunction::new(self.domain, xs, vs).expect("compression preserves validity")
    }
}
