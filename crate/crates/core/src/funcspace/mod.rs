//! Closed-form function descriptors and their compilation to exact step
//! functions on graded meshes.

mod compile;
mod descriptor;
mod quad;
mod step;

pub use compile::{compile, compile_default, GridSpec};
pub use descriptor::{series_build, ClampBound, DescriptorDoc, FunctionDescriptor, SeriesSpec};
pub use quad::adaptive_quad;
pub use step::StepFunction;

use crate::error::Result;
use crate::interval::Interval;

/// Pointwise evaluation of a descriptor's closed form.
pub fn evaluate(f: &FunctionDescriptor, x: f64) -> Result<f64> {
    f.evaluate(x)
}

/// Descriptor of x -> a * f((x - x0) / b) for positive a, b.
pub fn transform(f: &FunctionDescriptor, a: f64, b: f64, x0: f64) -> FunctionDescriptor {
    f.transform(a, b, x0)
}

/// Exact integral of a step function over a shape.
pub fn integrate(s: &StepFunction, shape: Interval) -> Result<f64> {
    s.integrate(shape)
}
