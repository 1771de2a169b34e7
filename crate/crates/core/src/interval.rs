use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite open interval (a, b) with a < b.
///
/// Intervals are the only shape basis implemented; every shapewise
/// functional takes one of these. Serializes as the two-element array
/// `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[f64; 2]>::deserialize(deserializer)?;
        Interval::new(a, b).map_err(D::Error::custom)
    }
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidDescriptor {
                field: "interval".into(),
                reason: format!("endpoints must be finite, got ({a}, {b})"),
            });
        }
        if a >= b {
            return Err(Error::InvalidDescriptor {
                field: "interval".into(),
                reason: format!("requires a < b, got ({a}, {b})"),
            });
        }
        Ok(Self { a, b })
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a < x && x < self.b
    }

    /// Containment with a small absolute slack, used when a shape is
    /// checked against a step-function domain.
    pub fn contains_interval(&self, other: &Interval, slack: f64) -> bool {
        other.a >= self.a - slack && other.b <= self.b + slack
    }

    /// Length of the overlap with `other`; zero when disjoint.
    pub fn overlap(&self, other: &Interval) -> f64 {
        (self.b.min(other.b) - self.a.max(other.a)).max(0.0)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }
}
