use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// A clamp bound: a finite real or one of the infinities. JSON accepts
/// plain numbers as well as the string literals "inf" and "-inf".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampBound(pub f64);

impl Serialize for ClampBound {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            "inf".serialize(serializer)
        } else if self.0 == f64::NEG_INFINITY {
            "-inf".serialize(serializer)
        } else {
            self.0.serialize(serializer)
        }
    }
}

impl<'de> Deserialize<'de> for ClampBound {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(x) => Ok(ClampBound(x)),
            Raw::Text(s) => match s.trim() {
                "inf" | "+inf" => Ok(ClampBound(f64::INFINITY)),
                "-inf" => Ok(ClampBound(f64::NEG_INFINITY)),
                other => Err(D::Error::custom(format!(
                    "clamp bound must be a number, \"inf\" or \"-inf\", got {other:?}"
                ))),
            },
        }
    }
}

/// Closed-form abstract syntax for a one-dimensional function.
///
/// `LogPowBump { a, b, x0, p }` represents a * ((-log(|x - x0| / b))_+)^p,
/// supported on (x0 - b, x0 + b) and singular at x0 when unclamped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FunctionDescriptor {
    Constant {
        c: f64,
    },
    Affine {
        slope: f64,
        intercept: f64,
        support: Interval,
    },
    #[serde(rename = "logpow")]
    LogPowBump {
        a: f64,
        b: f64,
        x0: f64,
        p: f64,
    },
    Cosine {
        amp: f64,
        freq: f64,
        phase: f64,
        offset: f64,
        support: Interval,
    },
    Indicator {
        support: Interval,
    },
    Clamp {
        inner: Box<FunctionDescriptor>,
        lo: ClampBound,
        hi: ClampBound,
    },
    Sum {
        terms: Vec<FunctionDescriptor>,
    },
    Series {
        #[serde(flatten)]
        spec: SeriesSpec,
    },
}

/// A finite well-spaced series of scaled, dilated, translated copies of a
/// mother bump: sum over k of a_k * base((x - n_k) / b_k).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesSpec {
    pub base: Box<FunctionDescriptor>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub n: Vec<f64>,
    #[serde(rename = "K")]
    pub k: usize,
}

impl<'de> Deserialize<'de> for SeriesSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            base: Box<FunctionDescriptor>,
            a: Vec<f64>,
            b: Vec<f64>,
            #[serde(default)]
            n: Option<Vec<f64>>,
            #[serde(rename = "K")]
            k: usize,
        }
        let raw = Raw::deserialize(deserializer)?;
        SeriesSpec::new(raw.base, raw.a, raw.b, raw.n, raw.k).map_err(D::Error::custom)
    }
}

impl SeriesSpec {
    /// Builds a series spec, deriving translations when `n` is omitted:
    /// n_1 = max(b_1, 9(b_1 + b_2)) and n_{k+1} = n_k + 9(b_k + b_{k+1}),
    /// which meets the well-spacing requirement with equality.
    pub fn new(
        base: Box<FunctionDescriptor>,
        a: Vec<f64>,
        b: Vec<f64>,
        n: Option<Vec<f64>>,
        k: usize,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDescriptor {
                field: "series.K".into(),
                reason: "need at least one retained term".into(),
            });
        }
        if a.len() < k || b.len() < k {
            return Err(Error::InvalidDescriptor {
                field: "series.a/b".into(),
                reason: format!("lists must carry K = {k} entries"),
            });
        }
        let a: Vec<f64> = a[..k].to_vec();
        let b: Vec<f64> = b[..k].to_vec();
        if let Some(bad) = a.iter().position(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(Error::InvalidDescriptor {
                field: format!("series.a[{bad}]"),
                reason: "scales must be positive and finite".into(),
            });
        }
        if let Some(bad) = b.iter().position(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(Error::InvalidDescriptor {
                field: format!("series.b[{bad}]"),
                reason: "dilations must be positive and finite".into(),
            });
        }
        let n = match n {
            Some(n) => {
                if n.len() < k {
                    return Err(Error::InvalidDescriptor {
                        field: "series.n".into(),
                        reason: format!("list must carry K = {k} entries"),
                    });
                }
                n[..k].to_vec()
            }
            None => Self::default_translations(&b),
        };
        let spec = Self { base, a, b, n, k };
        spec.validate_spacing()?;
        Ok(spec)
    }

    pub fn default_translations(b: &[f64]) -> Vec<f64> {
        let mut n = Vec::with_capacity(b.len());
        let first = if b.len() > 1 {
            b[0].max(9.0 * (b[0] + b[1]))
        } else {
            b[0]
        };
        n.push(first);
        for k in 1..b.len() {
            n.push(n[k - 1] + 9.0 * (b[k - 1] + b[k]));
        }
        n
    }

    /// Checks n_1 >= b_1 and the gap condition n_{k+1} - n_k >= 9(b_k + b_{k+1}),
    /// reporting the first offending index. Comparisons carry slack at
    /// the rounding scale of the translations, so that sequences meeting
    /// the bound with equality survive the round trip through partial
    /// sums even when the gaps are tiny relative to the positions.
    pub fn validate_spacing(&self) -> Result<()> {
        if self.n[0] < self.b[0] * (1.0 - 1e-12) {
            return Err(Error::WellSpacing {
                index: 0,
                required: self.b[0],
                actual: self.n[0],
            });
        }
        for k in 0..self.k - 1 {
            let gap = self.n[k + 1] - self.n[k];
            let required = 9.0 * (self.b[k] + self.b[k + 1]);
            let slack = 1e-12 * required.max(self.n[k].abs()).max(self.n[k + 1].abs());
            if gap < required - slack {
                return Err(Error::WellSpacing {
                    index: k + 1,
                    required,
                    actual: gap,
                });
            }
        }
        Ok(())
    }
}

impl FunctionDescriptor {
    /// Structural validation of every node: bump parameters, clamp bounds,
    /// series spacing.
    pub fn validate(&self) -> Result<()> {
        match self {
            FunctionDescriptor::Constant { c } => {
                if !c.is_finite() {
                    return Err(Error::InvalidDescriptor {
                        field: "constant.c".into(),
                        reason: "must be finite".into(),
                    });
                }
            }
            FunctionDescriptor::Affine {
                slope, intercept, ..
            } => {
                if !slope.is_finite() || !intercept.is_finite() {
                    return Err(Error::InvalidDescriptor {
                        field: "affine".into(),
                        reason: "slope and intercept must be finite".into(),
                    });
                }
            }
            FunctionDescriptor::LogPowBump { a, b, x0, p } => {
                if !(*a > 0.0) || !a.is_finite() {
                    return Err(Error::InvalidDescriptor {
                        field: "logpow.a".into(),
                        reason: format!("must be positive, got {a}"),
                    });
                }
                if !(*b > 0.0) || !b.is_finite() {
                    return Err(Error::InvalidDescriptor {
                        field: "logpow.b".into(),
                        reason: format!("must be positive, got {b}"),
                    });
                }
                if !x0.is_finite() {
                    return Err(Error::InvalidDescriptor {
                        field: "logpow.x0".into(),
                        reason: "must be finite".into(),
                    });
                }
                if !(*p > 0.0 && *p <= 1.0) {
                    return Err(Error::InvalidDescriptor {
                        field: "logpow.p".into(),
                        reason: format!("must lie in (0, 1], got {p}"),
                    });
                }
            }
            FunctionDescriptor::Cosine {
                amp,
                freq,
                phase,
                offset,
                ..
            } => {
                for (name, v) in [("amp", amp), ("freq", freq), ("phase", phase), ("offset", offset)]
                {
                    if !v.is_finite() {
                        return Err(Error::InvalidDescriptor {
                            field: format!("cosine.{name}"),
                            reason: "must be finite".into(),
                        });
                    }
                }
            }
            FunctionDescriptor::Indicator { .. } => {}
            FunctionDescriptor::Clamp { inner, lo, hi } => {
                if !(lo.0 < hi.0) {
                    return Err(Error::InvalidDescriptor {
                        field: "clamp".into(),
                        reason: format!("requires lo < hi, got ({}, {})", lo.0, hi.0),
                    });
                }
                inner.validate()?;
            }
            FunctionDescriptor::Sum { terms } => {
                for t in terms {
                    t.validate()?;
                }
            }
            FunctionDescriptor::Series { spec } => {
                spec.base.validate()?;
                spec.validate_spacing()?;
                if let Some(hull) = spec.base.support_hull() {
                    if hull.a < -1.0 - 1e-12 || hull.b > 1.0 + 1e-12 {
                        return Err(Error::InvalidDescriptor {
                            field: "series.base".into(),
                            reason: format!(
                                "mother bump must vanish outside (-1, 1), support is ({}, {})",
                                hull.a, hull.b
                            ),
                        });
                    }
                } else {
                    return Err(Error::InvalidDescriptor {
                        field: "series.base".into(),
                        reason: "mother bump must have compact support".into(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Pointwise evaluation of the closed form. Errors at the singular
    /// center of an unclamped log-power bump.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        match self {
            FunctionDescriptor::Constant { c } => Ok(*c),
            FunctionDescriptor::Affine {
                slope,
                intercept,
                support,
            } => Ok(if support.contains(x) {
                slope * x + intercept
            } else {
                0.0
            }),
            FunctionDescriptor::LogPowBump { a, b, x0, p } => {
                let u = (x - x0).abs();
                if u == 0.0 {
                    return Err(Error::SingularPoint { x });
                }
                if u >= *b {
                    return Ok(0.0);
                }
                let t = -(u / b).ln();
                Ok(if *p == 1.0 { a * t } else { a * t.powf(*p) })
            }
            FunctionDescriptor::Cosine {
                amp,
                freq,
                phase,
                offset,
                support,
            } => Ok(if support.contains(x) {
                amp * (freq * x + phase).cos() + offset
            } else {
                0.0
            }),
            FunctionDescriptor::Indicator { support } => {
                Ok(if support.contains(x) { 1.0 } else { 0.0 })
            }
            FunctionDescriptor::Clamp { inner, lo, hi } => {
                Ok(inner.evaluate(x)?.max(lo.0).min(hi.0))
            }
            FunctionDescriptor::Sum { terms } => {
                let mut acc = 0.0;
                for t in terms {
                    acc += t.evaluate(x)?;
                }
                Ok(acc)
            }
            FunctionDescriptor::Series { spec } => {
                let mut acc = 0.0;
                for k in 0..spec.k {
                    // disjoint supports: at most one term is nonzero
                    let u = (x - spec.n[k]) / spec.b[k];
                    if u.abs() < 1.0 {
                        if u == 0.0 {
                            return Err(Error::SingularPoint { x });
                        }
                        acc += spec.a[k] * spec.base.evaluate(u)?;
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Descriptor of x -> a * f((x - x0) / b), built structurally so that
    /// closed forms stay closed.
    pub fn transform(&self, a: f64, b: f64, x0: f64) -> FunctionDescriptor {
        assert!(a > 0.0 && b > 0.0, "transform needs positive a, b");
        let tr_support = |s: &Interval| Interval {
            a: x0 + b * s.a,
            b: x0 + b * s.b,
        };
        match self {
            FunctionDescriptor::Constant { c } => FunctionDescriptor::Constant { c: a * c },
            FunctionDescriptor::Affine {
                slope,
                intercept,
                support,
            } => FunctionDescriptor::Affine {
                slope: a * slope / b,
                intercept: a * (intercept - slope * x0 / b),
                support: tr_support(support),
            },
            FunctionDescriptor::LogPowBump {
                a: amp,
                b: width,
                x0: c,
                p,
            } => FunctionDescriptor::LogPowBump {
                a: a * amp,
                b: b * width,
                x0: x0 + b * c,
                p: *p,
            },
            FunctionDescriptor::Cosine {
                amp,
                freq,
                phase,
                offset,
                support,
            } => FunctionDescriptor::Cosine {
                amp: a * amp,
                freq: freq / b,
                phase: phase - freq * x0 / b,
                offset: a * offset,
                support: tr_support(support),
            },
            FunctionDescriptor::Indicator { support } => {
                if a == 1.0 {
                    FunctionDescriptor::Indicator {
                        support: tr_support(support),
                    }
                } else {
                    FunctionDescriptor::Affine {
                        slope: 0.0,
                        intercept: a,
                        support: tr_support(support),
                    }
                }
            }
            FunctionDescriptor::Clamp { inner, lo, hi } => FunctionDescriptor::Clamp {
                inner: Box::new(inner.transform(a, b, x0)),
                lo: ClampBound(a * lo.0),
                hi: ClampBound(a * hi.0),
            },
            FunctionDescriptor::Sum { terms } => FunctionDescriptor::Sum {
                terms: terms.iter().map(|t| t.transform(a, b, x0)).collect(),
            },
            FunctionDescriptor::Series { spec } => {
                // expand first so the per-term invariants need no re-derivation
                series_build(spec)
                    .expect("stored series specs are valid")
                    .transform(a, b, x0)
            }
        }
    }

    /// Smallest interval outside which the function vanishes, when one
    /// exists. `None` means unbounded support.
    pub fn support_hull(&self) -> Option<Interval> {
        fn merge(acc: Option<Option<Interval>>, next: Option<Interval>) -> Option<Option<Interval>> {
            match acc {
                None => Some(next),
                Some(None) => Some(None),
                Some(Some(cur)) => Some(next.map(|n| Interval {
                    a: cur.a.min(n.a),
                    b: cur.b.max(n.b),
                })),
            }
        }
        match self {
            FunctionDescriptor::Constant { c } => {
                if *c == 0.0 {
                    // empty support; use a degenerate stand-in at the origin
                    Some(Interval { a: 0.0, b: 0.0 })
                } else {
                    None
                }
            }
            FunctionDescriptor::Affine { support, .. }
            | FunctionDescriptor::Cosine { support, .. }
            | FunctionDescriptor::Indicator { support } => Some(*support),
            FunctionDescriptor::LogPowBump { b, x0, .. } => Some(Interval {
                a: x0 - b,
                b: x0 + b,
            }),
            FunctionDescriptor::Clamp { inner, lo, hi } => {
                // the clamp of a compactly supported function keeps that
                // support only when 0 stays a fixed point
                if lo.0 <= 0.0 && hi.0 >= 0.0 {
                    inner.support_hull()
                } else {
                    None
                }
            }
            FunctionDescriptor::Sum { terms } => {
                let mut acc = None;
                for t in terms {
                    acc = merge(acc, t.support_hull());
                }
                acc.unwrap_or(Some(Interval { a: 0.0, b: 0.0 }))
            }
            FunctionDescriptor::Series { spec } => {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for k in 0..spec.k {
                    lo = lo.min(spec.n[k] - spec.b[k]);
                    hi = hi.max(spec.n[k] + spec.b[k]);
                }
                Some(Interval { a: lo, b: hi })
            }
        }
    }

    /// Centers of unclamped logarithmic singularities, paired with their
    /// bump half-widths. Drives mesh grading.
    pub fn singularities(&self, out: &mut Vec<(f64, f64)>) {
        match self {
            FunctionDescriptor::LogPowBump { b, x0, .. } => out.push((*x0, *b)),
            FunctionDescriptor::Clamp { inner, .. } => inner.singularities(out),
            FunctionDescriptor::Sum { terms } => {
                for t in terms {
                    t.singularities(out);
                }
            }
            FunctionDescriptor::Series { spec } => {
                let mut base = Vec::new();
                spec.base.singularities(&mut base);
                for k in 0..spec.k {
                    for &(c, w) in &base {
                        out.push((spec.n[k] + spec.b[k] * c, spec.b[k] * w));
                    }
                }
            }
            _ => {}
        }
    }
}

/// Expands a validated series spec into an explicit sum of transformed
/// copies of the mother bump.
pub fn series_build(spec: &SeriesSpec) -> Result<FunctionDescriptor> {
    spec.validate_spacing()?;
    let mut terms = Vec::with_capacity(spec.k);
    for k in 0..spec.k {
        terms.push(spec.base.transform(spec.a[k], spec.b[k], spec.n[k]));
    }
    Ok(FunctionDescriptor::Sum { terms })
}

/// Descriptor document as consumed by the command-line front end:
/// a finite domain plus the descriptor tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptorDoc {
    pub domain: Interval,
    pub node: FunctionDescriptor,
}
