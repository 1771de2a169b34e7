use thiserror::Error;

/// Errors produced by descriptor validation, compilation and the
/// shapewise/seminorm operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid descriptor field `{field}`: {reason}")]
    InvalidDescriptor { field: String, reason: String },

    #[error("evaluation at singular point x = {x}")]
    SingularPoint { x: f64 },

    #[error(
        "well-spacing violated at index {index}: gap {actual} < required {required}"
    )]
    WellSpacing {
        index: usize,
        required: f64,
        actual: f64,
    },

    #[error("interval ({a}, {b}) is not contained in the domain ({lo}, {hi})")]
    ShapeOutsideDomain { a: f64, b: f64, lo: f64, hi: f64 },

    #[error("shape of measure {measure} is degenerate (below {min} for this domain)")]
    DegenerateShape { measure: f64, min: f64 },

    #[error("step functions live on different domains: ({a0}, {b0}) vs ({a1}, {b1})")]
    DomainMismatch { a0: f64, b0: f64, a1: f64, b1: f64 },

    #[error("radius {radius} maps to s = {s} outside the rearrangement domain (0, {len})")]
    RadiusOutOfRange { radius: f64, s: f64, len: f64 },

    #[error("interval ({a}, {b}) is not compactly contained in ({lo}, {hi})")]
    NotCompactlyContained { a: f64, b: f64, lo: f64, hi: f64 },

    #[error("series diagnosis needs a log-power bump base, got `{kind}`")]
    UnsupportedBase { kind: String },

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("cube center {center} with diameter {diameter} violates |x| <= R - d/2 for R = {radius}")]
    CubeOutsideBall {
        center: f64,
        diameter: f64,
        radius: f64,
    },

    #[error("truncation did not stabilize after {doublings} doublings (last relative change {change})")]
    StabilizationFailure { doublings: u32, change: f64 },

    #[error("mesh for this grid would exceed {max} cells")]
    MeshTooFine { max: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
