use thiserror::Error;

/// Errors produced by measure construction, function evaluation and the
/// spectral solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite {what}: {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("atom mass must be >= 0: got {mass} at position {position}")]
    NegativeMass { position: f64, mass: f64 },

    #[error("slab height must be >= 0: got {height} on [{a}, {b}]")]
    NegativeHeight { a: f64, b: f64, height: f64 },

    #[error("slab endpoints must satisfy a <= b: got [{a}, {b}]")]
    ReversedSlab { a: f64, b: f64 },

    #[error("slabs [{a0}, {b0}] and [{a1}, {b1}] overlap")]
    OverlappingSlabs { a0: f64, b0: f64, a1: f64, b1: f64 },

    #[error("alpha must be >= 0: got {alpha}")]
    NegativeAlpha { alpha: f64 },

    #[error("constant function: alpha = 0 and the measure is empty")]
    ConstantFunction,

    #[error("evaluation point must satisfy Im z > 0: got Im z = {im}")]
    NotUpperHalfPlane { im: f64 },

    #[error("point {x} lies in the closed support of the measure")]
    InSupport { x: f64 },

    #[error("operation requires a purely atomic measure")]
    NotAtomic,

    #[error("operation requires a nonempty atomic measure")]
    EmptyMeasure,

    #[error("operation requires alpha > 0")]
    ZeroAlpha,

    #[error("coupling must be >= 0: got {r}")]
    NegativeCoupling { r: f64 },

    #[error("z is within {dist:e} of an eigenvalue")]
    NearEigenvalue { dist: f64 },

    #[error("pole: 1 + r*F(z) vanished")]
    Pole,

    #[error("root bracketing failed: {context}")]
    Bracket { context: &'static str },

    #[error("spectral atoms must be strictly increasing with positive masses")]
    InvalidSample,

    #[error("recovered alpha is negative beyond tolerance: {alpha}")]
    InconsistentAlpha { alpha: f64 },

    #[error("the secular backend requires a purely atomic function with alpha > 0")]
    BackendMismatch,

    #[error("window must satisfy lo < hi: got [{lo}, {hi}]")]
    EmptyWindow { lo: f64, hi: f64 },

    #[error("{what} must be at least 1")]
    ZeroCount { what: &'static str },

    #[error("schedule requires k_min < k_max: got [{k_min}, {k_max}]")]
    BadSchedule { k_min: u32, k_max: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
