use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("algebra dimension {0} outside supported range 1..=8")]
    InvalidDimension(usize),

    #[error("blade mask {mask:#b} has generators beyond e{n}")]
    InvalidBlade { mask: u32, n: usize },

    #[error("generator index {j} out of range 1..={n}")]
    InvalidGenerator { j: usize, n: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("paravector has zero norm and no inverse")]
    ZeroParavector,

    #[error("invalid field header: {0}")]
    InvalidHeader(String),

    #[error("field headers are not compatible")]
    HeaderMismatch,

    #[error("sample buffer has {got} coefficients, header requires {expected}")]
    SampleCount { expected: usize, got: usize },

    #[error("kernel e{sign} grows for x0 = {x0}")]
    GrowthDirection { sign: char, x0: f64 },

    #[error("invalid envelope: {0}")]
    InvalidEnvelope(String),

    #[error("x0 must be positive, got {0}")]
    NonPositiveHeight(f64),

    #[error("axis {axis} out of range 1..={n}")]
    AxisOutOfRange { axis: usize, n: usize },

    #[error("need at least 3 slices, got {0}")]
    InsufficientSlices(usize),

    #[error("slices are not uniformly spaced in x0")]
    NonUniformSlices,

    #[error("invalid slab: {0}")]
    InvalidSlab(String),

    #[error("averaging ball does not fit inside the slab: {0}")]
    BallOutsideSlab(String),

    #[error("invalid exponent p = {0}")]
    InvalidExponent(f64),

    #[error("density has nonzero value at the zero frequency, where the weight is singular")]
    SingularWeight,

    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed field file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
