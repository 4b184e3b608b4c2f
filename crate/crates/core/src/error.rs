use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("matrix mixes real and imaginary entries")]
    MixedType,

    #[error("level k = {k} out of range 1..={max}")]
    LevelOutOfRange { k: u32, max: u32 },

    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u32, max: u32 },

    #[error("switch exponent j = {j} out of range 0..{k}")]
    SwitchOutOfRange { j: u32, k: u32 },

    #[error("torsion order n = {0} unsupported (need 2 <= n <= 65536)")]
    TorsionOrder(u32),

    #[error("torsion points differ in level or order: (k={k1}, n={n1}) vs (k={k2}, n={n2})")]
    PointMismatch { k1: u32, n1: u32, k2: u32, n2: u32 },

    #[error("enumeration of {count} points exceeds cap {cap}")]
    CapExceeded { count: String, cap: u64 },

    #[error("count overflows 128 bits")]
    CountOverflow,

    #[error("shape is not block structured; not a generator representation")]
    ShapeNotBlockStructured,

    #[error("point is not a translation constant of the map")]
    NotATranslationConstant,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator must be unsigned")]
    SignedGenerator,
}

pub type Result<T> = std::result::Result<T, Error>;
