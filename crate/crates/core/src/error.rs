use thiserror::Error;

/// Errors raised by the algebra layer.
///
/// Property failures found by the lab are reported as data, not through this
/// type; an `Error` always means the inputs were rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus too small: {0} (need n >= 2)")]
    ModulusTooSmall(u64),
    #[error("overflow policy: modulus {0} exceeds the supported range (n < 2^62)")]
    Overflow(u128),
    #[error("ring mismatch: Z/{left} vs Z/{right}")]
    RingMismatch { left: u64, right: u64 },
    #[error("invalid module factor {factor} over Z/{modulus} (factors must divide n and exceed 1)")]
    InvalidFactor { factor: u64, modulus: u64 },
    #[error("matrix shape {rows}x{cols} does not match {expected_rows}x{expected_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("ill-defined map: entry ({row}, {col}) = {value} is not a multiple of {required}")]
    IllDefined {
        row: usize,
        col: usize,
        value: u64,
        required: u64,
    },
    #[error("not a complex at degree {degree}: d∘d != 0")]
    NotAComplex { degree: i64 },
    #[error("not a complex at this degree: composite is nonzero")]
    CompositeNonzero,
    #[error("chain map does not commute with differentials at degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("{0} is not a prime of the ring")]
    UnknownPrime(u64),
    #[error("jump list is not decreasing at degree {degree}")]
    NotDecreasing { degree: i64 },
    #[error("+inf cutoff at prime {0} has no finite generator list")]
    InfiniteCutoff(u64),
    #[error("coordinate at degree {degree} is not free")]
    NotFree { degree: i64 },
    #[error("module is not injective: factor {factor}")]
    NotInjective { factor: u64 },
    #[error("floor {floor} above needed window (lowest coordinate {lowest})")]
    FloorAboveWindow { floor: i64, lowest: i64 },
    #[error("tower did not stabilize within {len} terms")]
    TowerUnstable { len: usize },
    #[error("complex is not in the coaisle: {0}")]
    NotInCoaisle(String),
    #[error("verification failure: {0}")]
    Verification(String),
    #[error("at {pointer}: {message}")]
    Parse { pointer: String, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
