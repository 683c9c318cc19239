//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("root order mismatch: q^(1/{left}) vs q^(1/{right})")]
    RootMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("q-power denominator {den} does not divide the root order {root}")]
    QPowerDenominator { den: i64, root: u32 },

    #[error("algebra context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },

    #[error("generator u[{row},{col}] out of range for size {size}")]
    GeneratorOutOfRange { row: u8, col: u8, size: u8 },

    #[error("det^-1 is only a generator of unitary-group contexts")]
    DetInvUnavailable,

    #[error("{operation} does not accept det^-1 in its arguments")]
    DetInvNotAllowed { operation: &'static str },

    #[error("the matrix bialgebra has no antipode; pass a (special) unitary group element")]
    NoAntipode,

    #[error("argument has nonzero counit; cosets are only defined on the counit kernel")]
    CounitNonzero,

    #[error("degree bound {bound} is smaller than the polynomial degree {degree}")]
    BoundTooSmall { bound: usize, degree: usize },

    #[error("element mixes distinct charges {left} and {right}; not a line bundle section")]
    MixedDegrees { left: i64, right: i64 },

    #[error("element is not coinvariant for the requested base: {detail}")]
    CoinvarianceViolation { detail: String },

    #[error("unknown suite '{0}'; run `qflag verify --help` for the registry")]
    UnknownSuite(String),

    #[error("n = {n} exceeds the resource guard for suite '{suite}' (max {max})")]
    SuiteTooLarge { suite: String, n: u8, max: u8 },

    #[error("n = {0} is out of range; supported sizes are 2 <= n <= 4")]
    UnsupportedSize(u8),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
