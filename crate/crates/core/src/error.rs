use thiserror::Error;

/// Errors raised by the algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("no Bezout certificate: gcd of the parts is {0}, not 1")]
    NoBezoutCertificate(u64),
    #[error("{k} is not squarefree: divisible by {p}^2")]
    NotSquarefree { k: u64, p: u64 },
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("operands live over different prime fields")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("polynomial is not a p-th power")]
    NotAPthPower,
    #[error("modulus must have degree at least 1")]
    InvalidModulus,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial vanishes at t = 0, so it is not a dehomogenized core")]
    NotCore,
    #[error("element has a constant term; the ring has no identity")]
    NotInNonUnitalRing,
    #[error("elements belong to different presentations")]
    PresentationMismatch,
    #[error("relation is not unitary in x{hint}")]
    NotUnitaryInX { hint: &'static str },
    #[error("relation must not have a constant term")]
    RelationHasConstant,
    #[error("quotient dimension {dim} exceeds cap {cap}")]
    QuotientTooLarge { dim: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown symbol `{symbol}` at position {pos}")]
    UnknownSymbol { pos: usize, symbol: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
