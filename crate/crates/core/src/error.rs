use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor must have a nonzero constant term")]
    NonUnitConstant,
    #[error("exact division failed: input is not a multiple of the divisor")]
    InconsistentDivision,
    #[error("decoded stream has set bits at or beyond index {limit}")]
    TrailingBits { limit: usize },
    #[error("the zero polynomial has no z^t factorization")]
    ZeroPolynomial,
    #[error("invalid polynomial literal {0:?}")]
    ParsePoly(String),

    #[error("unsupported extension degree {0} (expected 1..=16)")]
    UnsupportedDegree(u32),
    #[error("modulus {g} is not a primitive polynomial of degree {m}")]
    NotPrimitive { g: String, m: u32 },
    #[error("operands belong to different field contexts")]
    ContextMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid code parameters: {0}")]
    InvalidParams(String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },

    #[error("source length mismatch: {0}")]
    LengthMismatch(String),
    #[error("generator submatrix for packets {indices:?} is singular")]
    SingularSubmatrix { indices: Vec<usize> },
    #[error("decoded stream {stream} has set bits inside its {t}-bit zero prefix")]
    NonzeroPrefix { stream: usize, t: usize },
    #[error("packet {index} carries {bits} bits, more than the allowed {max}")]
    PayloadTooLong {
        index: usize,
        bits: usize,
        max: usize,
    },
    #[error("generator submatrix has a non-monomial entry at row {row}, packet {index}")]
    NotMonomialMatrix { row: usize, index: usize },
    #[error("zigzag decoding stuck after resolving {resolved} of {total} bits")]
    Stuck { resolved: usize, total: usize },
    #[error("packets are inconsistent with the generator matrix")]
    InconsistentPackets,
    #[error("invalid packet set: {0}")]
    InvalidPacket(String),

    #[error("packet file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("equivalence check failed between {a:?} and {b:?}")]
    EquivalenceViolation { a: Vec<usize>, b: Vec<usize> },
}
