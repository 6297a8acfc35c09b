use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("malformed cycle notation at offset {offset}: {reason}")]
    MalformedCycle { offset: usize, reason: String },

    #[error("degree {degree} exceeds the maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("point {point} appears more than once")]
    RepeatedPoint { point: usize },

    #[error("malformed prime set {text:?}: {reason}")]
    MalformedPrimeSet { text: String, reason: String },

    #[error("malformed factored integer {0:?}")]
    MalformedFactored(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("group order {order} exceeds cap {cap}")]
    TooLarge { order: String, cap: usize },

    #[error("conjugacy class exceeds cap {cap}")]
    ClassTooLarge { cap: usize },

    #[error("element {0} is not a member of the group")]
    NotAMember(String),

    #[error("automorphism centralizes the socle")]
    DegenerateAutomorphism,

    #[error("prime {r} does not divide the socle order")]
    RNotDividingOrder { r: u64 },

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("the prime set contains 2")]
    PiContainsTwo,

    #[error("{0} is not a transposition")]
    NotATransposition(String),

    #[error("power x^{0} is the identity")]
    PowerIsIdentity(i64),

    #[error("unsupported field order q = {0}")]
    UnsupportedQ(u64),

    #[error("{0} does not normalize the socle")]
    NotNormalizing(String),

    #[error("{0} centralizes the socle")]
    CentralizesSocle(String),

    #[error("parse error at line {line}, column {column}: {reason}")]
    Parse {
        line: usize,
        column: usize,
        reason: String,
    },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("unknown group name {0:?}")]
    UnknownGroup(String),

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
