use thiserror::Error;

/// Errors raised by the library. Positions and lengths are reported 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty permutation")]
    Empty,

    #[error("invalid token `{0}`: expected a signed integer")]
    InvalidToken(String),

    #[error("zero entry `{0}`: entries must be nonzero")]
    ZeroEntry(String),

    #[error("duplicate absolute value in token `{0}`")]
    Duplicate(String),

    #[error("token `{token}` exceeds n = {n}: value {missing} is missing")]
    Gap { token: String, n: usize, missing: usize },

    #[error("flip length {k} out of range 1..={n}")]
    FlipOutOfRange { k: usize, n: usize },

    #[error("reversal positions ({i}, {j}) out of range: need 1 <= i <= j <= {n}")]
    ReversalOutOfRange { i: usize, j: usize, n: usize },

    #[error("exchange positions ({i}, {j}) out of range: need 1 <= i < j <= {n}")]
    ExchangeOutOfRange { i: usize, j: usize, n: usize },

    #[error("expected an unsigned permutation, found negative entry {0}")]
    Signed(i32),

    #[error("permutation {0} is not simple")]
    NotSimple(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("n = {n} exceeds the cap of {cap}")]
    OverCap { n: usize, cap: usize },

    #[error("invalid oracle table: {0}")]
    Table(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
