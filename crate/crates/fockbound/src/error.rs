//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {letter} outside alphabet 1..={n}")]
    LetterOutOfRange { letter: u8, n: usize },

    #[error("prefix length {m} out of range for word of length {len}")]
    PrefixOutOfRange { m: usize, len: usize },

    #[error("weights must be positive and sum to 1 (got sum {sum})")]
    BadWeights { sum: f64 },

    #[error("basis dimension overflows the index type (n = {n}, depth = {depth})")]
    CapacityOverflow { n: usize, depth: usize },

    #[error("word of length {len} exceeds truncation depth {depth}")]
    WordTooLong { len: usize, depth: usize },

    #[error("basis index {index} out of range (dim = {dim})")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("operator truncation parameters differ: ({0}, {1}) vs ({2}, {3})")]
    ParamMismatch(usize, usize, usize, usize),

    #[error("matrix is not unitary (max defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("value has modulus {modulus} but a unit-modulus scalar is required")]
    NotUnitModulus { modulus: f64 },

    #[error("trust depth {trust} too small for this operation (needs {needed})")]
    TrustExhausted { trust: usize, needed: usize },

    #[error("iteration did not stabilize within {iters} steps (last delta {delta:.3e})")]
    Convergence { iters: usize, delta: f64 },

    #[error("operand is not a peripheral eigenvector (residual {residual:.3e})")]
    NotEigen { residual: f64 },

    #[error("factorization residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    Factorization { residual: f64, tol: f64 },

    #[error("span basis is numerically singular (min singular value {sigma_min:.3e})")]
    SingularBasis { sigma_min: f64 },

    #[error("words must have equal length: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("empty word not allowed here")]
    EmptyWord,

    #[error("rewriting exceeded {0} steps without reaching a normal form")]
    RewriteBudget(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot parse operator expression: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
