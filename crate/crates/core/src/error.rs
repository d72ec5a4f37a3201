use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{value} is not {p}-integral")]
    NotPIntegral { value: String, p: u64 },

    #[error("{0} is not a prime >= 5")]
    BadPrime(u64),

    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(i64, i64),

    #[error("index mismatch: {0} vs {1}")]
    IndexMismatch(i64, i64),

    #[error("parity mismatch")]
    ParityMismatch,

    #[error("heat depth mismatch: {0} vs {1}")]
    HeatDepthMismatch(u32, u32),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },

    #[error("invariant violated at {key}: {rule}")]
    InvariantViolation { key: String, rule: String },

    #[error("not a cusp form: nonzero coefficient at singular {key}")]
    CuspPropertyViolation { key: String },

    #[error("Fourier-Jacobi index {m} exceeds trace truncation {t0}")]
    IndexBeyondTruncation { m: i64, t0: i64 },

    #[error("insufficient truncation: need {need}, have {have}")]
    InsufficientTruncation { need: i64, have: i64 },

    #[error("no filtration basis for index {0}")]
    NoBasisForIndex(i64),

    #[error("no coefficient with p not dividing nm and nonzero mod p")]
    MissingWitness,

    #[error("missing asset {0}")]
    MissingAsset(String),

    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },

    #[error("expression error: {0}")]
    Expr(String),
}

pub type Result<T> = std::result::Result<T, Error>;
