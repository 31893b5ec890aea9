use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("strength t = {t} must be at least 2")]
    StrengthTooSmall { t: usize },
    #[error("strength t = {t} exceeds the number of columns k = {k}")]
    StrengthExceedsColumns { t: usize, k: usize },
    #[error("alphabet size v = {v} must be at least 2")]
    AlphabetTooSmall { v: u64 },
    #[error("m = {m} outside 1..={max}")]
    MOutOfRange { m: u64, max: u64 },
    #[error("epsilon = {0} outside [0, 1]")]
    EpsilonOutOfRange(f64),
    #[error("v^t = {v}^{t} does not fit in 64 bits")]
    Overflow { v: u64, t: usize },
    #[error("symbol {symbol} out of range for alphabet size {v}")]
    SymbolOutOfRange { symbol: u64, v: u64 },
    #[error("rank {rank} out of range 0..{max}")]
    RankOutOfRange { rank: u64, max: u64 },
    #[error("column {col} out of range for {k} columns")]
    ColumnOutOfRange { col: usize, k: usize },
    #[error("column set is not strictly increasing")]
    UnsortedColumnSet,
    #[error("r = {r} outside 0..={n}")]
    ROutOfRange { n: u64, r: u64 },
    #[error("k = {k} < 2t = {}: local lemma bound needs k >= 2t", 2 * t)]
    KTooSmallForLll { k: usize, t: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("epsilon must be positive")]
    EpsilonZero,
    #[error("m = {m} but this construction requires m = v^t = {full}")]
    MNotFull { m: u64, full: u64 },
    #[error("v = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum of 64")]
    OrderTooLarge(u64),
    #[error("s = {s} outside 1..{max}")]
    SOutOfRange { s: u64, max: u64 },
    #[error("m = {m} exceeds the concatenation limit {limit:.6}")]
    MConditionViolated { m: u64, limit: f64 },
    #[error("concatenation r = {0} is not positive")]
    RNonPositive(f64),
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
    #[error("iteration cap of {cap} reached")]
    IterationCap { cap: u64 },
    #[error("sweep range is empty")]
    EmptyRange,
    #[error("constructed array failed verification: {0}")]
    VerificationFailed(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
