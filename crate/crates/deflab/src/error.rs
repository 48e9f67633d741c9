use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is outside the supported domain [1, 2^63 - 1]")]
    Domain(u128),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("expected two distinct primes, got {0} twice")]
    PrimesEqual(u64),

    #[error("empty range: lo {lo} exceeds hi {hi}")]
    EmptyRange { lo: u64, hi: u64 },

    #[error("range of {needed} entries exceeds the segment budget of {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("{check} always scans from 1; pass lo = 1")]
    ScansFromOne { check: &'static str },

    #[error("line {line}: {message}")]
    BFile { line: usize, message: String },

    #[error("missing entry for index {expected}, file continues at {found}")]
    IndexGap { expected: u64, found: u64 },

    #[error("b-file only covers up to {last}, but {hi} was requested")]
    Coverage { hi: u64, last: u64 },

    #[error("data file not found: {0}")]
    MissingFile(PathBuf),

    #[error("unknown check id '{0}'")]
    UnknownCheck(String),

    #[error("unknown sequence '{0}' (expected A033879 or A271816)")]
    UnknownSequence(String),

    #[error("cannot merge reports: checks differ or ranges are not adjacent")]
    MergeMismatch,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
