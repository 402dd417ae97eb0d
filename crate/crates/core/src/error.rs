use std::fmt;

use crate::pattern::Occurrence;

/// Which side of a bijection rejected its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// 3-2-1-avoiding permutations.
    Avoids321,
    /// 3-1-2-avoiding permutations.
    Avoids312,
    /// Permutations whose every 3-2-4-1 occurrence extends to 3-5-2-4-1.
    Satisfying,
    /// 31-4-2-avoiding permutations.
    Avoids3142v,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Avoids321 => "3-2-1-avoiding",
            Domain::Avoids312 => "3-1-2-avoiding",
            Domain::Satisfying => "3-5-2-4-1-satisfying",
            Domain::Avoids3142v => "31-4-2-avoiding",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("value {value} at index {index} is out of range 1..={n}")]
    OutOfRange { index: usize, value: i64, n: usize },

    #[error("value {value} at index {index} repeats an earlier entry")]
    Repeated { index: usize, value: i64 },

    #[error("invalid token {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid pattern {pattern:?}: {reason}")]
    Pattern { pattern: String, reason: String },

    #[error("not a valid LRmax specification: {0}")]
    InvalidSpec(String),

    #[error("input is not {domain}: witness occurrence {witness}")]
    OutsideDomain { domain: Domain, witness: Occurrence },

    #[error("n = {n} exceeds the enumeration limit {limit}")]
    SizeGuard { n: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
