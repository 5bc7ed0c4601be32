use thiserror::Error;

use crate::Nat;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain violations. Running out of a step budget is not an error; see [`Outcome`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op} requires a value >= {min}, got {value}")]
    Domain {
        op: &'static str,
        min: u32,
        value: Nat,
    },
    #[error("{op} requires an odd value of form 4 or higher, got {value}")]
    NotOddCascadeStart { op: &'static str, value: Nat },
    #[error("dotted form component {0} is not a power of 2 >= 2")]
    NotPowerOfTwo(Nat),
    #[error("dotted form needs at least one component")]
    EmptyDottedForm,
    #[error("{0} is a multiple of 3 and cannot end an odd cascade")]
    MultipleOfThree(Nat),
    #[error("form {form} has no fixed cascade start: {reason}")]
    NotCascadeForm { form: String, reason: &'static str },
    #[error("coefficient of {0} is not a power of 2")]
    NotComposite(String),
    #[error("{0} is not a column (expected 1..=12)")]
    InvalidColumn(u8),
    #[error("range is empty: lo {lo} > hi {hi}")]
    EmptyRange { lo: Nat, hi: Nat },
    #[error("window size must be at least 1")]
    ZeroWindow,
}

/// Result of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// The search gave up after `limit` steps (or iterations).
    NotFoundWithinLimit {
        limit: u64,
    },
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(v) => Some(v),
            Outcome::NotFoundWithinLimit { .. } => None,
        }
    }

    pub fn as_ref(&self) -> Outcome<&T> {
        match self {
            Outcome::Found(v) => Outcome::Found(v),
            Outcome::NotFoundWithinLimit { limit } => {
                Outcome::NotFoundWithinLimit { limit: *limit }
            }
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(v) => Outcome::Found(f(v)),
            Outcome::NotFoundWithinLimit { limit } => Outcome::NotFoundWithinLimit { limit },
        }
    }

    /// Panics when the search ran out of budget.
    #[track_caller]
    pub fn unwrap(self) -> T {
        match self {
            Outcome::Found(v) => v,
            Outcome::NotFoundWithinLimit { limit } => {
                panic!("called `Outcome::unwrap()` on a search that hit its limit of {limit}")
            }
        }
    }
}
