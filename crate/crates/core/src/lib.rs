//! Form-based analysis of Collatz sequences.
//!
//! Every natural number has a unique *standard form* `2^p·n + 2^(p-1) - 1`.
//! Odd numbers run through rigid *cascades* of odd cycles that lower the form
//! by one each time, ending in a halving. This crate provides exact big-integer
//! machinery for:
//!
//! - iteration, stopping times and total stopping times ([`sequence`]),
//! - standard/non-standard/composite form algebra ([`forms`]),
//! - cascades, cascade transforms, reverse-cascade ladders and seeds ([`cascades`]),
//! - the mod-12 column view of Collatz steps ([`columns`]),
//! - symbolic stopping times, minimum bases and principal forms ([`stopping`]).

pub mod cascades;
pub mod columns;
mod error;
pub mod forms;
pub mod sequence;
pub mod stopping;

pub use error::{Error, Outcome, Result};

/// Arbitrary-precision natural number used for every value, index and offset.
pub use num_bigint::BigUint as Nat;

pub(crate) fn require_at_least(op: &'static str, value: &Nat, min: u32) -> Result<()> {
    if *value < Nat::from(min) {
        return Err(Error::Domain {
            op,
            min,
            value: value.clone(),
        });
    }
    Ok(())
}

/// `2^exp` as a [`Nat`].
pub fn pow2(exp: u64) -> Nat {
    Nat::from(1u32) << exp
}

/// `3^exp` as a [`Nat`].
pub fn pow3(exp: u64) -> Nat {
    num_traits::pow(
        Nat::from(3u32),
        usize::try_from(exp).expect("exponent fits usize"),
    )
}

/// 2-adic valuation; `None` for zero.
pub fn two_adic_valuation(value: &Nat) -> Option<u64> {
    value.trailing_zeros()
}

/// Exponent `e` when `value == 2^e`.
pub fn power_of_two_exponent(value: &Nat) -> Option<u64> {
    let tz = value.trailing_zeros()?;
    (value.bits() == tz + 1).then_some(tz)
}
