//! Exact Collatz iteration.
//!
//! Values that fit in a `u128` are iterated natively with checked arithmetic;
//! the first overflow promotes the walk to [`Nat`] from the exact same state,
//! so the fast path never changes an observable result.

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::{require_at_least, Nat, Outcome, Result};

/// Step budget used by callers that do not pick their own for [`stopping_time`].
pub const DEFAULT_STOPPING_LIMIT: u64 = 1_000_000;
/// Step budget used by callers that do not pick their own for [`total_stopping_time`].
pub const DEFAULT_TOTAL_LIMIT: u64 = 10_000_000;

/// One Collatz step: `3c + 1` for odd `c`, `c / 2` for even `c`.
pub fn collatz_step(c: &Nat) -> Result<Nat> {
    require_at_least("collatz_step", c, 1)?;
    Ok(step(c))
}

pub(crate) fn step(c: &Nat) -> Nat {
    if c.is_odd() {
        c * 3u32 + 1u32
    } else {
        c >> 1
    }
}

#[inline]
fn step_u128(c: u128) -> Option<u128> {
    if c & 1 == 1 {
        c.checked_mul(3)?.checked_add(1)
    } else {
        Some(c >> 1)
    }
}

/// `[c, step(c), step²(c), …]`, ending at the first 1 or after `max_steps` steps.
pub fn collatz_sequence(c: &Nat, max_steps: usize) -> Result<Vec<Nat>> {
    require_at_least("collatz_sequence", c, 1)?;
    let mut out = vec![c.clone()];
    let mut current = c.clone();
    while out.len() <= max_steps && !current.is_one() {
        current = step(&current);
        out.push(current.clone());
    }
    Ok(out)
}

/// Stopping time of a start value: first iterate below the start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopResult {
    /// Number of steps `S` until the first value below the start.
    pub stopping_time: u64,
    /// Number `E` of halvings among those `S` steps.
    pub even_steps: u64,
    /// The first value below the start.
    pub final_value: Nat,
}

impl StopResult {
    pub fn odd_steps(&self) -> u64 {
        self.stopping_time - self.even_steps
    }
}

enum Walk<T> {
    Done(T),
    Limit,
    Overflow { value: u128, steps: u64, evens: u64 },
}

fn stop_u128(start: u128, max_steps: u64) -> Walk<StopResult> {
    let mut value = start;
    let mut steps = 0u64;
    let mut evens = 0u64;
    while steps < max_steps {
        let even = value & 1 == 0;
        match step_u128(value) {
            Some(next) => value = next,
            None => {
                return Walk::Overflow {
                    value,
                    steps,
                    evens,
                }
            }
        }
        steps += 1;
        evens += u64::from(even);
        if value < start {
            return Walk::Done(StopResult {
                stopping_time: steps,
                even_steps: evens,
                final_value: Nat::from(value),
            });
        }
    }
    Walk::Limit
}

fn stop_big(
    start: &Nat,
    mut value: Nat,
    mut steps: u64,
    mut evens: u64,
    max_steps: u64,
) -> Outcome<StopResult> {
    while steps < max_steps {
        let even = value.is_even();
        value = step(&value);
        steps += 1;
        evens += u64::from(even);
        if value < *start {
            return Outcome::Found(StopResult {
                stopping_time: steps,
                even_steps: evens,
                final_value: value,
            });
        }
    }
    Outcome::NotFoundWithinLimit { limit: max_steps }
}

/// Stopping time `S`, even-step count `E` and the first value below `c`.
///
/// `c = 1` is rejected: its orbit 1→4→2→1 never drops below 1.
pub fn stopping_time(c: &Nat, max_steps: u64) -> Result<Outcome<StopResult>> {
    require_at_least("stopping_time", c, 2)?;
    if let Some(start) = c.to_u128() {
        return Ok(match stop_u128(start, max_steps) {
            Walk::Done(r) => Outcome::Found(r),
            Walk::Limit => Outcome::NotFoundWithinLimit { limit: max_steps },
            Walk::Overflow {
                value,
                steps,
                evens,
            } => stop_big(c, Nat::from(value), steps, evens, max_steps),
        });
    }
    Ok(stop_big(c, c.clone(), 0, 0, max_steps))
}

/// [`stopping_time`] for machine-sized starts, used by range scans.
pub fn stopping_time_u64(c: u64, max_steps: u64) -> Result<Outcome<StopResult>> {
    if c < 2 {
        return stopping_time(&Nat::from(c), max_steps);
    }
    Ok(match stop_u128(u128::from(c), max_steps) {
        Walk::Done(r) => Outcome::Found(r),
        Walk::Limit => Outcome::NotFoundWithinLimit { limit: max_steps },
        Walk::Overflow {
            value,
            steps,
            evens,
        } => stop_big(&Nat::from(c), Nat::from(value), steps, evens, max_steps),
    })
}

/// Number of steps for `c` to reach 1.
pub fn total_stopping_time(c: &Nat, max_steps: u64) -> Result<Outcome<u64>> {
    require_at_least("total_stopping_time", c, 1)?;
    let mut steps = 0u64;
    if let Some(mut value) = c.to_u128() {
        while value != 1 {
            if steps == max_steps {
                return Ok(Outcome::NotFoundWithinLimit { limit: max_steps });
            }
            match step_u128(value) {
                Some(next) => value = next,
                None => return Ok(total_big(Nat::from(value), steps, max_steps)),
            }
            steps += 1;
        }
        return Ok(Outcome::Found(steps));
    }
    Ok(total_big(c.clone(), steps, max_steps))
}

fn total_big(mut value: Nat, mut steps: u64, max_steps: u64) -> Outcome<u64> {
    while !value.is_one() {
        if steps == max_steps {
            return Outcome::NotFoundWithinLimit { limit: max_steps };
        }
        // Halve a whole run of trailing zeros at once, bounded by the budget.
        let zeros = value.trailing_zeros().unwrap_or(0);
        if zeros > 0 {
            let take = zeros.min(max_steps - steps);
            value >>= take;
            steps += take;
        } else {
            value = value * 3u32 + 1u32;
            steps += 1;
        }
    }
    Outcome::Found(steps)
}
