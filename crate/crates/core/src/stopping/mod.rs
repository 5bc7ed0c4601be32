//! Stopping times of composite forms.
//!
//! Stepping a composite form `2^p·n + f` symbolically keeps the parity of every
//! member equal to the parity of the offset for as long as the coefficient is
//! even. If the offset reaches its stopping time before the coefficient turns
//! odd, every member of the form stops at the same step. That happens exactly
//! when `p` is at least the number `E` of halvings the offset needs, which ties
//! `E` to the stopping time `S` through `3^S < 6^E ≤ 2·3^S`.

mod scan;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::forms::SymbolicForm;
use crate::sequence::{self, StopResult};
use crate::{pow2, pow3, require_at_least, Error, Nat, Outcome, Result};

pub use scan::{
    scan_principal_forms, scan_principal_forms_with_jobs, scan_window, summarize, window_bounds,
    write_principal_csv, write_window_csv, ScanReport, ScanWindowStats, WindowScan, WindowSummary,
    DEFAULT_WINDOW, PRINCIPAL_CSV_HEADER, WINDOW_CSV_HEADER,
};

/// Step cap for symbolic stepping.
pub const SYMBOLIC_STEP_LIMIT: u64 = 10_000;
/// Per-number step cap for numeric stopping times inside scans.
pub const SCAN_STEP_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    /// Odd coefficient: members alternate parity with `n`.
    Indeterminate,
}

pub fn parity_of(form: &SymbolicForm) -> Parity {
    if form.coefficient.is_odd() {
        Parity::Indeterminate
    } else if form.offset.is_odd() {
        Parity::Odd
    } else {
        Parity::Even
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicTraceStep {
    pub form: SymbolicForm,
    pub parity: Parity,
}

/// One Collatz step applied to every member of `form` at once.
///
/// Returns `None` when the members' parity depends on `n`.
pub fn symbolic_step(form: &SymbolicForm) -> Option<SymbolicTraceStep> {
    let next = match parity_of(form) {
        Parity::Indeterminate => return None,
        Parity::Odd => SymbolicForm::new(&form.coefficient * 3u32, &form.offset * 3u32 + 1u32),
        Parity::Even => SymbolicForm::new(&form.coefficient >> 1u32, &form.offset >> 1u32),
    };
    let parity = parity_of(&next);
    Some(SymbolicTraceStep { form: next, parity })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolicStop {
    /// Every member is below its start after `stopping_time` steps.
    Stopped {
        stopping_time: u64,
        form: SymbolicForm,
    },
    /// The coefficient turned odd at `step` before the form dropped below its start.
    IndeterminateAt {
        step: u64,
        form: SymbolicForm,
    },
    NotFoundWithinLimit {
        limit: u64,
    },
}

/// `current(n) < start(n)` for every `n ≥ 1`, and `≤` at `n = 0`.
fn below_start(current: &SymbolicForm, start: &SymbolicForm) -> bool {
    current.coefficient <= start.coefficient
        && current.offset <= start.offset
        && (current.coefficient < start.coefficient || current.offset < start.offset)
}

/// Steps a composite form until it drops below its start or turns indeterminate.
pub fn symbolic_stopping_time(start: &SymbolicForm, limit: u64) -> Result<SymbolicStop> {
    if start.composite_power().is_none() {
        return Err(Error::NotComposite(start.to_string()));
    }
    let mut form = start.clone();
    let mut steps = 0u64;
    loop {
        if steps > 0 && below_start(&form, start) {
            return Ok(SymbolicStop::Stopped {
                stopping_time: steps,
                form,
            });
        }
        if steps == limit {
            return Ok(SymbolicStop::NotFoundWithinLimit { limit });
        }
        match symbolic_step(&form) {
            Some(next) => form = next.form,
            None => return Ok(SymbolicStop::IndeterminateAt { step: steps, form }),
        }
        steps += 1;
    }
}

/// The even-step count `E` a stopping time `S` forces, if any.
///
/// `E` is the unique integer with `3^S < 6^E ≤ 2·3^S`, equivalently
/// `2^(E-1) ≤ 3^(S-E) < 2^E`: `3^(S-E)` has exactly `E` bits.
pub fn even_steps_for_stopping(stopping_time: u64) -> Option<u64> {
    if stopping_time == 0 {
        return None;
    }
    // log 3 / log 6 to ten digits; the estimate is within one of E.
    let estimate = (u128::from(stopping_time) * 6_131_471_928 / 10_000_000_000) as u64;
    (estimate.saturating_sub(1)..=(estimate + 2).min(stopping_time))
        .find(|&e| pow3(stopping_time - e).bits() == e)
}

/// Every `S ≤ max_s` for which some `E` exists.
pub fn admissible_stopping_times(max_s: u64) -> Vec<u64> {
    (1..=max_s)
        .filter(|&s| even_steps_for_stopping(s).is_some())
        .collect()
}

/// Minimum base `2^E` that gives the composite form `2^E·n + f` a stopping time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinBase {
    pub base: Nat,
    pub stopping_time: u64,
    pub even_steps: u64,
}

impl MinBase {
    pub fn form(&self, offset: &Nat) -> SymbolicForm {
        SymbolicForm::new(self.base.clone(), offset.clone())
    }
}

pub fn min_base_for_offset(offset: &Nat, limit: u64) -> Result<Outcome<MinBase>> {
    require_at_least("min_base_for_offset", offset, 2)?;
    Ok(sequence::stopping_time(offset, limit)?.map(|r| MinBase {
        base: pow2(r.even_steps),
        stopping_time: r.stopping_time,
        even_steps: r.even_steps,
    }))
}

/// A composite form `2^E·n + offset` with `offset < 2^E`: no member is below the offset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrincipalForm {
    pub offset: Nat,
    pub even_steps: u64,
    pub stopping_time: u64,
}

impl PrincipalForm {
    pub fn base(&self) -> Nat {
        pow2(self.even_steps)
    }

    pub fn form(&self) -> SymbolicForm {
        SymbolicForm::new(self.base(), self.offset.clone())
    }
}

/// The form `4n+1` that the number 1 belongs to; 1 itself has no stopping time.
pub fn principal_form_of_one() -> PrincipalForm {
    PrincipalForm {
        offset: Nat::one(),
        even_steps: 2,
        stopping_time: 3,
    }
}

fn principal_from_stop(c: &Nat, stop: &StopResult) -> Option<PrincipalForm> {
    let bits = c.bits();
    // c ≤ 2^E. Equality only happens for c = 2, whose class 2n has offset 0.
    let principal = bits <= stop.even_steps
        || (bits == stop.even_steps + 1 && c.trailing_zeros() == Some(stop.even_steps));
    principal.then(|| PrincipalForm {
        offset: if bits <= stop.even_steps {
            c.clone()
        } else {
            Nat::zero()
        },
        even_steps: stop.even_steps,
        stopping_time: stop.stopping_time,
    })
}

/// The principal form `c` starts, or `None` when a smaller number already covers `c`.
pub fn principal_form_of(c: &Nat, limit: u64) -> Result<Outcome<Option<PrincipalForm>>> {
    require_at_least("principal_form_of", c, 1)?;
    if c.is_one() {
        return Ok(Outcome::Found(Some(principal_form_of_one())));
    }
    Ok(sequence::stopping_time(c, limit)?.map(|stop| principal_from_stop(c, &stop)))
}

/// Whether no natural number smaller than `c` lies in `c`'s minimum-base residue class.
pub fn is_principal(c: &Nat, limit: u64) -> Result<Outcome<bool>> {
    require_at_least("is_principal", c, 2)?;
    Ok(principal_form_of(c, limit)?.map(|p| p.is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::DEFAULT_STOPPING_LIMIT;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn form(k: u64, f: u64) -> SymbolicForm {
        SymbolicForm::from_u64(k, f)
    }

    #[test]
    fn symbolic_steps() {
        let s = symbolic_step(&form(8, 3)).unwrap();
        assert_eq!((s.form, s.parity), (form(24, 10), Parity::Even));
        let s = symbolic_step(&form(24, 10)).unwrap();
        assert_eq!((s.form, s.parity), (form(12, 5), Parity::Odd));
        let s = symbolic_step(&form(2, 0)).unwrap();
        assert_eq!(
            (s.form.clone(), s.parity),
            (form(1, 0), Parity::Indeterminate)
        );
        assert_eq!(symbolic_step(&s.form), None);
    }

    #[test]
    fn symbolic_stopping_examples() {
        assert_eq!(
            symbolic_stopping_time(&form(128, 15), SYMBOLIC_STEP_LIMIT).unwrap(),
            SymbolicStop::Stopped {
                stopping_time: 11,
                form: form(81, 10)
            }
        );
        assert_eq!(
            symbolic_stopping_time(&form(32, 15), SYMBOLIC_STEP_LIMIT).unwrap(),
            SymbolicStop::IndeterminateAt {
                step: 9,
                form: form(81, 40)
            }
        );
        assert_eq!(
            symbolic_stopping_time(&form(16, 7), SYMBOLIC_STEP_LIMIT).unwrap(),
            SymbolicStop::IndeterminateAt {
                step: 7,
                form: form(27, 13)
            }
        );
        assert_eq!(
            symbolic_stopping_time(&form(8, 3), SYMBOLIC_STEP_LIMIT).unwrap(),
            SymbolicStop::IndeterminateAt {
                step: 5,
                form: form(9, 4)
            }
        );
        assert_eq!(
            symbolic_stopping_time(&form(16, 3), SYMBOLIC_STEP_LIMIT).unwrap(),
            SymbolicStop::Stopped {
                stopping_time: 6,
                form: form(9, 2)
            }
        );
    }

    #[test]
    fn standard_two_and_four_forms_stop() {
        assert_eq!(
            symbolic_stopping_time(&form(2, 0), 10).unwrap(),
            SymbolicStop::Stopped {
                stopping_time: 1,
                form: form(1, 0)
            }
        );
        assert_eq!(
            symbolic_stopping_time(&form(4, 1), 10).unwrap(),
            SymbolicStop::Stopped {
                stopping_time: 3,
                form: form(3, 1)
            }
        );
    }

    #[test]
    fn symbolic_stopping_rejects_mixed_forms() {
        assert!(matches!(
            symbolic_stopping_time(&form(9, 4), 10),
            Err(Error::NotComposite(_))
        ));
        assert_eq!(
            symbolic_stopping_time(&form(128, 15), 4).unwrap(),
            SymbolicStop::NotFoundWithinLimit { limit: 4 }
        );
    }

    #[test]
    fn even_steps_examples() {
        assert_eq!(even_steps_for_stopping(8), Some(5));
        assert_eq!(even_steps_for_stopping(4), None);
        assert_eq!(even_steps_for_stopping(96), Some(59));
        assert_eq!(even_steps_for_stopping(1), Some(1));
        assert_eq!(even_steps_for_stopping(0), None);
    }

    #[test]
    fn admissible() {
        assert_eq!(
            admissible_stopping_times(26),
            [1, 3, 6, 8, 11, 13, 16, 19, 21, 24, 26]
        );
        assert_eq!(admissible_stopping_times(2), [1]);
        assert!(admissible_stopping_times(0).is_empty());
    }

    #[test]
    fn min_bases() {
        let m = min_base_for_offset(&n(15), DEFAULT_STOPPING_LIMIT)
            .unwrap()
            .unwrap();
        assert_eq!((m.base, m.stopping_time, m.even_steps), (n(128), 11, 7));
        let m = min_base_for_offset(&n(3), DEFAULT_STOPPING_LIMIT)
            .unwrap()
            .unwrap();
        assert_eq!((m.base, m.stopping_time, m.even_steps), (n(16), 6, 4));
        let m = min_base_for_offset(&n(27), DEFAULT_STOPPING_LIMIT)
            .unwrap()
            .unwrap();
        assert_eq!((m.base, m.stopping_time, m.even_steps), (pow2(59), 96, 59));
        assert!(min_base_for_offset(&n(1), 10).is_err());
        assert_eq!(
            min_base_for_offset(&n(27), 50).unwrap(),
            Outcome::NotFoundWithinLimit { limit: 50 }
        );
    }

    #[test]
    fn principal_examples() {
        assert_eq!(
            is_principal(&n(27), SCAN_STEP_LIMIT).unwrap(),
            Outcome::Found(true)
        );
        assert_eq!(
            is_principal(&n(41), SCAN_STEP_LIMIT).unwrap(),
            Outcome::Found(false)
        );
        assert_eq!(
            is_principal(&n(43), SCAN_STEP_LIMIT).unwrap(),
            Outcome::Found(false)
        );
        assert_eq!(
            is_principal(&n(2), SCAN_STEP_LIMIT).unwrap(),
            Outcome::Found(true)
        );
        assert_eq!(
            is_principal(&n(4), SCAN_STEP_LIMIT).unwrap(),
            Outcome::Found(false)
        );
        assert!(is_principal(&n(1), SCAN_STEP_LIMIT).is_err());
        let two = principal_form_of(&n(2), 10).unwrap().unwrap().unwrap();
        assert_eq!(two.form().to_string(), "2n");
        let one = principal_form_of(&n(1), 10).unwrap().unwrap().unwrap();
        assert_eq!(one.form().to_string(), "4n+1");
    }

    #[test]
    fn stopping_time_eight_forms_below_thirty_two() {
        let eights: Vec<u64> = (2..32u64)
            .filter(|&f| {
                let m = min_base_for_offset(&n(f), 100).unwrap().unwrap();
                m.stopping_time == 8 && m.base == n(32)
            })
            .collect();
        assert_eq!(eights, [11, 23]);
    }
}
