//! Mod-12 column view of Collatz steps.
//!
//! A number `12r + c` sits in column `c` (1..=12, with remainder 0 reported as
//! column 12). An odd step sends `12r + c` to `36r + 3c + 1`, so odd columns
//! have a single target; a halving sends it to `6r + c/2`, whose column depends
//! on the parity of `r`.

use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::{require_at_least, sequence, Error, Nat, Result};

/// Resulting columns of one Collatz step, indexed by column - 1.
const STEP_TARGETS: [&[u8]; 12] = [
    &[4],
    &[1, 7],
    &[10],
    &[2, 8],
    &[4],
    &[3, 9],
    &[10],
    &[4, 10],
    &[4],
    &[5, 11],
    &[10],
    &[6, 12],
];

fn column_of_small(v: u64) -> u8 {
    match (v % 12) as u8 {
        0 => 12,
        c => c,
    }
}

/// Derives the transition table from the `12r + c` algebra.
fn derive_step_targets() -> [Vec<u8>; 12] {
    std::array::from_fn(|i| {
        let column = i as u64 + 1;
        let mut targets: Vec<u8> = if column % 2 == 1 {
            // 3(12r + c) + 1 = 36r + 3c + 1 and 36r ≡ 0 (mod 12)
            vec![column_of_small(3 * column + 1)]
        } else {
            // (12r + c) / 2 = 6r + c/2: r even adds a multiple of 12, r odd adds 6 more
            (0..2u64)
                .map(|r| column_of_small(6 * r + column / 2))
                .collect()
        };
        targets.sort_unstable();
        targets.dedup();
        targets
    })
}

fn checked_step_targets() -> &'static [&'static [u8]; 12] {
    static CHECK: OnceLock<()> = OnceLock::new();
    CHECK.get_or_init(|| {
        let derived = derive_step_targets();
        for (i, targets) in derived.iter().enumerate() {
            assert_eq!(
                targets.as_slice(),
                STEP_TARGETS[i],
                "column transition table disagrees with 12r+c algebra at column {}",
                i + 1
            );
        }
    });
    &STEP_TARGETS
}

/// `c mod 12`, reporting 0 as 12.
pub fn column_of(c: &Nat) -> Result<u8> {
    require_at_least("column_of", c, 1)?;
    let rem = (c % 12u32).to_u8().expect("remainder below 12");
    Ok(if rem == 0 { 12 } else { rem })
}

/// Columns reachable in one Collatz step from `column`.
pub fn column_step_targets(column: u8) -> Result<&'static [u8]> {
    if !(1..=12).contains(&column) {
        return Err(Error::InvalidColumn(column));
    }
    Ok(checked_step_targets()[usize::from(column - 1)])
}

/// A value written in column form `12·row + column`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnStep {
    pub value: Nat,
    pub row: Nat,
    pub column: u8,
}

impl ColumnStep {
    pub fn new(value: &Nat) -> Result<Self> {
        let column = column_of(value)?;
        let row = (value - u32::from(column)) / 12u32;
        Ok(ColumnStep {
            value: value.clone(),
            row,
            column,
        })
    }

    /// `12(r)+c`
    pub fn column_form(&self) -> String {
        format!("12({})+{}", self.row, self.column)
    }
}

/// Annotates arbitrary values (e.g. a cascade trace) with their column forms.
pub fn annotate(values: &[Nat]) -> Result<Vec<ColumnStep>> {
    values.iter().map(ColumnStep::new).collect()
}

/// Column-annotated sequence from `c`, stopping at 1 or after `max_steps` steps.
pub fn column_trace(c: &Nat, max_steps: usize) -> Result<Vec<ColumnStep>> {
    annotate(&sequence::collatz_sequence(c, max_steps)?)
}

/// Columns holding odd numbers of the form `4n+1`.
pub const FOUR_N_PLUS_ONE_COLUMNS: [u8; 3] = [1, 5, 9];
/// Columns holding odd numbers of the form `4n+3`.
pub const FOUR_N_PLUS_THREE_COLUMNS: [u8; 3] = [3, 7, 11];
/// Columns of `3t+1` numbers, where every odd cascade ends.
pub const CASCADE_RESULT_COLUMNS: [u8; 4] = [1, 4, 7, 10];

/// Whether the column holds only even numbers.
pub fn is_even_column(column: u8) -> bool {
    column.is_even()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn transition_table_matches_algebra() {
        let derived = derive_step_targets();
        for c in 1..=12u8 {
            assert_eq!(
                derived[usize::from(c - 1)].as_slice(),
                column_step_targets(c).unwrap()
            );
        }
    }

    #[test]
    fn columns() {
        assert_eq!(column_of(&n(27)).unwrap(), 3);
        assert_eq!(column_of(&n(24)).unwrap(), 12);
        assert_eq!(column_of(&n(85)).unwrap(), 1);
        assert!(column_of(&n(0)).is_err());
        let step = ColumnStep::new(&n(27)).unwrap();
        assert_eq!(step.column_form(), "12(2)+3");
        assert_eq!(ColumnStep::new(&n(24)).unwrap().column_form(), "12(1)+12");
    }

    #[test]
    fn targets() {
        assert_eq!(column_step_targets(1).unwrap(), &[4]);
        assert_eq!(column_step_targets(2).unwrap(), &[1, 7]);
        assert_eq!(column_step_targets(12).unwrap(), &[6, 12]);
        assert_eq!(column_step_targets(0), Err(Error::InvalidColumn(0)));
        assert_eq!(column_step_targets(13), Err(Error::InvalidColumn(13)));
    }

    #[test]
    fn traces() {
        let cols: Vec<u8> = column_trace(&n(85), 100)
            .unwrap()
            .iter()
            .map(|s| s.column)
            .collect();
        assert_eq!(cols, [1, 4, 8, 4, 8, 4, 8, 4, 2, 1]);
        let cols: Vec<u8> = column_trace(&n(12), 1)
            .unwrap()
            .iter()
            .map(|s| s.column)
            .collect();
        assert_eq!(cols, [12, 6]);
    }

    #[test]
    fn cascade_of_31s_ladder_top_in_columns() {
        // The ladder of 31 tops out at 27; its cascade alternates 10/odd columns
        // and ends on 31 in column 7.
        let top = crate::cascades::mcs(&n(31)).unwrap().mcs().clone();
        let trace = crate::cascades::run_cascade(&top).unwrap();
        let cols: Vec<u8> = annotate(&trace.values)
            .unwrap()
            .iter()
            .map(|s| s.column)
            .collect();
        assert_eq!(cols, [3, 10, 5, 4, 2, 7]);
    }

    #[test]
    fn form_column_partition() {
        for c in 1..=1200u64 {
            let col = column_of(&n(c)).unwrap();
            let in_1 = FOUR_N_PLUS_ONE_COLUMNS.contains(&col);
            let in_3 = FOUR_N_PLUS_THREE_COLUMNS.contains(&col);
            assert_eq!(in_1, c % 4 == 1);
            assert_eq!(in_3, c % 4 == 3);
            assert_eq!(is_even_column(col), c % 2 == 0);
        }
    }
}
