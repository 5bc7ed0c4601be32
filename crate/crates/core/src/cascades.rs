//! Cascades and their reverse ladders.
//!
//! An odd number of standard form `2^p·n + 2^(p-1) - 1` runs through `p - 1`
//! odd cycles (each lowering the form by one and mapping the index `n` to
//! `3n + 1`) and a final halving: `2p - 1` steps in total. The result has the
//! closed form `3^(p-1)·n + (3^(p-1) - 1)/2`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::forms::{
    decompose, expand_dotted, reconstruct, standard_base, FormDescriptor, SymbolicForm,
};
use crate::{pow2, pow3, require_at_least, sequence, Error, Nat, Outcome, Result};

/// Default iteration budget for [`pmcs`].
pub const DEFAULT_PMCS_LIMIT: u64 = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Odd,
    Even,
}

/// Applies an odd cycle, `(3c + 1) / 2`, to an odd `c`.
///
/// Computed through the form algebra: `(p, n)` becomes `(p - 1, 3n + 1)`.
pub fn odd_cycle(c: &Nat) -> Result<Nat> {
    require_at_least("odd_cycle", c, 1)?;
    if c.is_even() {
        return Err(Error::NotOddCascadeStart {
            op: "odd_cycle",
            value: c.clone(),
        });
    }
    let d = decompose(c)?;
    let next = reconstruct(&FormDescriptor::standard(
        d.power - 1,
        d.index * 3u32 + 1u32,
    ));
    debug_assert_eq!(next, (c * 3u32 + 1u32) >> 1u32);
    Ok(next)
}

/// Every value visited by one cascade, start through result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeTrace {
    pub values: Vec<Nat>,
}

impl CascadeTrace {
    pub fn start(&self) -> &Nat {
        &self.values[0]
    }

    pub fn result(&self) -> &Nat {
        self.values.last().expect("a cascade has at least one step")
    }

    pub fn peak(&self) -> &Nat {
        self.values.iter().max().expect("nonempty")
    }

    pub fn step_count(&self) -> usize {
        self.values.len() - 1
    }

    /// `(value, kind of step applied to it)` for every step.
    pub fn steps(&self) -> impl Iterator<Item = (&Nat, StepKind)> {
        self.values[..self.values.len() - 1].iter().map(|v| {
            let kind = if v.is_odd() {
                StepKind::Odd
            } else {
                StepKind::Even
            };
            (v, kind)
        })
    }
}

/// Runs the cascade starting at `c` by direct iteration.
///
/// An even start is a lone 2-cascade: a single halving.
pub fn run_cascade(c: &Nat) -> Result<CascadeTrace> {
    require_at_least("run_cascade", c, 1)?;
    let mut values = vec![c.clone()];
    let mut current = c.clone();
    while current.is_odd() {
        let up = sequence::step(&current);
        current = sequence::step(&up);
        values.push(up);
        values.push(current.clone());
    }
    values.push(sequence::step(&current));
    Ok(CascadeTrace { values })
}

/// Result of the cascade from the standard form `(p, n)`.
pub fn cascade_transform(power: u64, index: &Nat) -> Nat {
    assert!(power >= 1, "form power must be at least 1");
    let scale = pow3(power - 1);
    let offset: Nat = (&scale - 1u32) >> 1u32;
    scale * index + offset
}

/// The cascade transform as a symbolic form: `3^(p-1)·n + (3^(p-1) - 1)/2`.
pub fn transform_form(power: u64) -> SymbolicForm {
    SymbolicForm::new(pow3(power - 1), cascade_transform(power, &Nat::zero()))
}

/// Standard bases of the cascade results of `2^p·n + 2^(p-1) - 1` for `n` in `0..count`.
pub fn transform_base_pattern(power: u64, count: u64) -> Vec<Nat> {
    (0..count)
        .map(|n| {
            standard_base(&cascade_transform(power, &Nat::from(n))).expect("transform is positive")
        })
        .collect()
}

/// Standard-base behaviour of a symbolic form across its members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormClass {
    /// Every member has standard base `2^power`.
    Fixed { power: u64 },
    /// Members' bases vary; the smallest one occurring is `2^min_power`.
    Mix { min_power: u64 },
}

impl FormClass {
    pub fn base(&self) -> Nat {
        match *self {
            FormClass::Fixed { power } => pow2(power),
            FormClass::Mix { min_power } => pow2(min_power),
        }
    }

    pub fn is_mix(&self) -> bool {
        matches!(self, FormClass::Mix { .. })
    }
}

/// `2`, `16`, … for fixed forms; `Mix` otherwise.
impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormClass::Fixed { .. } => write!(f, "{}", self.base()),
            FormClass::Mix { .. } => write!(f, "Mix"),
        }
    }
}

pub fn classify_form(s: &SymbolicForm) -> FormClass {
    let k_val = s
        .coefficient
        .trailing_zeros()
        .expect("coefficient is nonzero");
    if s.offset.is_even() {
        return if k_val > 0 {
            FormClass::Fixed { power: 1 }
        } else {
            FormClass::Mix { min_power: 1 }
        };
    }
    // k·n + f + 1 = 2^v·(odd) for every n exactly when v(f + 1) < v(k).
    let f_val = (&s.offset + 1u32)
        .trailing_zeros()
        .expect("f + 1 is nonzero");
    if f_val < k_val {
        FormClass::Fixed { power: f_val + 1 }
    } else {
        FormClass::Mix {
            min_power: k_val + 1,
        }
    }
}

/// Cascade result of every member of a fixed composite form of base 4 or higher.
pub fn symbolic_cascade_transform(s: &SymbolicForm) -> Result<SymbolicForm> {
    let power = match classify_form(s) {
        FormClass::Fixed { power } if power >= 2 => power,
        FormClass::Fixed { .. } => {
            return Err(Error::NotCascadeForm {
                form: s.to_string(),
                reason: "members are even",
            })
        }
        FormClass::Mix { .. } => {
            return Err(Error::NotCascadeForm {
                form: s.to_string(),
                reason: "members have mixed standard bases",
            })
        }
    };
    let base = pow2(power);
    if !(&s.coefficient % &base).is_zero() {
        return Err(Error::NotCascadeForm {
            form: s.to_string(),
            reason: "coefficient is not a multiple of the standard base",
        });
    }
    // Member index within the 2^p-form: m(n) = (k·n + f - (2^(p-1) - 1)) / 2^p.
    let index_form = SymbolicForm::new(
        &s.coefficient >> power,
        (&s.offset - (pow2(power - 1) - 1u32)) >> power,
    );
    Ok(transform_form(power).compose(&index_form))
}

/// One row of a cascade-result level table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRow {
    /// Dotted components naming the row, e.g. `[8, 8]` for `8.8`.
    pub components: Vec<Nat>,
    /// Classification of the cascade result for each column extension.
    pub cells: Vec<FormClass>,
}

impl LevelRow {
    /// First column whose cascade result is a mix, with its classification.
    pub fn mix(&self) -> Option<(usize, FormClass)> {
        self.cells
            .iter()
            .position(FormClass::is_mix)
            .map(|i| (i, self.cells[i]))
    }

    pub fn label(&self) -> String {
        self.components
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Classifies the cascade results of `row.column` for every column.
pub fn cascade_result_row(components: &[Nat], columns: &[Nat]) -> Result<LevelRow> {
    let cells = columns
        .iter()
        .map(|column| {
            let mut dotted = components.to_vec();
            dotted.push(column.clone());
            let start = expand_dotted(&dotted)?;
            Ok(classify_form(&symbolic_cascade_transform(&start)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelRow {
        components: components.to_vec(),
        cells,
    })
}

/// Builds `depth` levels of cascade-result tables.
///
/// Level 1 has one row per entry of `first`. Each later level extends every
/// row of the previous level that has a mix by the column where it occurred.
pub fn cascade_result_levels(
    first: &[Nat],
    columns: &[Nat],
    depth: usize,
) -> Result<Vec<Vec<LevelRow>>> {
    let mut levels: Vec<Vec<LevelRow>> = Vec::with_capacity(depth);
    let mut names: Vec<Vec<Nat>> = first.iter().map(|b| vec![b.clone()]).collect();
    for _ in 0..depth {
        let rows = names
            .iter()
            .map(|name| cascade_result_row(name, columns))
            .collect::<Result<Vec<_>>>()?;
        names = rows
            .iter()
            .filter_map(|row| {
                row.mix().map(|(i, _)| {
                    let mut next = row.components.clone();
                    next.push(columns[i].clone());
                    next
                })
            })
            .collect();
        levels.push(rows);
    }
    Ok(levels)
}

/// One number on a reverse-cascade ladder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rung {
    pub form: FormDescriptor,
    pub value: Nat,
}

/// Reverse cascade from `2·target` up to its maximum cascade start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderTrace {
    pub target: Nat,
    pub rungs: Vec<Rung>,
}

impl LadderTrace {
    /// Maximum cascade start: top of the ladder.
    pub fn mcs(&self) -> &Nat {
        &self.rungs.last().expect("ladder has a first rung").value
    }

    pub fn mcs_form(&self) -> &FormDescriptor {
        &self.rungs.last().expect("ladder has a first rung").form
    }
}

/// Maximum cascade start of `v`: the highest-form number whose cascade ends at `v`.
pub fn mcs(v: &Nat) -> Result<LadderTrace> {
    require_at_least("mcs", v, 1)?;
    let mut form = FormDescriptor::standard(1, v.clone());
    let mut rungs = vec![Rung {
        value: reconstruct(&form),
        form: form.clone(),
    }];
    loop {
        let (t, r) = form.index.div_rem(&Nat::from(3u32));
        if !r.is_one() {
            break;
        }
        form = FormDescriptor::standard(form.power + 1, t);
        rungs.push(Rung {
            value: reconstruct(&form),
            form: form.clone(),
        });
    }
    Ok(LadderTrace {
        target: v.clone(),
        rungs,
    })
}

/// Chain of successive maximum cascade starts ending at an odd multiple of 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryStart {
    /// `v`, MCS(v), MCS(MCS(v)), …, the primary start.
    pub chain: Vec<Nat>,
}

impl PrimaryStart {
    pub fn value(&self) -> &Nat {
        self.chain.last().expect("chain includes the start")
    }
}

fn is_odd_multiple_of_three(v: &Nat) -> bool {
    v.is_odd() && (v % 3u32).is_zero()
}

/// Primary maximum cascade start of `v`, following at most `max_iter` ladders.
pub fn pmcs(v: &Nat, max_iter: u64) -> Result<Outcome<PrimaryStart>> {
    require_at_least("pmcs", v, 1)?;
    if (v % 3u32).is_zero() {
        return Err(Error::MultipleOfThree(v.clone()));
    }
    let mut chain = vec![v.clone()];
    for _ in 0..max_iter {
        let next = mcs(chain.last().expect("nonempty"))?.mcs().clone();
        let done = is_odd_multiple_of_three(&next);
        chain.push(next);
        if done {
            return Ok(Outcome::Found(PrimaryStart { chain }));
        }
    }
    Ok(Outcome::NotFoundWithinLimit { limit: max_iter })
}

/// The first `count` seeds `1, 5, 21, 85, …` (`K_{i+1} = 4·K_i + 1`).
pub fn seeds(count: usize) -> Vec<Nat> {
    std::iter::successors(Some(Nat::one()), |k| Some(k * 4u32 + 1u32))
        .take(count)
        .collect()
}

/// Whether `c` is odd and `3c + 1` is a power of 2.
pub fn is_seed(c: &Nat) -> bool {
    c.is_odd() && crate::power_of_two_exponent(&(c * 3u32 + 1u32)).is_some()
}
