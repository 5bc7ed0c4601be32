//! Standard, non-standard, composite and mixed number forms.
//!
//! Every natural number `C` has exactly one standard form
//! `C = 2^p·n + 2^(p-1) - 1` with `p ≥ 1`: even numbers are the `p = 1`
//! (2-form) case, `4n+1` numbers are 4-forms, and so on. The power is found
//! from the 2-adic valuation of `C + 1`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{pow2, power_of_two_exponent, require_at_least, Error, Nat, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// `2^p·n + 2^(p-1) - 1`
    Standard,
    /// `2^p·n + 2^p - 1`
    NonStandard,
}

/// A `(p, n)` pair describing a number in standard or non-standard form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormDescriptor {
    pub power: u64,
    pub index: Nat,
    pub kind: FormKind,
}

impl FormDescriptor {
    pub fn standard(power: u64, index: Nat) -> Self {
        assert!(power >= 1, "form power must be at least 1");
        FormDescriptor {
            power,
            index,
            kind: FormKind::Standard,
        }
    }

    pub fn nonstandard(power: u64, index: Nat) -> Self {
        assert!(power >= 1, "form power must be at least 1");
        FormDescriptor {
            power,
            index,
            kind: FormKind::NonStandard,
        }
    }

    pub fn base(&self) -> Nat {
        pow2(self.power)
    }

    pub fn offset(&self) -> Nat {
        match self.kind {
            FormKind::Standard => pow2(self.power - 1) - 1u32,
            FormKind::NonStandard => pow2(self.power) - 1u32,
        }
    }

    pub fn value(&self) -> Nat {
        reconstruct(self)
    }
}

/// Renders as `base(index)+offset`, dropping a zero offset: `8(3)+3`, `2(41)`.
impl fmt::Display for FormDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let offset = self.offset();
        write!(f, "{}({})", self.base(), self.index)?;
        if !offset.is_zero() {
            write!(f, "+{offset}")?;
        }
        Ok(())
    }
}

/// The unique standard form of `c`.
pub fn decompose(c: &Nat) -> Result<FormDescriptor> {
    require_at_least("decompose", c, 1)?;
    let successor = c + 1u32;
    let valuation = successor.trailing_zeros().expect("c + 1 is nonzero");
    let power = valuation + 1;
    // c + 1 = 2^(p-1)·(2n + 1)
    let index = (successor >> valuation) >> 1u32;
    Ok(FormDescriptor::standard(power, index))
}

pub fn reconstruct(d: &FormDescriptor) -> Nat {
    (&d.index << d.power) + d.offset()
}

/// `2^p` for the standard form of `c`.
pub fn standard_base(c: &Nat) -> Result<Nat> {
    Ok(decompose(c)?.base())
}

/// Standard bases of every number in `lo..=hi`; empty when `lo > hi`.
pub fn form_pattern(lo: &Nat, hi: &Nat) -> Result<Vec<Nat>> {
    require_at_least("form_pattern", lo, 1)?;
    let mut out = Vec::new();
    let mut c = lo.clone();
    while c <= *hi {
        out.push(standard_base(&c)?);
        c += 1u32;
    }
    Ok(out)
}

/// The linear form `k·n + f` over whole-number `n`.
///
/// Normalized forms keep `f < k`; [`SymbolicForm::new`] also accepts `f ≥ k`
/// because composite forms built from an offset and its minimum base
/// (e.g. `4n + 5`) need not be normalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolicForm {
    pub coefficient: Nat,
    pub offset: Nat,
}

impl SymbolicForm {
    pub fn new(coefficient: Nat, offset: Nat) -> Self {
        assert!(
            !coefficient.is_zero(),
            "form coefficient must be at least 1"
        );
        SymbolicForm {
            coefficient,
            offset,
        }
    }

    pub fn from_u64(coefficient: u64, offset: u64) -> Self {
        Self::new(Nat::from(coefficient), Nat::from(offset))
    }

    pub fn is_normalized(&self) -> bool {
        self.offset < self.coefficient
    }

    /// Member of the form at index `n`.
    pub fn at(&self, n: &Nat) -> Nat {
        &self.coefficient * n + &self.offset
    }

    /// `self(inner(n))`.
    pub fn compose(&self, inner: &SymbolicForm) -> SymbolicForm {
        SymbolicForm::new(
            &self.coefficient * &inner.coefficient,
            &self.coefficient * &inner.offset + &self.offset,
        )
    }

    /// Exponent `p` when the coefficient is `2^p`, i.e. a composite form.
    pub fn composite_power(&self) -> Option<u64> {
        power_of_two_exponent(&self.coefficient)
    }
}

impl fmt::Display for SymbolicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficient.is_one() {
            write!(f, "n")?;
        } else {
            write!(f, "{}n", self.coefficient)?;
        }
        if !self.offset.is_zero() {
            write!(f, "+{}", self.offset)?;
        }
        Ok(())
    }
}

/// The standard form `2^p·n + 2^(p-1) - 1` as a symbolic form.
pub fn standard_form(power: u64) -> SymbolicForm {
    assert!(power >= 1);
    SymbolicForm::new(pow2(power), pow2(power - 1) - 1u32)
}

/// Expands dotted composite notation such as `16.4.8`.
///
/// The last component `b` contributes its standard form `b·n + b/2 - 1`; each
/// earlier component substitutes the expression built so far as its index.
pub fn expand_dotted(components: &[Nat]) -> Result<SymbolicForm> {
    if components.is_empty() {
        return Err(Error::EmptyDottedForm);
    }
    let mut form = SymbolicForm::new(Nat::one(), Nat::zero());
    for component in components.iter().rev() {
        let power = match power_of_two_exponent(component) {
            Some(p) if p >= 1 => p,
            _ => return Err(Error::NotPowerOfTwo(component.clone())),
        };
        form = standard_form(power).compose(&form);
    }
    Ok(form)
}

/// Smallest shift `s` with `a[..window] == b[s..s + window]`.
pub fn find_pattern_shift<T: PartialEq>(a: &[T], b: &[T], window: usize) -> Option<usize> {
    if window > a.len() || window > b.len() {
        return None;
    }
    let needle = &a[..window];
    if window == 0 {
        return Some(0);
    }
    b.windows(window).position(|candidate| candidate == needle)
}

/// Whether odd `c` is a standard 4-form (`4m+1`) rather than non-standard (`4m+3`).
pub fn is_standard_four_form(c: &Nat) -> bool {
    c.is_odd() && (c % 4u32) == Nat::one()
}
