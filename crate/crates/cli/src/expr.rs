//! Natural-number expressions: decimal literals, `^` (right-associative),
//! binary `+` and `-` (left-associative), and parentheses.

use collatz_forms::Nat;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

/// Results larger than this many bits are rejected.
const MAX_RESULT_BITS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
    #[error("unexpected '{ch}' at position {pos}")]
    Unexpected { ch: char, pos: usize },
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("missing ')' for '(' at position {0}")]
    Unclosed(usize),
    #[error("subtraction at position {0} goes below zero")]
    Negative(usize),
    #[error("power at position {0} is too large")]
    TooLarge(usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ExprError {
        match self.src.get(self.pos) {
            Some(&b) => ExprError::Unexpected {
                ch: b as char,
                pos: self.pos,
            },
            None => ExprError::UnexpectedEnd,
        }
    }

    fn sum(&mut self) -> Result<Nat, ExprError> {
        let mut acc = self.power()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.power()?;
            if op == b'+' {
                acc += rhs;
            } else if rhs > acc {
                return Err(ExprError::Negative(at));
            } else {
                acc -= rhs;
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Nat, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        self.pos += 1;
        let exp = self.power()?;
        if base <= Nat::from(1u32) || exp.is_zero() {
            return Ok(if exp.is_zero() { Nat::from(1u32) } else { base });
        }
        let exp = exp.to_u64().ok_or(ExprError::TooLarge(at))?;
        if exp.saturating_mul(base.bits()) > MAX_RESULT_BITS {
            return Err(ExprError::TooLarge(at));
        }
        Ok(num_traits::pow(base, exp as usize))
    }

    fn atom(&mut self) -> Result<Nat, ExprError> {
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(ExprError::Unclosed(open));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                Ok(digits.parse().expect("nonempty digit run"))
            }
            _ => Err(self.unexpected()),
        }
    }
}

pub fn eval(src: &str) -> Result<Nat, ExprError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    if p.peek().is_none() {
        return Err(ExprError::Empty);
    }
    let value = p.sum()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(value)
}
