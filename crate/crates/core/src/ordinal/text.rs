//! Literal syntax for ordinals, shared with the expression DSL.
//!
//! `0`, `5`, `w`, `w^2*3 + w*1 + 4`, `w^(w+1)`, `w_1`, `w_2 + w*3`.
//! Whitespace-insensitive. `w` is the first infinite ordinal, `w_k` the k-th
//! initial ordinal.

use super::{Cnf, Ordinal, OrdinalError};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid ordinal at byte {position}: {message}")]
pub struct OrdinalParseError {
    pub position: usize,
    pub message: String,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail<T>(&mut self, message: impl Into<String>) -> Result<T, OrdinalParseError> {
        self.skip_ws();
        Err(OrdinalParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn nat(&mut self) -> Result<u64, OrdinalParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected a natural number");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        text.parse::<u64>().map_err(|_| OrdinalParseError {
            position: start,
            message: "number too large".into(),
        })
    }
}

fn arith(pos: usize, err: OrdinalError) -> OrdinalParseError {
    OrdinalParseError {
        position: pos,
        message: err.to_string(),
    }
}

/// Parses an ordinal literal that must span the whole input.
pub fn parse_ordinal(input: &str) -> Result<Ordinal, OrdinalParseError> {
    let mut cur = Cursor::new(input);
    let value = ordinal(&mut cur)?;
    if cur.peek().is_some() {
        return cur.fail("unexpected trailing input");
    }
    Ok(value)
}

impl FromStr for Ordinal {
    type Err = OrdinalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ordinal(s)
    }
}

fn ordinal(cur: &mut Cursor<'_>) -> Result<Ordinal, OrdinalParseError> {
    let mut acc = term(cur)?;
    while cur.eat(b'+') {
        let start = cur.pos;
        let next = term(cur)?;
        acc = acc.checked_add(&next).map_err(|e| arith(start, e))?;
    }
    Ok(acc)
}

/// One grammar term: `w ['^' exponent] ['*' nat]` | `w_ index` | `nat`.
fn term(cur: &mut Cursor<'_>) -> Result<Ordinal, OrdinalParseError> {
    match cur.peek() {
        Some(b'w') => {
            cur.pos += 1;
            if cur.bytes.get(cur.pos) == Some(&b'_') {
                cur.pos += 1;
                let start = cur.pos;
                let index = if cur.eat(b'(') {
                    let inner = ordinal(cur)?;
                    if !cur.eat(b')') {
                        return cur.fail("expected ')' after initial-ordinal index");
                    }
                    inner
                } else {
                    Ordinal::nat(cur.nat()?)
                };
                return Ordinal::initial(&index).map_err(|e| arith(start, e));
            }
            let exp_pos = cur.pos;
            let exponent = if cur.eat(b'^') {
                exponent_atom(cur)?
            } else {
                Ordinal::nat(1)
            };
            let coefficient = if cur.eat(b'*') { cur.nat()? } else { 1 };
            let exponent = match exponent {
                Ordinal::Small(c) => c,
                Ordinal::InitialPlus { .. } => {
                    return Err(arith(exp_pos, OrdinalError::ExponentTooLarge))
                }
            };
            Cnf::power_times(exponent, coefficient)
                .map(Ordinal::Small)
                .map_err(|e| arith(exp_pos, e))
        }
        Some(b) if b.is_ascii_digit() => Ok(Ordinal::nat(cur.nat()?)),
        _ => cur.fail("expected ordinal term"),
    }
}

/// Exponent position: a bare natural, a bare `w`, or a parenthesized ordinal.
fn exponent_atom(cur: &mut Cursor<'_>) -> Result<Ordinal, OrdinalParseError> {
    match cur.peek() {
        Some(b'(') => {
            cur.pos += 1;
            let inner = ordinal(cur)?;
            if !cur.eat(b')') {
                return cur.fail("expected ')' after exponent");
            }
            Ok(inner)
        }
        Some(b'w') => {
            cur.pos += 1;
            Ok(Ordinal::omega())
        }
        Some(b) if b.is_ascii_digit() => Ok(Ordinal::nat(cur.nat()?)),
        _ => cur.fail("expected exponent"),
    }
}

pub(crate) use cursor_api::*;

mod cursor_api {
    //! Minimal hooks so the DSL parser can reuse the ordinal grammar on its
    //! own byte cursor.
    use super::*;

    /// Parses an ordinal from `input[start..]`, returning the value and the
    /// byte offset one past its end.
    pub(crate) fn parse_ordinal_prefix(
        input: &str,
        start: usize,
    ) -> Result<(Ordinal, usize), OrdinalParseError> {
        let mut cur = Cursor {
            bytes: input.as_bytes(),
            pos: start,
        };
        let value = ordinal(&mut cur)?;
        cur.skip_ws();
        Ok((value, cur.pos))
    }
}

fn write_cnf(f: &mut fmt::Formatter<'_>, cnf: &Cnf) -> fmt::Result {
    if cnf.is_zero() {
        return write!(f, "0");
    }
    for (i, term) in cnf.terms().iter().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        if term.exponent.is_zero() {
            write!(f, "{}", term.coefficient)?;
            continue;
        }
        if term.exponent.as_nat() == Some(1) {
            write!(f, "w")?;
        } else if let Some(n) = term.exponent.as_nat() {
            write!(f, "w^{n}")?;
        } else if term.exponent == Cnf::omega() {
            write!(f, "w^w")?;
        } else {
            write!(f, "w^({})", Ordinal::Small(term.exponent.clone()))?;
        }
        if term.coefficient > 1 {
            write!(f, "*{}", term.coefficient)?;
        }
    }
    Ok(())
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_cnf(f, self)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordinal::Small(c) => write_cnf(f, c),
            Ordinal::InitialPlus { index, tail } => {
                if let Some(n) = index.as_nat() {
                    write!(f, "w_{n}")?;
                } else {
                    write!(f, "w_({})", Ordinal::Small(index.clone()))?;
                }
                if !tail.is_zero() {
                    write!(f, " + ")?;
                    write_cnf(f, tail)?;
                }
                Ok(())
            }
        }
    }
}
