//! Text grammar for space expressions.
//!
//! ```text
//! expr := 'empty' | 'point' | 'I' ['^' nat] | 'cantor' '(' rational ')'
//!       | 'S' '(' ord ')' | 'C' '(' ord ')' | 'Dsub' '(' ord ')'
//!       | 'prod' '(' expr ',' expr ')' | 'cunion' '(' expr {',' expr} ')'
//!       | 'lfunion' '(' expr {',' expr} [',' '...'] ')' | 'aug' '(' expr ')'
//!       | 'excise' '(' expr ',' expr ')' | 'alex' '(' expr {',' expr} [',' '...'] ')'
//!       | 'sub' '(' expr ')' | expr 'with' '{' attr {',' attr} '}'
//! attr := 'separable' | 'compact' | 'weight=aleph(' ord ')' | 'hd=' rational
//! ord  := term {'+' term};  term := 'w' ['^' ord] ['*' nat] | nat | 'w_' nat
//! ```
//!
//! Whitespace-insensitive. Parsing is pure and reentrant; failures carry the
//! earliest failing byte offset.

use crate::ordinal::{parse_ordinal_prefix, Aleph, Ordinal};
use crate::space::{Declared, Rat, SpaceExpr};
use num_bigint::BigInt;
use std::fmt;
use thiserror::Error;

/// A parse failure: position, what was expected there, and a message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse failure at byte {position}: {message}")]
pub struct ParseFailure {
    pub position: usize,
    pub expected: Vec<&'static str>,
    pub message: String,
}

pub type ParseResult = Result<SpaceExpr, ParseFailure>;

/// Parses a space expression spanning the whole input.
pub fn parse(input: &str) -> ParseResult {
    let mut p = Parser {
        input,
        bytes: input.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.failure(&["end of input"], "unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

const EXPR_KEYWORDS: &[&str] = &[
    "empty", "point", "I", "cantor", "S", "C", "Dsub", "prod", "cunion", "lfunion", "aug",
    "excise", "alex", "sub",
];

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn failure(&mut self, expected: &[&'static str], message: &str) -> ParseFailure {
        self.skip_ws();
        ParseFailure {
            position: self.pos,
            expected: expected.to_vec(),
            message: message.to_string(),
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

    fn expect(&mut self, b: u8, what: &'static str) -> Result<(), ParseFailure> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.failure(&[what], &format!("expected {what}")))
        }
    }

    /// Reads an alphabetic word without consuming it.
    fn peek_word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        while end < self.bytes.len() && self.bytes[end].is_ascii_alphabetic() {
            end += 1;
        }
        &self.input[start..end]
    }

    fn nat(&mut self) -> Result<u64, ParseFailure> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.failure(&["natural number"], "expected a natural number"));
        }
        self.input[start..self.pos].parse::<u64>().map_err(|_| ParseFailure {
            position: start,
            expected: vec!["natural number"],
            message: "number too large".into(),
        })
    }

    fn rational(&mut self) -> Result<Rat, ParseFailure> {
        let numer = self.nat()?;
        if self.eat(b'/') {
            let pos = self.pos;
            let denom = self.nat()?;
            if denom == 0 {
                return Err(ParseFailure {
                    position: pos,
                    expected: vec!["nonzero denominator"],
                    message: "zero denominator".into(),
                });
            }
            Ok(Rat::new(BigInt::from(numer), BigInt::from(denom)))
        } else {
            Ok(Rat::from_integer(BigInt::from(numer)))
        }
    }

    fn ordinal(&mut self) -> Result<Ordinal, ParseFailure> {
        self.skip_ws();
        match parse_ordinal_prefix(self.input, self.pos) {
            Ok((value, end)) => {
                self.pos = end;
                Ok(value)
            }
            Err(e) => Err(ParseFailure {
                position: e.position,
                expected: vec!["ordinal term"],
                message: e.message,
            }),
        }
    }

    fn expr(&mut self) -> ParseResult {
        let mut expr = self.primary()?;
        loop {
            self.skip_ws();
            if self.peek_word() == "with" {
                self.pos += "with".len();
                let attrs = self.attr_clause()?;
                expr = expr.with_attrs(attrs);
            } else {
                break;
            }
        }
        Ok(expr)
    }

    fn primary(&mut self) -> ParseResult {
        let word = self.peek_word();
        match word {
            "empty" => {
                self.pos += word.len();
                Ok(SpaceExpr::Empty)
            }
            "point" => {
                self.pos += word.len();
                Ok(SpaceExpr::Point)
            }
            "I" => {
                self.pos += 1;
                let n = if self.eat(b'^') { self.nat()? } else { 1 };
                let n = u32::try_from(n).map_err(|_| ParseFailure {
                    position: self.pos,
                    expected: vec!["small cell dimension"],
                    message: "cell dimension too large".into(),
                })?;
                Ok(SpaceExpr::Cube(n))
            }
            "cantor" => {
                self.pos += word.len();
                self.expect(b'(', "'('")?;
                let m = self.rational()?;
                self.expect(b')', "')'")?;
                Ok(SpaceExpr::FatCantor(m))
            }
            "S" => self.ordinal_atom(1, SpaceExpr::Smirnov),
            "C" => self.ordinal_atom(1, SpaceExpr::SmirnovCantor),
            "Dsub" => self.ordinal_atom(4, SpaceExpr::DenseSubset),
            "prod" => {
                self.pos += word.len();
                self.expect(b'(', "'('")?;
                let a = self.expr()?;
                self.expect(b',', "','")?;
                let b = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(SpaceExpr::product(a, b))
            }
            "cunion" => {
                self.pos += word.len();
                let (parts, ellipsis) = self.part_list(false)?;
                debug_assert!(!ellipsis);
                Ok(SpaceExpr::ClosedUnion(parts))
            }
            "lfunion" => {
                self.pos += word.len();
                let (parts, unbounded) = self.part_list(true)?;
                Ok(SpaceExpr::LocallyFiniteClosedUnion { parts, unbounded })
            }
            "aug" => {
                self.pos += word.len();
                self.expect(b'(', "'('")?;
                let inner = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(SpaceExpr::augment(inner))
            }
            "excise" => {
                self.pos += word.len();
                self.expect(b'(', "'('")?;
                let complement = self.expr()?;
                self.expect(b',', "','")?;
                let closed_part = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(SpaceExpr::excision(complement, closed_part))
            }
            "alex" => {
                self.pos += word.len();
                let (parts, repeated) = self.part_list(true)?;
                Ok(SpaceExpr::AlexandrovSum { parts, repeated })
            }
            "sub" => {
                self.pos += word.len();
                self.expect(b'(', "'('")?;
                let inner = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(SpaceExpr::subspace(inner))
            }
            _ => Err(self.failure(EXPR_KEYWORDS, "expected a space expression")),
        }
    }

    fn ordinal_atom(
        &mut self,
        keyword_len: usize,
        build: impl FnOnce(Ordinal) -> SpaceExpr,
    ) -> ParseResult {
        self.pos += keyword_len;
        self.expect(b'(', "'('")?;
        let alpha = self.ordinal()?;
        self.expect(b')', "')'")?;
        Ok(build(alpha))
    }

    /// `'(' expr {',' expr} [',' '...'] ')'`; the ellipsis is only legal when
    /// `allow_ellipsis` is set.
    fn part_list(&mut self, allow_ellipsis: bool) -> Result<(Vec<SpaceExpr>, bool), ParseFailure> {
        self.expect(b'(', "'('")?;
        let mut parts = vec![self.expr()?];
        let mut marker = false;
        while self.eat(b',') {
            self.skip_ws();
            if allow_ellipsis && self.bytes[self.pos..].starts_with(b"...") {
                self.pos += 3;
                marker = true;
                break;
            }
            parts.push(self.expr()?);
        }
        self.expect(b')', "')'")?;
        Ok((parts, marker))
    }

    fn attr_clause(&mut self) -> Result<Declared, ParseFailure> {
        self.expect(b'{', "'{'")?;
        let mut attrs = Declared::default();
        loop {
            let start = self.pos;
            let word = self.peek_word();
            match word {
                "separable" => {
                    self.pos += word.len();
                    if attrs.separable.replace(true).is_some() {
                        return Err(self.dup(start, "separable"));
                    }
                }
                "compact" => {
                    self.pos += word.len();
                    if attrs.compact.replace(true).is_some() {
                        return Err(self.dup(start, "compact"));
                    }
                }
                "weight" => {
                    self.pos += word.len();
                    self.expect(b'=', "'='")?;
                    let aleph = self.peek_word();
                    if aleph != "aleph" {
                        return Err(self.failure(&["aleph"], "expected 'aleph'"));
                    }
                    self.pos += aleph.len();
                    self.expect(b'(', "'('")?;
                    let index = self.ordinal()?;
                    self.expect(b')', "')'")?;
                    if attrs.weight.replace(Aleph::new(index)).is_some() {
                        return Err(self.dup(start, "weight"));
                    }
                }
                "hd" => {
                    self.pos += word.len();
                    self.expect(b'=', "'='")?;
                    let value = self.rational()?;
                    if attrs.hd.replace(value).is_some() {
                        return Err(self.dup(start, "hd"));
                    }
                }
                _ => {
                    return Err(
                        self.failure(&["separable", "compact", "weight", "hd"], "expected an attribute")
                    )
                }
            }
            if !self.eat(b',') {
                break;
            }
        }
        self.expect(b'}', "'}'")?;
        Ok(attrs)
    }

    fn dup(&self, position: usize, name: &str) -> ParseFailure {
        ParseFailure {
            position,
            expected: vec!["a different attribute"],
            message: format!("duplicate attribute '{name}'"),
        }
    }
}

// ---------------------------------------------------------------------------
// pretty-printing
// ---------------------------------------------------------------------------

struct Pretty<'a>(&'a SpaceExpr);

impl fmt::Display for Pretty<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SpaceExpr::*;
        match self.0 {
            Empty => write!(f, "empty"),
            Point => write!(f, "point"),
            Cube(n) => write!(f, "I^{n}"),
            FatCantor(m) => write!(f, "cantor({m})"),
            Smirnov(a) => write!(f, "S({a})"),
            SmirnovCantor(a) => write!(f, "C({a})"),
            DenseSubset(a) => write!(f, "Dsub({a})"),
            Product(a, b) => write!(f, "prod({}, {})", Pretty(a), Pretty(b)),
            ClosedUnion(parts) => write_parts(f, "cunion", parts, false),
            LocallyFiniteClosedUnion { parts, unbounded } => {
                write_parts(f, "lfunion", parts, *unbounded)
            }
            Augment(inner) => write!(f, "aug({})", Pretty(inner)),
            Excision {
                complement,
                closed_part,
            } => write!(f, "excise({}, {})", Pretty(complement), Pretty(closed_part)),
            AlexandrovSum { parts, repeated } => write_parts(f, "alex", parts, *repeated),
            SubspaceOf(inner) => write!(f, "sub({})", Pretty(inner)),
            WithAttrs { inner, attrs } => {
                write!(f, "{} with {{", Pretty(inner))?;
                let mut first = true;
                let mut item = |f: &mut fmt::Formatter<'_>, text: String| -> fmt::Result {
                    if !first {
                        write!(f, ", ")?;
                    }
                    first = false;
                    write!(f, "{text}")
                };
                if attrs.separable == Some(true) {
                    item(f, "separable".into())?;
                }
                if attrs.compact == Some(true) {
                    item(f, "compact".into())?;
                }
                if let Some(w) = &attrs.weight {
                    item(f, format!("weight=aleph({})", w.index()))?;
                }
                if let Some(h) = &attrs.hd {
                    item(f, format!("hd={h}"))?;
                }
                write!(f, "}}")
            }
        }
    }
}

fn write_parts(
    f: &mut fmt::Formatter<'_>,
    name: &str,
    parts: &[SpaceExpr],
    ellipsis: bool,
) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{}", Pretty(p))?;
    }
    if ellipsis {
        write!(f, ", ...")?;
    }
    write!(f, ")")
}

/// Canonical text of an expression; `parse(pretty(e))` returns a tree equal
/// to `e` for every parser-producible expression.
pub fn pretty(expr: &SpaceExpr) -> String {
    Pretty(expr).to_string()
}

#[cfg(test)]
mod tests;
