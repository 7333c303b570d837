//! Dimension values, bound intervals and trace records.

use super::Rat;
use crate::ordinal::Ordinal;
use std::cmp::Ordering;
use std::fmt;

/// An element of `{-1} ∪ Ord ∪ {Omega}`: the value range of the dimension
/// functions. `Omega` is the symbol assigned when no ordinal works.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimValue {
    NegOne,
    Ordinal(Ordinal),
    Omega,
}

impl DimValue {
    pub fn nat(n: u64) -> DimValue {
        DimValue::Ordinal(Ordinal::nat(n))
    }

    pub fn as_ordinal(&self) -> Option<&Ordinal> {
        match self {
            DimValue::Ordinal(o) => Some(o),
            _ => None,
        }
    }

    pub fn is_at_least_omega(&self) -> bool {
        match self {
            DimValue::NegOne => false,
            DimValue::Ordinal(o) => *o >= Ordinal::omega(),
            DimValue::Omega => true,
        }
    }
}

impl PartialOrd for DimValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DimValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use DimValue::*;
        match (self, other) {
            (NegOne, NegOne) | (Omega, Omega) => Ordering::Equal,
            (NegOne, _) | (_, Omega) => Ordering::Less,
            (_, NegOne) | (Omega, _) => Ordering::Greater,
            (Ordinal(a), Ordinal(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::NegOne => write!(f, "-1"),
            DimValue::Ordinal(o) => write!(f, "{o}"),
            DimValue::Omega => write!(f, "Omega"),
        }
    }
}

/// One rule application recorded in a derivation trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleApplication {
    /// Catalog name of the rule.
    pub rule: &'static str,
    /// The statement the rule rests on, spelled out.
    pub anchor: &'static str,
    /// The subexpression the rule was applied to.
    pub subject: String,
    /// Rendered operand bounds.
    pub inputs: Vec<String>,
    /// Rendered contribution of this application.
    pub output: String,
    /// Extra caveat attached to this particular application, if any.
    pub note: Option<String>,
}

/// A provable interval for a dimension function, with its derivation.
///
/// The true value lies in `[lower, upper]`, or in `[lower, upper)` when
/// `upper_strict` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimBound {
    pub lower: DimValue,
    pub upper: DimValue,
    pub upper_strict: bool,
    pub trace: Vec<RuleApplication>,
}

impl DimBound {
    pub fn vacuous() -> DimBound {
        DimBound {
            lower: DimValue::NegOne,
            upper: DimValue::Omega,
            upper_strict: false,
            trace: Vec::new(),
        }
    }

    pub fn is_point(&self) -> bool {
        !self.upper_strict && self.lower == self.upper
    }

    /// `[w, w_1)` style rendering.
    pub fn render(&self) -> String {
        let close = if self.upper_strict { ")" } else { "]" };
        format!("[{}, {}{close}", self.lower, self.upper)
    }
}

impl fmt::Display for DimBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// What is known about the classical Hausdorff dimension of a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HdClass {
    FiniteExactly(Rat),
    FiniteAtMost(Rat),
    Infinite,
    Unknown,
}

impl HdClass {
    pub fn render(&self) -> String {
        match self {
            HdClass::FiniteExactly(v) => format!("= {v}"),
            HdClass::FiniteAtMost(v) => format!("<= {v}"),
            HdClass::Infinite => "infinite".into(),
            HdClass::Unknown => "unknown".into(),
        }
    }
}

impl fmt::Display for HdClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
