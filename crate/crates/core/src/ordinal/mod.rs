//! Exact ordinal arithmetic in Cantor normal form.
//!
//! The representation has two tiers. [`Cnf`] covers ordinals below the first
//! uncountable initial ordinal, written as a strictly decreasing sum
//! `w^e1*c1 + ... + w^ek*ck` whose exponents are themselves [`Cnf`] values.
//! [`Ordinal`] adds a single leading initial-ordinal atom on top of that, so
//! values of the shape `w_t + d` (with `d` below the tier) are exact as well.
//! Everything the dimension rules produce lives in one of the two tiers.

mod text;

pub(crate) use text::parse_ordinal_prefix;
pub use text::{parse_ordinal, OrdinalParseError};

use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Errors raised by ordinal construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("term coefficients must be at least 1")]
    ZeroCoefficient,
    #[error("left subtraction needs the subtrahend to be at most the minuend")]
    Underflow,
    #[error("unsupported ordinal arithmetic: {0}")]
    Unsupported(&'static str),
    #[error("0 is not additively indecomposable")]
    IndecomposableZero,
    #[error("initial ordinal index must be at least 1")]
    InitialIndexZero,
    #[error("exponents must stay below the initial-ordinal tier")]
    ExponentTooLarge,
}

/// One Cantor-normal-form term `w^exponent * coefficient`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfTerm {
    pub exponent: Cnf,
    pub coefficient: u64,
}

/// Ordinal below the initial-ordinal tier, in Cantor normal form.
///
/// Invariant: exponents strictly decreasing, all coefficients >= 1.
/// The empty term list denotes 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Cnf {
    terms: Vec<CnfTerm>,
}

impl Cnf {
    pub fn zero() -> Self {
        Cnf { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Cnf::zero()
        } else {
            Cnf {
                terms: vec![CnfTerm {
                    exponent: Cnf::zero(),
                    coefficient: n,
                }],
            }
        }
    }

    pub fn omega() -> Self {
        Cnf::omega_power(Cnf::nat(1))
    }

    /// `w^exponent`.
    pub fn omega_power(exponent: Cnf) -> Self {
        Cnf {
            terms: vec![CnfTerm {
                exponent,
                coefficient: 1,
            }],
        }
    }

    /// `w^exponent * coefficient`; the coefficient must be positive.
    pub fn power_times(exponent: Cnf, coefficient: u64) -> Result<Self, OrdinalError> {
        if coefficient == 0 {
            return Err(OrdinalError::ZeroCoefficient);
        }
        Ok(Cnf {
            terms: vec![CnfTerm {
                exponent,
                coefficient,
            }],
        })
    }

    pub fn terms(&self) -> &[CnfTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(n) when the value is a finite ordinal.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 if self.terms[0].exponent.is_zero() => Some(self.terms[0].coefficient),
            _ => None,
        }
    }

    /// A nonzero ordinal with no finite part is a limit.
    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.finite_part() == 0
    }

    pub fn is_successor(&self) -> bool {
        self.finite_part() > 0
    }

    /// Largest limit ordinal at most `self` (0 when `self < w`).
    pub fn limit_part(&self) -> Cnf {
        let terms = self
            .terms
            .iter()
            .filter(|t| !t.exponent.is_zero())
            .cloned()
            .collect();
        Cnf { terms }
    }

    /// Coefficient of the exponent-0 term.
    pub fn finite_part(&self) -> u64 {
        self.terms
            .last()
            .filter(|t| t.exponent.is_zero())
            .map(|t| t.coefficient)
            .unwrap_or(0)
    }

    /// Ordinal sum `self + rhs` (not commutative).
    pub fn add(&self, rhs: &Cnf) -> Cnf {
        let Some(first) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<CnfTerm> = self
            .terms
            .iter()
            .take_while(|t| t.exponent > first.exponent)
            .cloned()
            .collect();
        let kept = terms.len();
        if self.terms.len() > kept && self.terms[kept].exponent == first.exponent {
            terms.push(CnfTerm {
                exponent: first.exponent.clone(),
                coefficient: self.terms[kept].coefficient + first.coefficient,
            });
            terms.extend(rhs.terms[1..].iter().cloned());
        } else {
            terms.extend(rhs.terms.iter().cloned());
        }
        Cnf { terms }
    }

    /// `self + 1`.
    pub fn succ(&self) -> Cnf {
        self.add(&Cnf::nat(1))
    }

    /// The unique `g` with `rhs + g = self`, when `rhs <= self`.
    pub fn sub_left(&self, rhs: &Cnf) -> Result<Cnf, OrdinalError> {
        let mut i = 0;
        loop {
            match (self.terms.get(i), rhs.terms.get(i)) {
                (_, None) => {
                    // rhs is a proper prefix; the remaining tail restores self.
                    return Ok(Cnf {
                        terms: self.terms[i..].to_vec(),
                    });
                }
                (None, Some(_)) => return Err(OrdinalError::Underflow),
                (Some(a), Some(b)) => match a.exponent.cmp(&b.exponent) {
                    Ordering::Less => return Err(OrdinalError::Underflow),
                    Ordering::Greater => {
                        return Ok(Cnf {
                            terms: self.terms[i..].to_vec(),
                        })
                    }
                    Ordering::Equal => match a.coefficient.cmp(&b.coefficient) {
                        Ordering::Less => return Err(OrdinalError::Underflow),
                        Ordering::Greater => {
                            let mut terms = vec![CnfTerm {
                                exponent: a.exponent.clone(),
                                coefficient: a.coefficient - b.coefficient,
                            }];
                            terms.extend(self.terms[i + 1..].iter().cloned());
                            return Ok(Cnf { terms });
                        }
                        Ordering::Equal => i += 1,
                    },
                },
            }
        }
    }

    /// `j`-th element of the canonical fundamental sequence of a limit
    /// ordinal: strictly increasing with supremum `self`.
    ///
    /// Returns `None` when `self` is not a limit.
    pub fn fundamental(&self, j: u64) -> Option<Cnf> {
        if !self.is_limit() {
            return None;
        }
        let last = self.terms.last().expect("limit ordinal is nonzero");
        let mut terms: Vec<CnfTerm> = self.terms[..self.terms.len() - 1].to_vec();
        if last.coefficient > 1 {
            terms.push(CnfTerm {
                exponent: last.exponent.clone(),
                coefficient: last.coefficient - 1,
            });
        }
        let prefix = Cnf { terms };
        let step = if last.exponent.is_successor() {
            // w^(e+1): approach along w^e * j.
            let mut pred = last.exponent.clone();
            let lastt = pred.terms.last_mut().expect("successor is nonzero");
            if lastt.coefficient > 1 {
                lastt.coefficient -= 1;
            } else {
                pred.terms.pop();
            }
            if j == 0 {
                Cnf::zero()
            } else {
                Cnf::power_times(pred, j).expect("j > 0")
            }
        } else if last.exponent.is_limit() {
            // w^e with e a limit: approach along w^(e_j).
            let inner = last.exponent.fundamental(j).expect("limit exponent");
            Cnf::omega_power(inner)
        } else {
            // exponent 0 would make the term finite, contradicting is_limit
            unreachable!("limit ordinal ends in a positive exponent");
        };
        Some(prefix.add(&step))
    }
}

impl PartialOrd for Cnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cnf {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.exponent.cmp(&b.exponent) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match a.coefficient.cmp(&b.coefficient) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

/// Exact ordinal: either a [`Cnf`] value or `w_index + tail` with `index >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ordinal {
    Small(Cnf),
    /// `w_index + tail`. Invariants: `index >= 1`; `tail` is automatically
    /// below `w_index` because every [`Cnf`] value is.
    InitialPlus { index: Cnf, tail: Cnf },
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal::Small(Cnf::zero())
    }

    pub fn nat(n: u64) -> Self {
        Ordinal::Small(Cnf::nat(n))
    }

    pub fn omega() -> Self {
        Ordinal::Small(Cnf::omega())
    }

    /// `w^exponent`; the exponent must be below the initial-ordinal tier.
    pub fn omega_power(exponent: &Ordinal) -> Result<Self, OrdinalError> {
        match exponent {
            Ordinal::Small(e) => Ok(Ordinal::Small(Cnf::omega_power(e.clone()))),
            Ordinal::InitialPlus { .. } => Err(OrdinalError::ExponentTooLarge),
        }
    }

    /// The initial ordinal `w_index`, for `index >= 1`.
    pub fn initial(index: &Ordinal) -> Result<Self, OrdinalError> {
        match index {
            Ordinal::Small(i) if !i.is_zero() => Ok(Ordinal::InitialPlus {
                index: i.clone(),
                tail: Cnf::zero(),
            }),
            Ordinal::Small(_) => Err(OrdinalError::InitialIndexZero),
            Ordinal::InitialPlus { .. } => Err(OrdinalError::Unsupported(
                "initial-ordinal indices above the small tier",
            )),
        }
    }

    /// Normalizes a formal sum of terms `w^exponent * coefficient`, read left
    /// to right with ordinal addition.
    pub fn from_terms(terms: &[(Ordinal, u64)]) -> Result<Self, OrdinalError> {
        let mut acc = Ordinal::zero();
        for (exponent, coefficient) in terms {
            if *coefficient == 0 {
                return Err(OrdinalError::ZeroCoefficient);
            }
            let term = match exponent {
                Ordinal::Small(e) => {
                    Ordinal::Small(Cnf::power_times(e.clone(), *coefficient)?)
                }
                Ordinal::InitialPlus { .. } => return Err(OrdinalError::ExponentTooLarge),
            };
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Ordinal::Small(c) if c.is_zero())
    }

    pub fn as_small(&self) -> Option<&Cnf> {
        match self {
            Ordinal::Small(c) => Some(c),
            Ordinal::InitialPlus { .. } => None,
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        self.as_small().and_then(Cnf::as_nat)
    }

    /// Ordinal sum `self + rhs`.
    ///
    /// A sum of two initial-tier values is computed only when absorption
    /// forces it (left index strictly below the right one); otherwise the
    /// result leaves the two-tier representation and is refused rather than
    /// guessed.
    pub fn checked_add(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        match (self, rhs) {
            (Ordinal::Small(a), Ordinal::Small(b)) => Ok(Ordinal::Small(a.add(b))),
            // a < w_t, and w_t is additively indecomposable: a + (w_t + d) = w_t + d.
            (Ordinal::Small(_), ip @ Ordinal::InitialPlus { .. }) => Ok(ip.clone()),
            (Ordinal::InitialPlus { index, tail }, Ordinal::Small(b)) => {
                Ok(Ordinal::InitialPlus {
                    index: index.clone(),
                    tail: tail.add(b),
                })
            }
            (
                Ordinal::InitialPlus { index: ia, .. },
                rhs @ Ordinal::InitialPlus { index: ib, .. },
            ) => {
                if ia < ib {
                    Ok(rhs.clone())
                } else {
                    Err(OrdinalError::Unsupported(
                        "sum of two initial-ordinal values beyond absorption",
                    ))
                }
            }
        }
    }

    /// The unique `g` with `rhs + g = self`, when `rhs <= self`.
    pub fn sub_left(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        match (self, rhs) {
            (Ordinal::Small(a), Ordinal::Small(b)) => Ok(Ordinal::Small(a.sub_left(b)?)),
            (Ordinal::Small(_), Ordinal::InitialPlus { .. }) => Err(OrdinalError::Underflow),
            // b is absorbed on the left of an initial ordinal.
            (ip @ Ordinal::InitialPlus { .. }, Ordinal::Small(_)) => Ok(ip.clone()),
            (
                Ordinal::InitialPlus { index: ia, tail: ta },
                Ordinal::InitialPlus { index: ib, tail: tb },
            ) => match ib.cmp(ia) {
                Ordering::Greater => Err(OrdinalError::Underflow),
                Ordering::Less => Ok(self.clone()),
                Ordering::Equal => Ok(Ordinal::Small(ta.sub_left(tb)?)),
            },
        }
    }

    /// Splits into the largest limit ordinal at most `self` plus the finite
    /// part, so that `limit_part + finite_part` reconstructs the input.
    pub fn decompose(&self) -> Decomposition {
        match self {
            Ordinal::Small(c) => Decomposition {
                limit_part: Ordinal::Small(c.limit_part()),
                finite_part: c.finite_part(),
            },
            Ordinal::InitialPlus { index, tail } => Decomposition {
                limit_part: Ordinal::InitialPlus {
                    index: index.clone(),
                    tail: tail.limit_part(),
                },
                finite_part: tail.finite_part(),
            },
        }
    }

    pub fn limit_part(&self) -> Ordinal {
        self.decompose().limit_part
    }

    pub fn finite_part(&self) -> u64 {
        self.decompose().finite_part
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.finite_part() == 0
    }

    /// Membership in the class of additively indecomposable ordinals, i.e.
    /// those of the form `w^d`. Zero is a domain error.
    pub fn is_indecomposable(&self) -> Result<bool, OrdinalError> {
        match self {
            Ordinal::Small(c) => {
                if c.is_zero() {
                    Err(OrdinalError::IndecomposableZero)
                } else {
                    Ok(c.terms().len() == 1 && c.terms()[0].coefficient == 1)
                }
            }
            // w_t itself is indecomposable; w_t + d with d > 0 is not.
            Ordinal::InitialPlus { tail, .. } => Ok(tail.is_zero()),
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ordinal::Small(a), Ordinal::Small(b)) => a.cmp(b),
            (Ordinal::Small(_), Ordinal::InitialPlus { .. }) => Ordering::Less,
            (Ordinal::InitialPlus { .. }, Ordinal::Small(_)) => Ordering::Greater,
            (
                Ordinal::InitialPlus { index: ia, tail: ta },
                Ordinal::InitialPlus { index: ib, tail: tb },
            ) => ia.cmp(ib).then_with(|| ta.cmp(tb)),
        }
    }
}

/// Result of [`Ordinal::decompose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub limit_part: Ordinal,
    pub finite_part: u64,
}

/// The cardinal `aleph_index` under the von Neumann assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Aleph {
    index: Ordinal,
}

impl Aleph {
    pub fn new(index: Ordinal) -> Self {
        Aleph { index }
    }

    pub fn countable() -> Self {
        Aleph::new(Ordinal::zero())
    }

    pub fn index(&self) -> &Ordinal {
        &self.index
    }

    pub fn successor(&self) -> Result<Aleph, OrdinalError> {
        Ok(Aleph {
            index: self.index.checked_add(&Ordinal::nat(1))?,
        })
    }

    /// The least ordinal of this cardinality: `w_index` (or `w` at index 0).
    pub fn initial_ordinal(&self) -> Result<Ordinal, OrdinalError> {
        if self.index.is_zero() {
            Ok(Ordinal::omega())
        } else {
            Ordinal::initial(&self.index)
        }
    }
}

impl PartialOrd for Aleph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Aleph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index.cmp(&other.index)
    }
}

impl fmt::Display for Aleph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "aleph({})", self.index)
    }
}
