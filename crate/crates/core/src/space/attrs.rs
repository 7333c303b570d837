//! Attribute inference: compactness and separability as three-valued facts,
//! weight as a cardinal upper bound.

use super::{Declared, SpaceError, SpaceExpr};
use crate::ordinal::{Aleph, Ordinal};
use std::fmt;

/// A fact that is proved, refuted, or open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriState {
    True,
    False,
    Unknown,
}

impl TriState {
    fn and(self, other: TriState) -> TriState {
        use TriState::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Unknown,
        }
    }

    pub fn is_true(self) -> bool {
        self == TriState::True
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriState::True => write!(f, "true"),
            TriState::False => write!(f, "false"),
            TriState::Unknown => write!(f, "unknown"),
        }
    }
}

/// Inferred attributes of a space expression. `weight` is an upper bound on
/// the least cardinality of a topological base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attributes {
    pub compact: TriState,
    pub separable: TriState,
    pub weight: Aleph,
}

impl Attributes {
    fn atom(compact: bool, separable: bool, weight: Aleph) -> Attributes {
        let t = |b| if b { TriState::True } else { TriState::False };
        Attributes {
            compact: t(compact),
            separable: t(separable),
            weight,
        }
    }
}

/// Weight index of the tower levels: for `a` below `w_1` the spaces are
/// separable; for `a = w_s + d` the dense companion has cardinality at most
/// `aleph_s`, which bounds the weight.
fn tower_weight(alpha: &Ordinal) -> Aleph {
    match alpha {
        Ordinal::Small(_) => Aleph::countable(),
        Ordinal::InitialPlus { index, .. } => Aleph::new(Ordinal::Small(index.clone())),
    }
}

fn all_and(parts: &[Attributes], f: impl Fn(&Attributes) -> TriState) -> TriState {
    parts
        .iter()
        .map(f)
        .fold(TriState::True, |acc, t| acc.and(t))
}

fn max_weight(parts: &[Attributes]) -> Aleph {
    parts
        .iter()
        .map(|a| a.weight.clone())
        .max()
        .unwrap_or_else(Aleph::countable)
}

/// Infers attributes of one structural node from its children, then layers
/// the declared attributes on top. A declaration that contradicts a definite
/// inference is an error; declarations refine unknowns.
pub(crate) fn infer_node(
    expr: &SpaceExpr,
    children: &[Attributes],
    declared: &Declared,
) -> Result<Attributes, SpaceError> {
    use SpaceExpr::*;
    let separable_atom = Attributes::atom(true, true, Aleph::countable());
    let mut inferred = match expr {
        Empty | Point | Cube(_) | FatCantor(_) => separable_atom,
        Smirnov(alpha) | SmirnovCantor(alpha) => {
            let countable_level = matches!(alpha, Ordinal::Small(_));
            Attributes::atom(countable_level, countable_level, tower_weight(alpha))
        }
        DenseSubset(alpha) => {
            let countable_level = matches!(alpha, Ordinal::Small(_));
            Attributes {
                compact: TriState::Unknown,
                separable: if countable_level {
                    TriState::True
                } else {
                    TriState::False
                },
                weight: tower_weight(alpha),
            }
        }
        Product(..) => Attributes {
            compact: all_and(children, |a| a.compact),
            separable: all_and(children, |a| a.separable),
            weight: max_weight(children),
        },
        ClosedUnion(_) => Attributes {
            compact: all_and(children, |a| a.compact),
            separable: all_and(children, |a| a.separable),
            weight: max_weight(children),
        },
        LocallyFiniteClosedUnion { unbounded, .. } => {
            let compact_parts = all_and(children, |a| a.compact);
            Attributes {
                // parts are closed in the union, so a non-compact part
                // refutes compactness even for the unbounded family
                compact: if *unbounded {
                    compact_parts.and(TriState::Unknown)
                } else {
                    compact_parts
                },
                separable: all_and(children, |a| a.separable),
                weight: max_weight(children),
            }
        }
        AlexandrovSum { .. } => Attributes {
            compact: all_and(children, |a| a.compact),
            separable: all_and(children, |a| a.separable),
            weight: max_weight(children),
        },
        Augment(_) => Attributes {
            compact: TriState::Unknown,
            separable: children[0].separable,
            weight: children[0].weight.clone(),
        },
        Excision { .. } => {
            let both = children[0].compact.and(children[1].compact);
            Attributes {
                // the closed part is a closed subspace of the whole; the
                // complement is not, so only its compactness is inconclusive
                compact: match (both, children[1].compact) {
                    (TriState::True, _) => TriState::True,
                    (_, TriState::False) => TriState::False,
                    _ => TriState::Unknown,
                },
                separable: children[0].separable.and(children[1].separable),
                weight: max_weight(children),
            }
        }
        SubspaceOf(_) => Attributes {
            compact: TriState::Unknown,
            separable: match children[0].separable {
                TriState::True => TriState::True,
                _ => TriState::Unknown,
            },
            weight: children[0].weight.clone(),
        },
        WithAttrs { .. } => unreachable!("attribute wrappers are unwrapped by the engine"),
    };

    if let Some(sep) = declared.separable {
        match (inferred.separable, sep) {
            (TriState::True, false) | (TriState::False, true) => {
                return Err(SpaceError::DeclarationConflict(format!(
                    "separable declared {sep} but inferred {}",
                    inferred.separable
                )));
            }
            _ => inferred.separable = if sep { TriState::True } else { TriState::False },
        }
    }
    if let Some(cpt) = declared.compact {
        match (inferred.compact, cpt) {
            (TriState::True, false) | (TriState::False, true) => {
                return Err(SpaceError::DeclarationConflict(format!(
                    "compact declared {cpt} but inferred {}",
                    inferred.compact
                )));
            }
            _ => inferred.compact = if cpt { TriState::True } else { TriState::False },
        }
    }
    if let Some(w) = &declared.weight {
        // both are upper bounds; keep the smaller claim
        if *w < inferred.weight {
            inferred.weight = w.clone();
        }
    }
    if inferred.separable.is_true() && Aleph::countable() < inferred.weight {
        inferred.weight = Aleph::countable();
    }
    Ok(inferred)
}
