//! Expression trees of metric-space constructions and the bound calculus.
//!
//! A [`SpaceExpr`] names a space by how it is built: atoms (cells, Cantor
//! sets, the Smirnov tower and its Cantor/dense companions) and combinators
//! (products, closed unions, excisions, one-point compactifications,
//! countable augmentations, subspaces). The engine walks the tree once,
//! bottom-up, and attaches to every node a provable interval for the
//! D-dimension and for its Hausdorff-style variant, together with the rule
//! applications that justify each refinement.

mod attrs;
mod dim;
mod engine;
mod rules;

pub use attrs::{Attributes, TriState};
pub use dim::{DimBound, DimValue, HdClass, RuleApplication};
pub use engine::{
    d_bounds, evaluate, evaluate_with, excision_upper, hd_class, infer_attributes,
    intermediate_targets, naive_sum, tdhd_bounds, Evaluation, IntermediateTargets, RuleSet,
};
pub use rules::{catalog, Rule, RuleKind};

use crate::ordinal::{Aleph, Ordinal, OrdinalError};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational, used for measures and Hausdorff-dimension declarations.
pub type Rat = BigRational;

/// Errors raised while validating or evaluating a space expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("fat Cantor measure must lie strictly between 0 and 1, got {0}")]
    MeasureOutOfRange(String),
    #[error("declaration conflicts with inference: {0}")]
    DeclarationConflict(String),
    #[error("duplicate declaration of {0}")]
    DuplicateDeclaration(&'static str),
    #[error("ordinal arithmetic failed: {0}")]
    Ordinal(#[from] OrdinalError),
    #[error("internal rule inconsistency: {0}")]
    InconsistentBounds(String),
    #[error("{0}")]
    Domain(String),
}

impl SpaceError {
    /// Exit-code class: inconsistencies discovered while combining rules are
    /// engine errors (3); everything else is input validation (2).
    pub fn is_internal(&self) -> bool {
        matches!(self, SpaceError::InconsistentBounds(_))
    }
}

/// User-supplied attributes attached with a `with { ... }` clause.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Declared {
    pub separable: Option<bool>,
    pub compact: Option<bool>,
    pub weight: Option<Aleph>,
    pub hd: Option<Rat>,
}

impl Declared {
    pub fn is_empty(&self) -> bool {
        self.separable.is_none()
            && self.compact.is_none()
            && self.weight.is_none()
            && self.hd.is_none()
    }

    /// Layers `outer` declarations over `self`; the same key declared twice
    /// with different values is a conflict.
    pub fn merged(&self, outer: &Declared) -> Result<Declared, SpaceError> {
        fn join<T: Clone + PartialEq>(
            a: &Option<T>,
            b: &Option<T>,
            key: &'static str,
        ) -> Result<Option<T>, SpaceError> {
            match (a, b) {
                (Some(x), Some(y)) if x != y => Err(SpaceError::DuplicateDeclaration(key)),
                (Some(x), _) => Ok(Some(x.clone())),
                (None, other) => Ok(other.clone()),
            }
        }
        Ok(Declared {
            separable: join(&self.separable, &outer.separable, "separable")?,
            compact: join(&self.compact, &outer.compact, "compact")?,
            weight: join(&self.weight, &outer.weight, "weight")?,
            hd: join(&self.hd, &outer.hd, "hd")?,
        })
    }
}

/// A metric space described by its construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceExpr {
    /// The empty space.
    Empty,
    /// A one-point space.
    Point,
    /// The cell `I^n`.
    Cube(u32),
    /// A symmetric fat Cantor set of the given Lebesgue measure in (0, 1).
    FatCantor(Rat),
    /// The Smirnov space `S_a`.
    Smirnov(Ordinal),
    /// The Cantor companion `C_a` sitting inside `S_a`.
    SmirnovCantor(Ordinal),
    /// The dense subset `D_a` of `S_a`.
    DenseSubset(Ordinal),
    /// Metric product of two spaces.
    Product(Box<SpaceExpr>, Box<SpaceExpr>),
    /// Union of finitely many parts, each closed in the union.
    ClosedUnion(Vec<SpaceExpr>),
    /// Union of a locally finite family of closed parts. With `unbounded`
    /// set, the listed parts are prototypes repeated countably often.
    LocallyFiniteClosedUnion {
        parts: Vec<SpaceExpr>,
        unbounded: bool,
    },
    /// The core space with a countable set adjoined.
    Augment(Box<SpaceExpr>),
    /// A space `X` presented through a closed subset `F`: `complement`
    /// stands for `X \ F` and `closed_part` for `F`. Closedness of `F` is a
    /// hypothesis carried by the node, not a derived fact.
    Excision {
        complement: Box<SpaceExpr>,
        closed_part: Box<SpaceExpr>,
    },
    /// Metric one-point compactification of a countable disjoint union.
    /// With `repeated` set, the listed parts are prototypes repeated
    /// countably often.
    AlexandrovSum {
        parts: Vec<SpaceExpr>,
        repeated: bool,
    },
    /// An unspecified subspace of the parent space.
    SubspaceOf(Box<SpaceExpr>),
    /// Attribute declarations layered on an inner expression.
    WithAttrs {
        inner: Box<SpaceExpr>,
        attrs: Declared,
    },
}

impl SpaceExpr {
    pub fn product(a: SpaceExpr, b: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn augment(a: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Augment(Box::new(a))
    }

    pub fn subspace(a: SpaceExpr) -> SpaceExpr {
        SpaceExpr::SubspaceOf(Box::new(a))
    }

    pub fn excision(complement: SpaceExpr, closed_part: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Excision {
            complement: Box::new(complement),
            closed_part: Box::new(closed_part),
        }
    }

    pub fn with_attrs(self, attrs: Declared) -> SpaceExpr {
        SpaceExpr::WithAttrs {
            inner: Box::new(self),
            attrs,
        }
    }

    /// Structural validation that does not need the rule engine: measure
    /// ranges and part counts.
    pub fn validate_shape(&self) -> Result<(), SpaceError> {
        match self {
            SpaceExpr::FatCantor(m) => {
                if *m <= Rat::zero() || *m >= Rat::one() {
                    return Err(SpaceError::MeasureOutOfRange(m.to_string()));
                }
            }
            SpaceExpr::Product(a, b) => {
                a.validate_shape()?;
                b.validate_shape()?;
            }
            SpaceExpr::ClosedUnion(parts)
            | SpaceExpr::LocallyFiniteClosedUnion { parts, .. }
            | SpaceExpr::AlexandrovSum { parts, .. } => {
                if parts.is_empty() {
                    return Err(SpaceError::Domain(
                        "union-style nodes need at least one part".into(),
                    ));
                }
                for p in parts {
                    p.validate_shape()?;
                }
            }
            SpaceExpr::Augment(inner)
            | SpaceExpr::SubspaceOf(inner)
            | SpaceExpr::WithAttrs { inner, .. } => inner.validate_shape()?,
            SpaceExpr::Excision {
                complement,
                closed_part,
            } => {
                complement.validate_shape()?;
                closed_part.validate_shape()?;
            }
            _ => {}
        }
        if let SpaceExpr::WithAttrs { attrs, .. } = self {
            if attrs.is_empty() {
                return Err(SpaceError::Domain("empty attribute clause".into()));
            }
            if let Some(h) = &attrs.hd {
                if *h < Rat::zero() {
                    return Err(SpaceError::Domain(
                        "declared Hausdorff dimension must be nonnegative".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}
