//! Symbolic calculus for transfinite dimension bounds.
//!
//! The crate has three layers:
//!
//! * [`ordinal`] — exact Cantor-normal-form ordinal arithmetic with a single
//!   initial-ordinal extension tier;
//! * [`space`] — an expression tree of metric-space constructions together
//!   with a rule engine that propagates provable lower/upper bounds for the
//!   D-dimension and its Hausdorff-style variant, each application recorded
//!   in a derivation trace;
//! * [`dsl`] — the text grammar, parser and pretty-printer for space
//!   expressions, plus the machine-readable bound report.
//!
//! The [`laws`] module hosts the seeded randomized law suite for the ordinal
//! layer; it backs the `check-ordinals` command of the CLI.

pub mod dsl;
pub mod laws;
pub mod ordinal;
pub mod report;
pub mod space;

pub use ordinal::{Aleph, Cnf, Decomposition, Ordinal, OrdinalError};
pub use space::{
    evaluate, Attributes, DimBound, DimValue, Evaluation, HdClass, RuleApplication, SpaceError,
    SpaceExpr, TriState,
};
