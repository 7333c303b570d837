//! Exact-rational laboratory for the constructions behind the dimension
//! calculus: symmetric fat Cantor sets with measure bookkeeping, finite
//! truncations of the Smirnov tower with their exact metric, blockwise
//! Lipschitz surjections, and box-counting evidence.
//!
//! Everything is computed in exact rational arithmetic; the only floating
//! point in the crate is the final least-squares slope of the box-dimension
//! estimator.

mod cantor;
mod lipschitz;
mod smirnov;

pub use cantor::{
    box_dimension_estimate, default_schedule, fat_cantor, product_box_counts, rat, CantorSet, Rat,
};
pub use lipschitz::{
    build_phi, identity_sample, lipschitz_estimate, lipschitz_estimate_with_bound, LipschitzReport,
    MapSample, PhiShape,
};
pub use smirnov::{
    balance_constant, check_metric_axioms, smirnov_dist, GroupTag, MetricReport, PointCloud,
    SmirnovPoint, TriangleWitness, TruncatedSpace, Truncation, DEFAULT_POINT_BUDGET,
};

use thiserror::Error;

/// Errors raised by the laboratory constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("invalid removal schedule: {0}")]
    Schedule(String),
    #[error("point {0} lies outside the set")]
    OutsideSet(String),
    #[error("point budget exceeded: {needed} points needed, budget {budget}")]
    PointBudget { needed: usize, budget: usize },
    #[error("operation is only defined for limit-level spaces")]
    NonLimit,
    #[error("sample is not a function: {0}")]
    NotAFunction(String),
    #[error("mismatched point addresses: {0}")]
    Address(String),
    #[error("unsupported truncation shape: {0}")]
    UnsupportedShape(String),
    #[error("{0}")]
    Degenerate(&'static str),
}
