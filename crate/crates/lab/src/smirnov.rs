//! Finite truncations of the Smirnov tower with their exact metric.
//!
//! A successor level is the previous level crossed with the interval under
//! the averaged metric `(d_inner + |t - t'|) / 2`. A limit level realizes
//! the first blocks of its fundamental sequence together with the
//! compactification point; distances follow the three-case formula, with the
//! cross-block case capped at 1 so the whole metric stays within bound 1 as
//! the construction requires.

use crate::cantor::{rat, Rat};
use crate::LabError;
use num_traits::{One, Zero};
use std::fmt;
use tdim_core::Cnf;

/// Address of one realized point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmirnovPoint {
    /// The single point of the base level.
    Origin,
    /// Successor level: inner point paired with an interval coordinate.
    Pair {
        inner: Box<SmirnovPoint>,
        t: Rat,
    },
    /// The compactification point of a limit level.
    Omega,
    /// A point inside one block of a limit level.
    Block {
        block: Cnf,
        inner: Box<SmirnovPoint>,
    },
}

impl SmirnovPoint {
    fn pair(inner: SmirnovPoint, t: Rat) -> SmirnovPoint {
        SmirnovPoint::Pair {
            inner: Box::new(inner),
            t,
        }
    }

    pub fn block(block: Cnf, inner: SmirnovPoint) -> SmirnovPoint {
        SmirnovPoint::Block {
            block,
            inner: Box::new(inner),
        }
    }
}

impl fmt::Display for SmirnovPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmirnovPoint::Origin => write!(f, "*"),
            SmirnovPoint::Pair { inner, t } => write!(f, "({inner}, {t})"),
            SmirnovPoint::Omega => write!(f, "w"),
            SmirnovPoint::Block { block, inner } => write!(f, "[{block}]{inner}"),
        }
    }
}

fn pred(c: &Cnf) -> Cnf {
    debug_assert!(c.is_successor());
    c.limit_part().add(&Cnf::nat(c.finite_part() - 1))
}

/// Exact distance at the given level. The same three-case formula serves
/// every limit level; within-block distances are scaled by `1/(fin(b)+1)`,
/// the distance to the compactification point is `1/(fin(b)+1)`, and
/// cross-block distances add the two point distances, capped at 1.
pub fn smirnov_dist(
    shape: &Cnf,
    p: &SmirnovPoint,
    q: &SmirnovPoint,
) -> Result<Rat, LabError> {
    use SmirnovPoint::*;
    if shape.is_zero() {
        return match (p, q) {
            (Origin, Origin) => Ok(Rat::zero()),
            _ => Err(address_error(shape, p, q)),
        };
    }
    if shape.is_successor() {
        let inner_shape = pred(shape);
        return match (p, q) {
            (Pair { inner: pi, t: pt }, Pair { inner: qi, t: qt }) => {
                let inner = smirnov_dist(&inner_shape, pi, qi)?;
                let gap = if pt >= qt { pt - qt } else { qt - pt };
                Ok((inner + gap) / rat(2, 1))
            }
            _ => Err(address_error(shape, p, q)),
        };
    }
    // limit level
    let omega_dist = |block: &Cnf| rat(1, block.finite_part() as i64 + 1);
    match (p, q) {
        (Omega, Omega) => Ok(Rat::zero()),
        (Omega, Block { block, .. }) | (Block { block, .. }, Omega) => Ok(omega_dist(block)),
        (
            Block { block: pb, inner: pi },
            Block { block: qb, inner: qi },
        ) => {
            if pb == qb {
                let inner = smirnov_dist(pb, pi, qi)?;
                Ok(inner * omega_dist(pb))
            } else {
                let sum = omega_dist(pb) + omega_dist(qb);
                Ok(sum.min(Rat::one()))
            }
        }
        _ => Err(address_error(shape, p, q)),
    }
}

fn address_error(shape: &Cnf, p: &SmirnovPoint, q: &SmirnovPoint) -> LabError {
    LabError::Address(format!("points {p} and {q} do not both live at level {shape}"))
}

/// Knobs for realizing a truncation.
#[derive(Debug, Clone)]
pub struct Truncation {
    /// How many blocks a limit level realizes.
    pub blocks: usize,
    /// Finest interval grid step, as a unit fraction 1/q.
    pub grid: Rat,
    /// Total point budget.
    pub budget: usize,
}

impl Truncation {
    pub fn new(blocks: usize, grid: Rat, budget: usize) -> Result<Truncation, LabError> {
        if !grid.numer().is_one() || grid > Rat::one() || grid <= Rat::zero() {
            return Err(LabError::Degenerate("grid must be a unit fraction 1/q"));
        }
        if blocks == 0 || budget == 0 {
            return Err(LabError::Degenerate("blocks and budget must be positive"));
        }
        Ok(Truncation { blocks, grid, budget })
    }
}

/// A realized truncation: the level, its points, and the exact metric.
#[derive(Debug, Clone)]
pub struct TruncatedSpace {
    shape: Cnf,
    points: Vec<SmirnovPoint>,
}

impl TruncatedSpace {
    pub fn build(shape: &Cnf, params: &Truncation) -> Result<TruncatedSpace, LabError> {
        let points = build_points(shape, params, params.budget)?;
        Ok(TruncatedSpace {
            shape: shape.clone(),
            points,
        })
    }

    pub fn shape(&self) -> &Cnf {
        &self.shape
    }

    pub fn points(&self) -> &[SmirnovPoint] {
        &self.points
    }

    pub fn distance(&self, p: &SmirnovPoint, q: &SmirnovPoint) -> Result<Rat, LabError> {
        smirnov_dist(&self.shape, p, q)
    }

    /// Materializes the full pairwise distance matrix with block tags.
    pub fn cloud(&self) -> Result<PointCloud, LabError> {
        let n = self.points.len();
        let mut matrix = vec![Rat::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.distance(&self.points[i], &self.points[j])?;
                matrix[i * n + j] = d.clone();
                matrix[j * n + i] = d;
            }
        }
        let groups = self
            .points
            .iter()
            .map(|p| match p {
                SmirnovPoint::Omega => GroupTag::OmegaPoint,
                SmirnovPoint::Block { block, .. } => GroupTag::Block(block.clone()),
                _ => GroupTag::Whole,
            })
            .collect();
        Ok(PointCloud {
            labels: self.points.iter().map(|p| p.to_string()).collect(),
            groups,
            matrix,
            n,
        })
    }
}

/// Grid steps from fine to coarse: 1/q, then 1/(q/2), ..., down to 1.
fn coarsenings(grid: &Rat) -> Vec<Rat> {
    let mut q = grid.denom().clone();
    let mut out = Vec::new();
    loop {
        out.push(Rat::new(1.into(), q.clone()));
        if q.is_one() {
            return out;
        }
        q /= 2;
        if q.is_one() {
            out.push(Rat::one());
            return out;
        }
    }
}

fn axis_values(step: &Rat) -> Vec<Rat> {
    let q: u64 = step
        .denom()
        .try_into()
        .expect("unit-fraction grids stay small");
    (0..=q).map(|k| rat(k as i64, 1) * step).collect()
}

fn build_points(
    shape: &Cnf,
    params: &Truncation,
    budget: usize,
) -> Result<Vec<SmirnovPoint>, LabError> {
    if budget == 0 {
        return Err(LabError::PointBudget { needed: 1, budget: 0 });
    }
    if shape.is_zero() {
        return Ok(vec![SmirnovPoint::Origin]);
    }
    if shape.is_successor() {
        // peel the whole finite tower above the limit part at once
        let axes = shape.finite_part() as usize;
        let base_shape = shape.limit_part();
        let base = if base_shape.is_zero() {
            vec![SmirnovPoint::Origin]
        } else {
            // reserve at least a two-point grid per axis
            let reserve = 1usize << axes.min(20);
            let base_budget = (budget / reserve).max(1);
            build_points(&base_shape, params, base_budget)?
        };
        // finest grid whose lattice fits the remaining budget
        let per_axis_budget = budget / base.len().max(1);
        let mut chosen: Option<Vec<Rat>> = None;
        for step in coarsenings(&params.grid) {
            let axis = axis_values(&step);
            if axis.len().checked_pow(axes as u32).is_some_and(|lattice| lattice <= per_axis_budget)
            {
                chosen = Some(axis);
                break;
            }
        }
        // degrade trailing coordinates to {0} when even the 2-point grid
        // does not fit
        let (axis, active) = match chosen {
            Some(axis) => (axis, axes),
            None => {
                let axis = axis_values(&Rat::one());
                let mut active = 0;
                while active < axes && 2usize.pow(active as u32 + 1) <= per_axis_budget {
                    active += 1;
                }
                (axis, active)
            }
        };
        let mut points = base;
        for level in 0..axes {
            let coords: &[Rat] = if level < active { &axis } else { &axis[..1] };
            points = points
                .into_iter()
                .flat_map(|p| coords.iter().map(move |t| SmirnovPoint::pair(p.clone(), t.clone())))
                .collect();
        }
        return Ok(points);
    }
    // limit level: the compactification point plus the first blocks of the
    // fundamental sequence
    let per_block = ((budget.saturating_sub(1)) / params.blocks).max(1);
    let mut points = vec![SmirnovPoint::Omega];
    for j in 0..params.blocks {
        let block = shape
            .fundamental(j as u64)
            .ok_or_else(|| LabError::UnsupportedShape(shape.to_string()))?;
        for inner in build_points(&block, params, per_block)? {
            points.push(SmirnovPoint::block(block.clone(), inner));
        }
    }
    Ok(points)
}

// ---------------------------------------------------------------------------
// point clouds: exact matrices, axiom checks, balance constants
// ---------------------------------------------------------------------------

/// Grouping tag used by the balance computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupTag {
    OmegaPoint,
    Block(Cnf),
    Whole,
}

/// A finite metric point cloud with an explicit exact distance matrix.
/// Distances can be overwritten, which is how the tests inject faults.
#[derive(Debug, Clone)]
pub struct PointCloud {
    pub labels: Vec<String>,
    pub groups: Vec<GroupTag>,
    matrix: Vec<Rat>,
    n: usize,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rat {
        &self.matrix[i * self.n + j]
    }

    /// Overwrites one distance symmetrically.
    pub fn set_dist(&mut self, i: usize, j: usize, value: Rat) {
        self.matrix[i * self.n + j] = value.clone();
        self.matrix[j * self.n + i] = value;
    }

    /// Overwrites one distance on a single side, breaking symmetry.
    pub fn set_dist_one_sided(&mut self, i: usize, j: usize, value: Rat) {
        self.matrix[i * self.n + j] = value;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleWitness {
    pub via: (usize, usize, usize),
    pub labels: (String, String, String),
    pub direct: Rat,
    pub through: Rat,
}

/// Outcome of the exact axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricReport {
    pub points: usize,
    pub symmetric: bool,
    pub identity_of_indiscernibles: bool,
    pub triangle_violation: Option<TriangleWitness>,
    pub triples_checked: u64,
    pub max_distance: Rat,
}

impl MetricReport {
    pub fn all_hold(&self) -> bool {
        self.symmetric && self.identity_of_indiscernibles && self.triangle_violation.is_none()
    }

    pub fn within_bound_one(&self) -> bool {
        self.max_distance <= Rat::one()
    }
}

pub const DEFAULT_POINT_BUDGET: usize = 300;

/// Verifies symmetry, identity of indiscernibles and every ordered triangle
/// inequality in exact rational arithmetic. Refuses clouds above the budget.
pub fn check_metric_axioms(cloud: &PointCloud, budget: usize) -> Result<MetricReport, LabError> {
    let n = cloud.len();
    if n > budget {
        return Err(LabError::PointBudget { needed: n, budget });
    }
    let mut symmetric = true;
    let mut identity = true;
    let mut max_distance = Rat::zero();
    for i in 0..n {
        if !cloud.dist(i, i).is_zero() {
            identity = false;
        }
        for j in 0..n {
            if i != j && cloud.dist(i, j).is_zero() {
                identity = false;
            }
            if cloud.dist(i, j) != cloud.dist(j, i) {
                symmetric = false;
            }
            if *cloud.dist(i, j) > max_distance {
                max_distance = cloud.dist(i, j).clone();
            }
        }
    }
    let mut triangle_violation = None;
    let mut triples: u64 = 0;
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                triples += 1;
                let through = cloud.dist(i, j) + cloud.dist(j, k);
                if *cloud.dist(i, k) > through {
                    triangle_violation = Some(TriangleWitness {
                        via: (i, j, k),
                        labels: (
                            cloud.labels[i].clone(),
                            cloud.labels[j].clone(),
                            cloud.labels[k].clone(),
                        ),
                        direct: cloud.dist(i, k).clone(),
                        through,
                    });
                    break 'outer;
                }
            }
        }
    }
    Ok(MetricReport {
        points: n,
        symmetric,
        identity_of_indiscernibles: identity,
        triangle_violation,
        triples_checked: triples,
        max_distance,
    })
}

/// Exact balance constant: the maximum over block pairs (and the
/// compactification point against each block) of the ratio between the
/// largest and smallest cross distance. Only defined for limit-level clouds
/// with at least two groups.
pub fn balance_constant(cloud: &PointCloud) -> Result<Rat, LabError> {
    let mut groups: Vec<(GroupTag, Vec<usize>)> = Vec::new();
    for (i, tag) in cloud.groups.iter().enumerate() {
        if matches!(tag, GroupTag::Whole) {
            return Err(LabError::NonLimit);
        }
        match groups.iter_mut().find(|(t, _)| t == tag) {
            Some((_, members)) => members.push(i),
            None => groups.push((tag.clone(), vec![i])),
        }
    }
    if groups.len() < 2 {
        return Err(LabError::NonLimit);
    }
    let mut best: Option<Rat> = None;
    for a in 0..groups.len() {
        for b in (a + 1)..groups.len() {
            let mut smallest: Option<Rat> = None;
            let mut largest: Option<Rat> = None;
            for &i in &groups[a].1 {
                for &j in &groups[b].1 {
                    let d = cloud.dist(i, j);
                    if smallest.as_ref().is_none_or(|s| d < s) {
                        smallest = Some(d.clone());
                    }
                    if largest.as_ref().is_none_or(|l| d > l) {
                        largest = Some(d.clone());
                    }
                }
            }
            let (smallest, largest) = (
                smallest.expect("groups are nonempty"),
                largest.expect("groups are nonempty"),
            );
            if smallest.is_zero() {
                return Err(LabError::Degenerate("distinct groups at distance zero"));
            }
            let ratio = largest / smallest;
            if best.as_ref().is_none_or(|b| ratio > *b) {
                best = Some(ratio);
            }
        }
    }
    Ok(best.expect("at least one group pair"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trunc(blocks: usize, q: i64, budget: usize) -> Truncation {
        Truncation::new(blocks, rat(1, q), budget).unwrap()
    }

    #[test]
    fn successor_distance_halves_the_coordinate_gap() {
        // points (x, 0) and (x, 1) at level 1 sit at distance 1/2
        let one = Cnf::nat(1);
        let p = SmirnovPoint::pair(SmirnovPoint::Origin, rat(0, 1));
        let q = SmirnovPoint::pair(SmirnovPoint::Origin, rat(1, 1));
        assert_eq!(smirnov_dist(&one, &p, &q).unwrap(), rat(1, 2));
    }

    #[test]
    fn limit_distances_follow_the_three_cases() {
        let w = Cnf::omega();
        let b3 = Cnf::nat(3);
        let b2 = Cnf::nat(2);
        let p3 = SmirnovPoint::block(b3.clone(), cube_point(3, &[0, 0, 0]));
        let p2 = SmirnovPoint::block(b2.clone(), cube_point(2, &[0, 0]));
        // compactification point to block 3: 1/(3+1)
        assert_eq!(
            smirnov_dist(&w, &SmirnovPoint::Omega, &p3).unwrap(),
            rat(1, 4)
        );
        // blocks 2 and 3: 1/3 + 1/4 = 7/12
        assert_eq!(smirnov_dist(&w, &p2, &p3).unwrap(), rat(7, 12));
        // blocks 0 and 1 would add to 3/2; the cap keeps the bound
        let p0 = SmirnovPoint::block(Cnf::zero(), SmirnovPoint::Origin);
        let p1 = SmirnovPoint::block(Cnf::nat(1), cube_point(1, &[0]));
        assert_eq!(smirnov_dist(&w, &p0, &p1).unwrap(), Rat::one());
    }

    fn cube_point(dim: usize, coords: &[i64]) -> SmirnovPoint {
        assert_eq!(coords.len(), dim);
        let mut p = SmirnovPoint::Origin;
        for c in coords {
            p = SmirnovPoint::pair(p, rat(*c, 1));
        }
        p
    }

    #[test]
    fn acceptance_truncation_fits_the_budget() {
        let space = TruncatedSpace::build(&Cnf::omega(), &trunc(6, 8, 300)).unwrap();
        assert!(space.points().len() <= 300, "{} points", space.points().len());
        assert!(space.points().len() > 50);
    }

    #[test]
    fn square_truncation_certifies() {
        let space = TruncatedSpace::build(&Cnf::nat(2), &trunc(1, 4, 300)).unwrap();
        assert_eq!(space.points().len(), 25);
        let cloud = space.cloud().unwrap();
        let report = check_metric_axioms(&cloud, DEFAULT_POINT_BUDGET).unwrap();
        assert!(report.all_hold());
        assert!(report.within_bound_one());
    }

    #[test]
    fn corrupted_distance_is_caught_with_a_witness() {
        let space = TruncatedSpace::build(&Cnf::nat(2), &trunc(1, 4, 300)).unwrap();
        let mut cloud = space.cloud().unwrap();
        // find the largest distance and halve it
        let (mut bi, mut bj) = (0, 1);
        for i in 0..cloud.len() {
            for j in (i + 1)..cloud.len() {
                if cloud.dist(i, j) > cloud.dist(bi, bj) {
                    (bi, bj) = (i, j);
                }
            }
        }
        let halved = cloud.dist(bi, bj) / rat(2, 1);
        cloud.set_dist(bi, bj, halved);
        let report = check_metric_axioms(&cloud, DEFAULT_POINT_BUDGET).unwrap();
        assert!(report.symmetric);
        assert!(report.triangle_violation.is_some());

        let mut cloud = space.cloud().unwrap();
        cloud.set_dist_one_sided(0, 1, rat(9, 10));
        let report = check_metric_axioms(&cloud, DEFAULT_POINT_BUDGET).unwrap();
        assert!(!report.symmetric);
    }

    #[test]
    fn budget_refusal_names_the_required_size() {
        let space = TruncatedSpace::build(&Cnf::omega(), &trunc(6, 8, 300)).unwrap();
        let cloud = space.cloud().unwrap();
        let err = check_metric_axioms(&cloud, 10).unwrap_err();
        assert!(matches!(err, LabError::PointBudget { needed, budget: 10 } if needed > 10));
    }

    #[test]
    fn smirnov_balance_constant_is_one() {
        let space = TruncatedSpace::build(&Cnf::omega(), &trunc(4, 4, 200)).unwrap();
        let cloud = space.cloud().unwrap();
        assert_eq!(balance_constant(&cloud).unwrap(), Rat::one());
    }

    #[test]
    fn unbalanced_cloud_reports_the_doubled_ratio() {
        // two blocks, two points each, constant cross distance 1/2, then one
        // cross pair doubled
        let b0 = Cnf::zero();
        let b1 = Cnf::nat(1);
        let mk = |b: &Cnf| SmirnovPoint::block(b.clone(), cube_point(0, &[]));
        let points = vec![mk(&b0), mk(&b0), mk(&b1), mk(&b1)];
        let n = points.len();
        let mut cloud = PointCloud {
            labels: (0..n).map(|i| format!("p{i}")).collect(),
            groups: points
                .iter()
                .map(|p| match p {
                    SmirnovPoint::Block { block, .. } => GroupTag::Block(block.clone()),
                    _ => GroupTag::Whole,
                })
                .collect(),
            matrix: vec![Rat::zero(); n * n],
            n,
        };
        for i in 0..2 {
            for j in 2..4 {
                cloud.set_dist(i, j, rat(1, 2));
            }
        }
        cloud.set_dist(0, 1, rat(1, 8));
        cloud.set_dist(2, 3, rat(1, 8));
        assert_eq!(balance_constant(&cloud).unwrap(), Rat::one());
        cloud.set_dist(0, 2, rat(1, 1));
        assert_eq!(balance_constant(&cloud).unwrap(), rat(2, 1));
    }

    #[test]
    fn non_limit_clouds_are_refused() {
        let space = TruncatedSpace::build(&Cnf::nat(2), &trunc(1, 2, 100)).unwrap();
        let cloud = space.cloud().unwrap();
        assert!(matches!(balance_constant(&cloud), Err(LabError::NonLimit)));
    }

    #[test]
    fn refinement_never_breaks_certification() {
        for q in [2, 4, 8] {
            let space = TruncatedSpace::build(&Cnf::nat(2), &trunc(1, q, 300)).unwrap();
            let report = check_metric_axioms(&space.cloud().unwrap(), 300).unwrap();
            assert!(report.all_hold(), "grid 1/{q}");
        }
    }
}
