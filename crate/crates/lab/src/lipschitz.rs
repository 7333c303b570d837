//! Sampled Lipschitz maps from the Cantor companions onto the Smirnov
//! levels, and exact ratio estimation over the sample.

use crate::cantor::{default_schedule, fat_cantor, rat, CantorSet, Rat};
use crate::smirnov::{smirnov_dist, SmirnovPoint};
use crate::LabError;
use num_traits::{One, Zero};
use tdim_core::Cnf;

/// Which map to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiShape {
    /// Coordinatewise map from the depth-d Cantor power onto the cell.
    Finite(u32),
    /// Blockwise glued map on the first blocks of the limit level, fixing
    /// the compactification point.
    OmegaTruncation { blocks: usize },
}

/// A sampled graph of a map between two truncations at the same level.
#[derive(Debug, Clone)]
pub struct MapSample {
    pub shape: Cnf,
    pub pairs: Vec<(SmirnovPoint, SmirnovPoint)>,
    /// Image covers every grid multiple in each sampled coordinate.
    pub surjective_on_grid: bool,
    /// The grid the image was checked against, per block where applicable.
    pub grids: Vec<Rat>,
    /// Per-level Lipschitz bound claimed by the construction:
    /// max of 2 and the inverse measures of the Cantor sets used.
    pub claimed_bound: Rat,
}

/// Builds the sampled map for the requested shape. Sources are interval
/// endpoints of the depth-d symmetric fat Cantor set (depth reduced until
/// the sample fits the budget); images apply the normalized measure map
/// coordinatewise, so the image grid is exactly the dyadic grid `1/2^d`.
pub fn build_phi(
    shape: PhiShape,
    cantor_depth: usize,
    budget: usize,
) -> Result<MapSample, LabError> {
    match shape {
        PhiShape::Finite(k) => {
            let (pairs, set, depth) = finite_sample(k, cantor_depth, budget)?;
            let grid = rat(1, 1i64 << depth.min(62));
            let surjective = check_grid_cover(&pairs, k, &grid);
            let bound = claimed(&[set]);
            Ok(MapSample {
                shape: Cnf::nat(u64::from(k)),
                pairs,
                surjective_on_grid: surjective,
                grids: vec![grid],
                claimed_bound: bound,
            })
        }
        PhiShape::OmegaTruncation { blocks } => {
            if blocks < 2 {
                return Err(LabError::Degenerate("a glued map needs at least two blocks"));
            }
            let per_block = ((budget.saturating_sub(1)) / blocks).max(1);
            let mut pairs = vec![(SmirnovPoint::Omega, SmirnovPoint::Omega)];
            let mut grids = Vec::new();
            let mut sets = Vec::new();
            let mut surjective = true;
            for j in 0..blocks {
                let block = Cnf::nat(j as u64);
                let (block_pairs, set, depth) =
                    finite_sample(j as u32, cantor_depth, per_block)?;
                let grid = rat(1, 1i64 << depth.min(62));
                surjective &= check_grid_cover(&block_pairs, j as u32, &grid);
                grids.push(grid);
                sets.push(set);
                pairs.extend(block_pairs.into_iter().map(|(s, t)| {
                    (
                        SmirnovPoint::block(block.clone(), s),
                        SmirnovPoint::block(block.clone(), t),
                    )
                }));
            }
            Ok(MapSample {
                shape: Cnf::omega(),
                pairs,
                surjective_on_grid: surjective,
                grids,
                claimed_bound: claimed(&sets),
            })
        }
    }
}

/// `max{2, 1/measure}` over the Cantor sets involved; the measures stay
/// above 1/2, so this is always exactly 2.
fn claimed(sets: &[CantorSet]) -> Rat {
    let mut bound = rat(2, 1);
    for set in sets {
        let inverse = Rat::one() / set.total_measure();
        if inverse > bound {
            bound = inverse;
        }
    }
    bound
}

/// Endpoint tuples of the k-fold Cantor power, mapped coordinatewise.
/// Reduces the depth until `(2^(d+1))^k` fits the budget.
fn finite_sample(
    k: u32,
    cantor_depth: usize,
    budget: usize,
) -> Result<(Vec<(SmirnovPoint, SmirnovPoint)>, CantorSet, usize), LabError> {
    let mut depth = cantor_depth;
    loop {
        let per_axis = 2usize
            .checked_pow(depth as u32 + 1)
            .ok_or(LabError::Degenerate("depth too large"))?;
        let total = per_axis.checked_pow(k);
        if total.is_some_and(|t| t <= budget) || depth == 0 {
            break;
        }
        depth -= 1;
    }
    let set = fat_cantor(depth, &default_schedule(depth))?;
    let endpoints = set.endpoints();
    let images: Vec<Rat> = endpoints
        .iter()
        .map(|t| set.phi(t))
        .collect::<Result<_, _>>()?;
    let mut pairs = vec![(SmirnovPoint::Origin, SmirnovPoint::Origin)];
    for _ in 0..k {
        pairs = pairs
            .into_iter()
            .flat_map(|(s, t)| {
                endpoints.iter().zip(images.iter()).map(move |(e, i)| {
                    (
                        SmirnovPoint::Pair {
                            inner: Box::new(s.clone()),
                            t: e.clone(),
                        },
                        SmirnovPoint::Pair {
                            inner: Box::new(t.clone()),
                            t: i.clone(),
                        },
                    )
                })
            })
            .collect();
    }
    Ok((pairs, set, depth))
}

/// Verifies that every multiple of the grid appears in each image
/// coordinate of the sample.
fn check_grid_cover(pairs: &[(SmirnovPoint, SmirnovPoint)], k: u32, grid: &Rat) -> bool {
    if k == 0 {
        return true;
    }
    let mut coords: Vec<Vec<Rat>> = vec![Vec::new(); k as usize];
    for (_, image) in pairs {
        let mut point = image;
        for level in (0..k as usize).rev() {
            match point {
                SmirnovPoint::Pair { inner, t } => {
                    coords[level].push(t.clone());
                    point = inner;
                }
                _ => return false,
            }
        }
    }
    let steps: u64 = match (Rat::one() / grid).to_integer().try_into() {
        Ok(q) => q,
        Err(_) => return false,
    };
    coords.iter().all(|values| {
        (0..=steps).all(|j| {
            let target = rat(j as i64, 1) * grid;
            values.contains(&target)
        })
    })
}

/// Exact supremum of image-distance over source-distance across all sampled
/// pairs, with the claimed bound checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LipschitzReport {
    pub sup_ratio: Rat,
    pub pair_count: u64,
    pub claimed_bound: Rat,
    pub violated: bool,
}

pub fn lipschitz_estimate(sample: &MapSample) -> Result<LipschitzReport, LabError> {
    lipschitz_estimate_with_bound(sample, sample.claimed_bound.clone())
}

pub fn lipschitz_estimate_with_bound(
    sample: &MapSample,
    claimed_bound: Rat,
) -> Result<LipschitzReport, LabError> {
    if sample.pairs.len() < 2 {
        return Err(LabError::Degenerate("need at least two sample pairs"));
    }
    let mut sup = Rat::zero();
    let mut count: u64 = 0;
    for i in 0..sample.pairs.len() {
        for j in (i + 1)..sample.pairs.len() {
            let (si, ti) = &sample.pairs[i];
            let (sj, tj) = &sample.pairs[j];
            let ds = smirnov_dist(&sample.shape, si, sj)?;
            let dt = smirnov_dist(&sample.shape, ti, tj)?;
            if ds.is_zero() {
                if dt.is_zero() {
                    continue;
                }
                return Err(LabError::NotAFunction(format!(
                    "duplicate source {si} maps to both {ti} and {tj}"
                )));
            }
            count += 1;
            let ratio = dt / ds;
            if ratio > sup {
                sup = ratio;
            }
        }
    }
    let violated = sup > claimed_bound;
    Ok(LipschitzReport {
        sup_ratio: sup,
        pair_count: count,
        claimed_bound,
        violated,
    })
}

/// The identity sample on a list of points: the trivial Lipschitz-1 map.
pub fn identity_sample(shape: &Cnf, points: &[SmirnovPoint]) -> MapSample {
    MapSample {
        shape: shape.clone(),
        pairs: points.iter().map(|p| (p.clone(), p.clone())).collect(),
        surjective_on_grid: true,
        grids: Vec::new(),
        claimed_bound: Rat::one(),
    }
}
