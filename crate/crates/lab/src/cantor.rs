//! Symmetric fat Cantor sets with exact measure bookkeeping, the normalized
//! measure map onto the interval, and exact box counts.

use crate::LabError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A finite-depth symmetric fat Cantor construction: a disjoint sorted list
/// of closed rational intervals in [0, 1] whose total length is tracked
/// exactly alongside everything removed so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorSet {
    depth: usize,
    intervals: Vec<(Rat, Rat)>,
    total_measure: Rat,
    removed: Rat,
}

/// Default removal schedule: step n removes the open middle piece of length
/// `4^-n` from each of the `2^(n-1)` intervals, so the depth-d measure is
/// `1/2 + 2^-(d+1)` and the limit measure is 1/2.
pub fn default_schedule(depth: usize) -> Vec<Rat> {
    (1..=depth as i64).map(|n| rat(1, 4i64.pow(n as u32))).collect()
}

/// Builds the set at the given depth; `schedule[n-1]` is the length removed
/// from each interval at step n.
pub fn fat_cantor(depth: usize, schedule: &[Rat]) -> Result<CantorSet, LabError> {
    if schedule.len() < depth {
        return Err(LabError::Schedule(format!(
            "schedule has {} steps but depth {depth} was requested",
            schedule.len()
        )));
    }
    let mut set = CantorSet {
        depth: 0,
        intervals: vec![(Rat::zero(), Rat::one())],
        total_measure: Rat::one(),
        removed: Rat::zero(),
    };
    for (step, gap) in schedule.iter().take(depth).enumerate() {
        if *gap <= Rat::zero() {
            return Err(LabError::Schedule("removal lengths must be positive".into()));
        }
        let mut next = Vec::with_capacity(set.intervals.len() * 2);
        for (a, b) in &set.intervals {
            let length = b - a;
            if *gap >= length {
                return Err(LabError::Schedule(format!(
                    "step {} removes {gap} from an interval of length {length}",
                    step + 1
                )));
            }
            let mid = (a + b) / rat(2, 1);
            let half_gap = gap / rat(2, 1);
            next.push((a.clone(), &mid - &half_gap));
            next.push((&mid + &half_gap, b.clone()));
        }
        let removed_now = gap * rat(1i64 << step, 1);
        set.intervals = next;
        set.total_measure -= &removed_now;
        set.removed += removed_now;
        set.depth = step + 1;
    }
    Ok(set)
}

impl CantorSet {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn intervals(&self) -> &[(Rat, Rat)] {
        &self.intervals
    }

    pub fn total_measure(&self) -> &Rat {
        &self.total_measure
    }

    /// Total removed length; `total_measure + removed = 1` at every depth.
    pub fn removed(&self) -> &Rat {
        &self.removed
    }

    pub fn min(&self) -> &Rat {
        &self.intervals.first().expect("nonempty").0
    }

    pub fn max(&self) -> &Rat {
        &self.intervals.last().expect("nonempty").1
    }

    pub fn contains(&self, t: &Rat) -> bool {
        self.intervals.iter().any(|(a, b)| a <= t && t <= b)
    }

    /// All interval endpoints, sorted.
    pub fn endpoints(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.intervals.len() * 2);
        for (a, b) in &self.intervals {
            out.push(a.clone());
            out.push(b.clone());
        }
        out
    }

    /// The normalized measure map: measure of the set up to `t`, divided by
    /// the total measure. Exact, nondecreasing, 0 at the minimum and 1 at
    /// the maximum.
    pub fn phi(&self, t: &Rat) -> Result<Rat, LabError> {
        if !self.contains(t) {
            return Err(LabError::OutsideSet(t.to_string()));
        }
        let mut acc = Rat::zero();
        for (a, b) in &self.intervals {
            if t > b {
                acc += b - a;
            } else if t >= a {
                acc += t - a;
                break;
            }
        }
        Ok(acc / &self.total_measure)
    }

    /// Number of grid cells of the given scale that meet the set. Cells are
    /// `[k*s, (k+1)*s)` for `k` up to the last cell, which absorbs the right
    /// endpoint, so the unit interval at scale `1/q` counts exactly `q`.
    pub fn box_count(&self, scale: &Rat) -> Result<u64, LabError> {
        if *scale <= Rat::zero() || *scale > Rat::one() {
            return Err(LabError::Degenerate("scales must lie in (0, 1]"));
        }
        let cells = (Rat::one() / scale).ceil().to_integer();
        let last = &cells - BigInt::one();
        let index = |t: &Rat| -> BigInt {
            let raw = (t / scale).floor().to_integer();
            raw.min(last.clone()).max(BigInt::zero())
        };
        let mut count: u64 = 0;
        let mut covered_up_to: Option<BigInt> = None;
        for (a, b) in &self.intervals {
            let lo = index(a);
            let hi = index(b);
            let start = match &covered_up_to {
                Some(done) if *done >= lo => done + 1,
                _ => lo,
            };
            if start <= hi {
                let span = (&hi - &start) + BigInt::one();
                count += span.to_u64().ok_or(LabError::Degenerate("box count overflow"))?;
                covered_up_to = Some(hi);
            }
        }
        Ok(count)
    }
}

/// Box counts of the `power`-fold product of the set: the product grid cell
/// meets the product exactly when every coordinate cell meets the base set.
pub fn product_box_counts(
    set: &CantorSet,
    power: u32,
    scales: &[Rat],
) -> Result<Vec<(Rat, u128)>, LabError> {
    if power == 0 || power > 6 {
        return Err(LabError::Degenerate("product power must be between 1 and 6"));
    }
    scales
        .iter()
        .map(|s| {
            let base = set.box_count(s)?;
            let count = u128::from(base)
                .checked_pow(power)
                .ok_or(LabError::Degenerate("box count overflow"))?;
            Ok((s.clone(), count))
        })
        .collect()
}

/// Least-squares slope of `log(count)` against `log(1/scale)`.
///
/// Needs at least three strictly decreasing scales.
pub fn box_dimension_estimate(counts: &[(Rat, u128)]) -> Result<f64, LabError> {
    if counts.len() < 3 {
        return Err(LabError::Degenerate("need at least three scales"));
    }
    for pair in counts.windows(2) {
        if pair[1].0 >= pair[0].0 {
            return Err(LabError::Degenerate("scales must strictly decrease"));
        }
    }
    let points: Vec<(f64, f64)> = counts
        .iter()
        .map(|(scale, count)| {
            let s = scale.to_f64().ok_or(LabError::Degenerate("scale out of f64 range"))?;
            if *count == 0 {
                return Err(LabError::Degenerate("zero box count"));
            }
            Ok(((1.0 / s).ln(), (*count as f64).ln()))
        })
        .collect::<Result<_, _>>()?;
    let n = points.len() as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mean_x) * (x - mean_x)).sum();
    if sxx == 0.0 {
        return Err(LabError::Degenerate("degenerate scale spread"));
    }
    Ok(sxy / sxx)
}
