//! Seeded randomized law suite for the ordinal layer.
//!
//! Samples Cantor-normal-form ordinals with exponents below `w^5` and
//! coefficients at most 9, then checks the algebraic identities the bound
//! calculus leans on. Deterministic for a fixed seed; the CLI exposes it as
//! `check-ordinals`.

use crate::ordinal::{Cnf, Ordinal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct LawConfig {
    pub cases: u32,
    pub seed: u64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            cases: 10_000,
            seed: 0x0D15_EA5E,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LawOutcome {
    pub name: &'static str,
    pub cases: u32,
    pub failures: u32,
    pub first_failure: Option<String>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// The six core laws plus two extra sanity laws, in a fixed order.
pub fn law_names() -> &'static [&'static str] {
    &[
        "add_associative",
        "sub_left_roundtrip",
        "decompose_roundtrip",
        "limit_subtraction_stays_limit",
        "indecomposable_tail_unique",
        "indecomposable_absorbs_sums",
        "add_right_monotone",
        "compare_total_order",
    ]
}

pub fn run_all(config: &LawConfig) -> Vec<LawOutcome> {
    law_names()
        .iter()
        .map(|name| run_law(name, config))
        .collect()
}

pub fn run_law(name: &str, config: &LawConfig) -> LawOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ hash_name(name));
    let mut outcome = LawOutcome {
        name: law_names()
            .iter()
            .find(|n| **n == name)
            .expect("unknown law"),
        cases: config.cases,
        failures: 0,
        first_failure: None,
    };
    for _ in 0..config.cases {
        if let Err(witness) = run_case(name, &mut rng) {
            outcome.failures += 1;
            outcome.first_failure.get_or_insert(witness);
        }
    }
    outcome
}

fn hash_name(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x1000_0000_01b3)
    })
}

fn run_case(name: &str, rng: &mut ChaCha8Rng) -> Result<(), String> {
    match name {
        "add_associative" => {
            let (a, b, c) = (sample(rng), sample(rng), sample(rng));
            let left = a.add(&b).add(&c);
            let right = a.add(&b.add(&c));
            check(left == right, || {
                format!("({a} + {b}) + {c} = {left} but {a} + ({b} + {c}) = {right}")
            })
        }
        "sub_left_roundtrip" => {
            let (x, y) = (sample(rng), sample(rng));
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            let gamma = hi.sub_left(&lo).map_err(|e| format!("{hi} - {lo}: {e}"))?;
            let back = lo.add(&gamma);
            check(back == hi, || {
                format!("{lo} + ({hi} - {lo} = {gamma}) = {back}, expected {hi}")
            })
        }
        "decompose_roundtrip" => {
            let a = sample(rng);
            let limit = a.limit_part();
            let finite = a.finite_part();
            let back = limit.add(&Cnf::nat(finite));
            check(back == a && limit.finite_part() == 0, || {
                format!("{a} decomposed into ({limit}, {finite}) rebuilt as {back}")
            })
        }
        "limit_subtraction_stays_limit" => {
            // lim(a) - b = lim(lim(a) - b) for b <= lim(a)
            let limit = sample_limit(rng);
            let b = sample_at_most(rng, &limit);
            let gamma = limit.sub_left(&b).map_err(|e| format!("{limit} - {b}: {e}"))?;
            check(gamma == gamma.limit_part(), || {
                format!("{limit} - {b} = {gamma}, which has finite part {}", gamma.finite_part())
            })
        }
        "indecomposable_tail_unique" => {
            // with L - a indecomposable and L - b a different value for b < a,
            // L - b cannot be indecomposable as well
            let limit = sample_limit(rng);
            let last = limit.terms().last().expect("limit is nonzero").clone();
            let mut reduced: Vec<_> = limit.terms()[..limit.terms().len() - 1].to_vec();
            if last.coefficient > 1 {
                reduced.push(crate::ordinal::CnfTerm {
                    exponent: last.exponent.clone(),
                    coefficient: last.coefficient - 1,
                });
            }
            let alpha = reduced
                .into_iter()
                .fold(Cnf::zero(), |acc, t| {
                    acc.add(&Cnf::power_times(t.exponent, t.coefficient).expect("coeff >= 1"))
                });
            let head = limit.sub_left(&alpha).expect("alpha <= limit");
            let head_ord = Ordinal::Small(head.clone());
            if head_ord.is_indecomposable() != Ok(true) {
                return Err(format!("construction broke: {limit} - {alpha} = {head}"));
            }
            if alpha.is_zero() {
                return Ok(());
            }
            let beta = sample_below(rng, &alpha);
            let other = limit.sub_left(&beta).expect("beta < alpha <= limit");
            if other == head {
                return Ok(());
            }
            let indec = Ordinal::Small(other.clone())
                .is_indecomposable()
                .map_err(|e| format!("{other}: {e}"))?;
            check(!indec, || {
                format!("{limit} - {beta} = {other} is indecomposable alongside {head}")
            })
        }
        "indecomposable_absorbs_sums" => {
            let exponent = sample_exponent(rng);
            let a = Cnf::omega_power(exponent);
            if Ordinal::Small(a.clone()).is_indecomposable() != Ok(true) {
                return Err(format!("{a} should be indecomposable"));
            }
            if a.as_nat() == Some(1) {
                return Ok(()); // only 0 lies below 1, and 0 + 0 < 1
            }
            let b = sample_below(rng, &a);
            let c = sample_below(rng, &a);
            let sum = b.add(&c);
            check(sum < a, || format!("{b} + {c} = {sum} is not below {a}"))
        }
        "add_right_monotone" => {
            let a = sample(rng);
            let b = sample(rng);
            let c = sample(rng);
            let (lo, hi) = if b <= c { (b, c) } else { (c, b) };
            if lo == hi {
                return Ok(());
            }
            let left = a.add(&lo);
            let right = a.add(&hi);
            check(left < right, || {
                format!("{a} + {lo} = {left} not below {a} + {hi} = {right}")
            })
        }
        "compare_total_order" => {
            let (a, b, c) = (sample(rng), sample(rng), sample(rng));
            let antisymmetric = !(a < b && b < a);
            let transitive = !(a <= b && b <= c) || a <= c;
            let connected = a < b || b < a || a == b;
            check(antisymmetric && transitive && connected, || {
                format!("order axioms failed on {a}, {b}, {c}")
            })
        }
        other => panic!("unknown law {other}"),
    }
}

fn check(ok: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

// ---------------------------------------------------------------------------
// sampling: CNF ordinals with exponents below w^5, coefficients <= 9
// ---------------------------------------------------------------------------

fn coeff(rng: &mut ChaCha8Rng) -> u64 {
    rng.gen_range(1..=9)
}

/// Exponent domain: ordinals below `w^5`, i.e. polynomials in `w` of degree
/// at most 4 with coefficients at most 9.
fn sample_exponent(rng: &mut ChaCha8Rng) -> Cnf {
    let terms = rng.gen_range(0..=3usize);
    let mut degrees: Vec<u64> = (0..terms).map(|_| rng.gen_range(0..5u64)).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    degrees.dedup();
    degrees.into_iter().fold(Cnf::zero(), |acc, d| {
        acc.add(&Cnf::power_times(Cnf::nat(d), coeff(rng)).expect("coeff >= 1"))
    })
}

/// Main domain: up to four CNF terms with exponents drawn from the
/// exponent domain.
fn sample(rng: &mut ChaCha8Rng) -> Cnf {
    let terms = rng.gen_range(0..=4usize);
    let mut exponents: Vec<Cnf> = (0..terms).map(|_| sample_exponent(rng)).collect();
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    exponents.dedup();
    exponents.into_iter().fold(Cnf::zero(), |acc, e| {
        acc.add(&Cnf::power_times(e, coeff(rng)).expect("coeff >= 1"))
    })
}

fn sample_limit(rng: &mut ChaCha8Rng) -> Cnf {
    for _ in 0..64 {
        let candidate = sample(rng).limit_part();
        if !candidate.is_zero() {
            return candidate;
        }
    }
    // fall back to a plain multiple of w
    Cnf::power_times(Cnf::nat(1), coeff(rng)).expect("coeff >= 1")
}

/// Uniform-ish ordinal strictly below a nonzero bound: either strictly
/// dominated by the leading term or a prefix with a reduced tail.
fn sample_below(rng: &mut ChaCha8Rng, bound: &Cnf) -> Cnf {
    debug_assert!(!bound.is_zero());
    if let Some(n) = bound.as_nat() {
        return Cnf::nat(rng.gen_range(0..n));
    }
    let terms = bound.terms();
    if rng.gen_bool(0.5) {
        // strictly below the leading power
        return junk_below_exponent(rng, &terms[0].exponent);
    }
    // copy a prefix, shrink at position i, pad with smaller exponents
    let i = rng.gen_range(0..terms.len());
    let mut acc = Cnf::zero();
    for t in &terms[..i] {
        acc = acc.add(&Cnf::power_times(t.exponent.clone(), t.coefficient).expect("coeff"));
    }
    let t = &terms[i];
    if t.coefficient > 1 && rng.gen_bool(0.7) {
        let c = rng.gen_range(1..t.coefficient);
        acc = acc.add(&Cnf::power_times(t.exponent.clone(), c).expect("coeff"));
    }
    acc.add(&junk_below_exponent(rng, &t.exponent))
}

/// Any ordinal whose leading exponent is strictly below `exponent`
/// (0 when `exponent` is 0).
fn junk_below_exponent(rng: &mut ChaCha8Rng, exponent: &Cnf) -> Cnf {
    if exponent.is_zero() {
        return Cnf::zero();
    }
    let pieces = rng.gen_range(0..=2usize);
    let mut exponents: Vec<Cnf> = (0..pieces).map(|_| sample_below(rng, exponent)).collect();
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    exponents.dedup();
    exponents.into_iter().fold(Cnf::zero(), |acc, e| {
        acc.add(&Cnf::power_times(e, coeff(rng)).expect("coeff >= 1"))
    })
}

fn sample_at_most(rng: &mut ChaCha8Rng, bound: &Cnf) -> Cnf {
    if bound.is_zero() || rng.gen_bool(0.1) {
        return bound.clone();
    }
    sample_below(rng, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_laws_pass_at_small_scale() {
        let config = LawConfig {
            cases: 500,
            seed: 7,
        };
        for outcome in run_all(&config) {
            assert!(
                outcome.passed(),
                "{} failed: {:?}",
                outcome.name,
                outcome.first_failure
            );
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let config = LawConfig { cases: 50, seed: 42 };
        let a = run_all(&config);
        let b = run_all(&config);
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.failures, y.failures);
            assert_eq!(x.first_failure, y.first_failure);
        }
    }

    #[test]
    fn samples_stay_in_domain() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w5 = Cnf::omega_power(Cnf::nat(5));
        for _ in 0..2000 {
            let x = sample(&mut rng);
            for t in x.terms() {
                assert!(t.exponent < w5, "exponent {} not below w^5", t.exponent);
                assert!((1..=9).contains(&t.coefficient));
            }
            if !x.is_zero() {
                let below = sample_below(&mut rng, &x);
                assert!(below < x, "{below} not below {x}");
            }
        }
    }
}
