//! Property tests for the ordinal layer, checked against an independent
//! oracle.
//!
//! The oracle evaluates ordinal addition below `w^3` straight from the
//! recursive definition: `a + (b+1) = (a+b) + 1`, and at limits the value is
//! the supremum along the fundamental sequence, detected by evaluating two
//! consecutive elements. It shares no code with the CNF merge in the crate.

use proptest::prelude::*;
use tdim_core::ordinal::{Ordinal, OrdinalError};

// ---------------------------------------------------------------------------
// oracle: ordinals below w^3 as (c2, c1, c0) = w^2*c2 + w*c1 + c0
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Tri {
    c2: u64,
    c1: u64,
    c0: u64,
}

const ZERO: Tri = Tri { c2: 0, c1: 0, c0: 0 };

// Where along a fundamental sequence the sup pattern is read off. Addition
// treats the growing coordinate uniformly for every n >= 1, and each limit
// step evaluates the sequence twice, so a small probe keeps the recursion
// flat without changing the detected supremum.
const PROBE: u64 = 4;

fn succ(t: Tri) -> Tri {
    Tri { c0: t.c0 + 1, ..t }
}

fn pred(t: Tri) -> Tri {
    assert!(t.c0 > 0);
    Tri { c0: t.c0 - 1, ..t }
}

/// n-th element of the fundamental sequence of a limit value.
fn fund(t: Tri, n: u64) -> Tri {
    assert_eq!(t.c0, 0);
    if t.c1 > 0 {
        Tri { c2: t.c2, c1: t.c1 - 1, c0: n }
    } else {
        assert!(t.c2 > 0);
        Tri { c2: t.c2 - 1, c1: n, c0: 0 }
    }
}

fn oracle_add(a: Tri, b: Tri) -> Tri {
    if b == ZERO {
        return a;
    }
    if b.c0 > 0 {
        return succ(oracle_add(a, pred(b)));
    }
    // limit: sup of a + b_n, read off from two consecutive elements
    let v1 = oracle_add(a, fund(b, PROBE));
    let v2 = oracle_add(a, fund(b, PROBE + 1));
    if v2.c2 == v1.c2 && v2.c1 == v1.c1 && v2.c0 == v1.c0 + 1 {
        Tri { c2: v1.c2, c1: v1.c1 + 1, c0: 0 }
    } else if v2.c2 == v1.c2 && v2.c1 == v1.c1 + 1 {
        Tri { c2: v1.c2 + 1, c1: 0, c0: 0 }
    } else {
        panic!("unexpected growth pattern: {v1:?} then {v2:?}");
    }
}

fn tri_to_ordinal(t: Tri) -> Ordinal {
    let mut terms = Vec::new();
    if t.c2 > 0 {
        terms.push((Ordinal::nat(2), t.c2));
    }
    if t.c1 > 0 {
        terms.push((Ordinal::nat(1), t.c1));
    }
    if t.c0 > 0 {
        terms.push((Ordinal::zero(), t.c0));
    }
    Ordinal::from_terms(&terms).expect("positive coefficients")
}

fn ord(s: &str) -> Ordinal {
    s.parse().unwrap()
}

#[test]
fn oracle_pins_the_stated_examples() {
    // w+2 plus w*2+1 is w*3+1
    let sum = oracle_add(Tri { c2: 0, c1: 1, c0: 2 }, Tri { c2: 0, c1: 2, c0: 1 });
    assert_eq!(sum, Tri { c2: 0, c1: 3, c0: 1 });
    assert_eq!(tri_to_ordinal(sum), ord("w*3 + 1"));
    assert_eq!(ord("w+2").checked_add(&ord("w*2+1")).unwrap(), ord("w*3 + 1"));

    // the formal sum w*1 + w*2 normalizes to w*3
    let sum = oracle_add(Tri { c2: 0, c1: 1, c0: 0 }, Tri { c2: 0, c1: 2, c0: 0 });
    assert_eq!(tri_to_ordinal(sum), ord("w*3"));
    assert_eq!(
        Ordinal::from_terms(&[(Ordinal::nat(1), 1), (Ordinal::nat(1), 2)]).unwrap(),
        ord("w*3")
    );

    // finite left addends are absorbed: 5 + w^2 = w^2
    let sum = oracle_add(Tri { c2: 0, c1: 0, c0: 5 }, Tri { c2: 1, c1: 0, c0: 0 });
    assert_eq!(tri_to_ordinal(sum), ord("w^2"));
}

fn tri_strategy() -> impl Strategy<Value = Tri> {
    (0u64..4, 0u64..4, 0u64..6).prop_map(|(c2, c1, c0)| Tri { c2, c1, c0 })
}

proptest! {
    #[test]
    fn addition_matches_the_recursive_oracle(a in tri_strategy(), b in tri_strategy()) {
        let expected = tri_to_ordinal(oracle_add(a, b));
        let actual = tri_to_ordinal(a).checked_add(&tri_to_ordinal(b)).unwrap();
        prop_assert_eq!(actual, expected);
    }
}

// ---------------------------------------------------------------------------
// algebraic laws over the full sampling domain
// ---------------------------------------------------------------------------

fn exponent_strategy() -> impl Strategy<Value = Ordinal> {
    prop::collection::vec((0u64..5, 1u64..=9), 0..3).prop_map(|ts| {
        let terms: Vec<(Ordinal, u64)> =
            ts.into_iter().map(|(d, c)| (Ordinal::nat(d), c)).collect();
        Ordinal::from_terms(&terms).expect("positive coefficients")
    })
}

fn ordinal_strategy() -> impl Strategy<Value = Ordinal> {
    prop::collection::vec((exponent_strategy(), 1u64..=9), 0..4)
        .prop_map(|ts| Ordinal::from_terms(&ts).expect("positive coefficients"))
}

/// Ordinals of either tier.
fn two_tier_strategy() -> impl Strategy<Value = Ordinal> {
    prop_oneof![
        4 => ordinal_strategy(),
        1 => (1u64..4, ordinal_strategy()).prop_map(|(idx, tail)| {
            Ordinal::initial(&Ordinal::nat(idx))
                .unwrap()
                .checked_add(&tail)
                .unwrap()
        }),
    ]
}

proptest! {
    #[test]
    fn add_is_associative(a in ordinal_strategy(), b in ordinal_strategy(), c in ordinal_strategy()) {
        let left = a.checked_add(&b).unwrap().checked_add(&c).unwrap();
        let right = a.checked_add(&b.checked_add(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sub_left_round_trips(a in two_tier_strategy(), b in two_tier_strategy()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match hi.sub_left(&lo) {
            Ok(gamma) => prop_assert_eq!(lo.checked_add(&gamma).unwrap(), hi),
            Err(e) => prop_assert_eq!(e, OrdinalError::Underflow, "unexpected refusal"),
        }
    }

    #[test]
    fn decomposition_round_trips(a in two_tier_strategy()) {
        let d = a.decompose();
        prop_assert_eq!(d.limit_part.finite_part(), 0);
        let back = d.limit_part.checked_add(&Ordinal::nat(d.finite_part)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn limit_minus_anything_is_limit_or_zero(a in ordinal_strategy(), b in ordinal_strategy()) {
        let limit = a.limit_part();
        prop_assume!(b <= limit);
        let gamma = limit.sub_left(&b).unwrap();
        prop_assert_eq!(gamma.clone().limit_part(), gamma);
    }

    #[test]
    fn add_monotone_on_the_right(a in ordinal_strategy(), b in ordinal_strategy(), c in ordinal_strategy()) {
        prop_assume!(b < c);
        prop_assert!(a.checked_add(&b).unwrap() < a.checked_add(&c).unwrap());
    }

    #[test]
    fn indecomposables_absorb_smaller_sums(e in exponent_strategy(), b in ordinal_strategy(), c in ordinal_strategy()) {
        let a = Ordinal::omega_power(&e).unwrap();
        prop_assert_eq!(a.is_indecomposable(), Ok(true));
        prop_assume!(b < a && c < a);
        prop_assert!(b.checked_add(&c).unwrap() < a);
    }

    #[test]
    fn display_parse_round_trip(a in two_tier_strategy()) {
        let text = a.to_string();
        let back: Ordinal = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }
}
