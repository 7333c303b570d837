//! Property tests for the bound calculus: soundness of the interval lattice,
//! subspace monotonicity, widening under rule removal, and the gates.

use num_bigint::BigInt;
use proptest::prelude::*;
use tdim_core::space::{
    evaluate, evaluate_with, excision_upper, naive_sum, DimValue, Rat, RuleSet, SpaceExpr,
};
use tdim_core::{HdClass, Ordinal};

fn small_ordinal() -> impl Strategy<Value = Ordinal> {
    prop::collection::vec((0u64..4, 1u64..=5), 0..3).prop_map(|ts| {
        let terms: Vec<(Ordinal, u64)> =
            ts.into_iter().map(|(d, c)| (Ordinal::nat(d), c)).collect();
        Ordinal::from_terms(&terms).expect("positive coefficients")
    })
}

fn tower_ordinal() -> impl Strategy<Value = Ordinal> {
    prop_oneof![
        3 => small_ordinal(),
        1 => (1u64..3, small_ordinal()).prop_map(|(idx, tail)| {
            Ordinal::initial(&Ordinal::nat(idx)).unwrap().checked_add(&tail).unwrap()
        }),
    ]
}

fn leaf() -> impl Strategy<Value = SpaceExpr> {
    prop_oneof![
        Just(SpaceExpr::Empty),
        Just(SpaceExpr::Point),
        (0u32..5).prop_map(SpaceExpr::Cube),
        (1u64..8).prop_map(|n| SpaceExpr::FatCantor(Rat::new(BigInt::from(n), BigInt::from(8)))),
        tower_ordinal().prop_map(SpaceExpr::Smirnov),
        tower_ordinal().prop_map(SpaceExpr::SmirnovCantor),
        tower_ordinal().prop_map(SpaceExpr::DenseSubset),
    ]
}

fn expr_strategy() -> impl Strategy<Value = SpaceExpr> {
    leaf().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SpaceExpr::product(a, b)),
            prop::collection::vec(inner.clone(), 1..4).prop_map(SpaceExpr::ClosedUnion),
            (prop::collection::vec(inner.clone(), 1..3), any::<bool>()).prop_map(
                |(parts, unbounded)| SpaceExpr::LocallyFiniteClosedUnion { parts, unbounded }
            ),
            inner.clone().prop_map(SpaceExpr::augment),
            (inner.clone(), inner.clone()).prop_map(|(c, f)| SpaceExpr::excision(c, f)),
            (prop::collection::vec(inner.clone(), 1..3), any::<bool>())
                .prop_map(|(parts, repeated)| SpaceExpr::AlexandrovSum { parts, repeated }),
            inner.clone().prop_map(SpaceExpr::subspace),
        ]
    })
}

const REMOVABLE_RULES: &[&str] = &[
    "countable_augment_d",
    "countable_augment_tdhd",
    "compact_union_max_tdhd",
    "compact_lf_sum_tdhd",
    "closed_union_max_d",
    "locally_finite_sum_d",
    "subspace_monotone",
    "product_embeds",
    "dense_subset_bounds",
    "dense_subset_tdhd",
    "augment_widen",
    "excision_d",
    "excision_tdhd",
    "alexandrov_d",
    "alexandrov_tdhd",
    "cantor_tower_cap",
    "weight_cap",
    "hd_floor",
    "tdhd_from_d",
];

proptest! {
    /// Declaration-free trees always evaluate, and the intervals are sane.
    #[test]
    fn soundness_sandwich(e in expr_strategy()) {
        let eval = evaluate(&e).expect("declaration-free trees evaluate");
        prop_assert!(eval.d.lower <= eval.d.upper);
        prop_assert!(eval.tdhd.lower <= eval.tdhd.upper);
        if eval.d.upper_strict {
            prop_assert!(eval.d.lower < eval.d.upper);
        }
        if eval.tdhd.upper_strict {
            prop_assert!(eval.tdhd.lower < eval.tdhd.upper);
        }
        // the variant dominates D, so its proved lower bound does too
        prop_assert!(eval.tdhd.lower >= eval.d.lower);
    }

    /// Subspace bounds never exceed the parent bounds.
    #[test]
    fn subspace_upper_monotone(e in expr_strategy()) {
        let parent = evaluate(&e).unwrap();
        let sub = evaluate(&SpaceExpr::subspace(e)).unwrap();
        prop_assert!(sub.d.upper <= parent.d.upper);
        prop_assert!(sub.tdhd.upper <= parent.tdhd.upper);
    }

    /// Removing non-atom rules widens intervals and never crosses them.
    #[test]
    fn rule_removal_only_widens(e in expr_strategy(), mask in prop::collection::vec(any::<bool>(), REMOVABLE_RULES.len())) {
        let full = evaluate(&e).unwrap();
        let mut rules = RuleSet::all();
        for (rule, removed) in REMOVABLE_RULES.iter().zip(mask) {
            if removed {
                rules = rules.without(rule);
            }
        }
        let partial = evaluate_with(&e, &rules).unwrap();
        prop_assert!(partial.d.lower <= full.d.lower);
        prop_assert!(partial.d.upper >= full.d.upper);
        prop_assert!(partial.tdhd.lower <= full.tdhd.lower);
        prop_assert!(partial.tdhd.upper >= full.tdhd.upper);
        prop_assert!(partial.d.lower <= partial.d.upper);
        prop_assert!(partial.tdhd.lower <= partial.tdhd.upper);
    }

    /// The cardinality cap only ever fires at a node with a proved
    /// D(X) < Omega. Traces accumulate child applications, so the check is
    /// per node, identified by the trace subject.
    #[test]
    fn weight_cap_gate_holds(e in expr_strategy()) {
        let eval = evaluate(&e).unwrap();
        if eval.d.upper == DimValue::Omega {
            let root = tdim_core::dsl::pretty(&e);
            prop_assert!(eval
                .tdhd
                .trace
                .iter()
                .all(|r| r.rule != "weight_cap" || r.subject != root));
        }
    }

    /// A proved variant lower bound of at least w never coexists with a
    /// finite Hausdorff class.
    #[test]
    fn hd_class_consistent_with_variant(e in expr_strategy()) {
        let eval = evaluate(&e).unwrap();
        if eval.tdhd.lower >= DimValue::Ordinal(Ordinal::omega()) {
            prop_assert!(matches!(eval.hd, HdClass::Infinite));
        }
    }

    /// The sharp excision form never exceeds the naive ordinal sum, and is
    /// strictly better when the complement is infinite with positive finite
    /// part and the closed side is finite positive.
    #[test]
    fn excision_form_tightness(a in tower_ordinal(), b in tower_ordinal()) {
        let av = DimValue::Ordinal(a.clone());
        let bv = DimValue::Ordinal(b.clone());
        let (Some(sharp), Some(naive)) = (excision_upper(&av, &bv), naive_sum(&av, &bv)) else {
            return Ok(()); // both routes refuse only outside the representation
        };
        prop_assert!(sharp <= naive);
        let infinite = a >= Ordinal::omega();
        let n = a.finite_part();
        let b_finite = b.as_nat();
        if infinite && n >= 1 && matches!(b_finite, Some(k) if k >= 1) {
            prop_assert!(sharp < naive, "{sharp} not sharper than {naive}");
        }
    }

    /// Evaluation is deterministic: same tree, same result.
    #[test]
    fn evaluation_is_deterministic(e in expr_strategy()) {
        let one = evaluate(&e).unwrap();
        let two = evaluate(&e).unwrap();
        prop_assert_eq!(one, two);
    }
}
