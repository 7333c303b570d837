//! Parser/pretty-printer round trip over random grammar-representable trees.

use num_bigint::BigInt;
use proptest::prelude::*;
use tdim_core::dsl::{parse, pretty};
use tdim_core::space::{Declared, Rat, SpaceExpr};
use tdim_core::{Aleph, Ordinal};

fn ordinal() -> impl Strategy<Value = Ordinal> {
    let small = prop::collection::vec((0u64..4, 1u64..=9), 0..3).prop_map(|ts| {
        let terms: Vec<(Ordinal, u64)> =
            ts.into_iter().map(|(d, c)| (Ordinal::nat(d), c)).collect();
        Ordinal::from_terms(&terms).expect("positive coefficients")
    });
    (prop::option::of(1u64..4), small).prop_map(|(initial, tail)| match initial {
        None => tail,
        Some(idx) => Ordinal::initial(&Ordinal::nat(idx))
            .unwrap()
            .checked_add(&tail)
            .unwrap(),
    })
}

fn declared() -> impl Strategy<Value = Declared> {
    (
        any::<bool>(),
        any::<bool>(),
        prop::option::of(0u64..3),
        prop::option::of((0u64..5, 1u64..5)),
    )
        .prop_filter_map("at least one attribute", |(sep, cpt, weight, hd)| {
            let d = Declared {
                separable: sep.then_some(true),
                compact: cpt.then_some(true),
                weight: weight.map(|i| Aleph::new(Ordinal::nat(i))),
                hd: hd.map(|(n, q)| Rat::new(BigInt::from(n), BigInt::from(q))),
            };
            (!d.is_empty()).then_some(d)
        })
}

fn leaf() -> impl Strategy<Value = SpaceExpr> {
    prop_oneof![
        Just(SpaceExpr::Empty),
        Just(SpaceExpr::Point),
        (0u32..9).prop_map(SpaceExpr::Cube),
        (1u64..16).prop_map(|n| SpaceExpr::FatCantor(Rat::new(
            BigInt::from(n),
            BigInt::from(16)
        ))),
        ordinal().prop_map(SpaceExpr::Smirnov),
        ordinal().prop_map(SpaceExpr::SmirnovCantor),
        ordinal().prop_map(SpaceExpr::DenseSubset),
    ]
}

fn expr() -> impl Strategy<Value = SpaceExpr> {
    leaf().prop_recursive(6, 40, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SpaceExpr::product(a, b)),
            prop::collection::vec(inner.clone(), 1..4).prop_map(SpaceExpr::ClosedUnion),
            (prop::collection::vec(inner.clone(), 1..4), any::<bool>()).prop_map(
                |(parts, unbounded)| SpaceExpr::LocallyFiniteClosedUnion { parts, unbounded }
            ),
            inner.clone().prop_map(SpaceExpr::augment),
            (inner.clone(), inner.clone()).prop_map(|(c, f)| SpaceExpr::excision(c, f)),
            (prop::collection::vec(inner.clone(), 1..4), any::<bool>())
                .prop_map(|(parts, repeated)| SpaceExpr::AlexandrovSum { parts, repeated }),
            inner.clone().prop_map(SpaceExpr::subspace),
            (inner, declared()).prop_map(|(e, attrs)| e.with_attrs(attrs)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parse_pretty_round_trip(e in expr()) {
        let text = pretty(&e);
        let parsed = parse(&text)
            .unwrap_or_else(|err| panic!("pretty form {text:?} failed to parse: {err}"));
        prop_assert_eq!(parsed, e);
    }

    /// Identical input yields byte-identical canonical text.
    #[test]
    fn pretty_is_deterministic(e in expr()) {
        prop_assert_eq!(pretty(&e), pretty(&e));
    }
}
