use super::*;
use crate::dsl;

fn ev(input: &str) -> Evaluation {
    let expr = dsl::parse(input).unwrap_or_else(|e| panic!("parse {input}: {e}"));
    evaluate(&expr).unwrap_or_else(|e| panic!("evaluate {input}: {e}"))
}

fn ord(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn point_interval(b: &DimBound, v: &DimValue) -> bool {
    b.is_point() && b.lower == *v
}

#[test]
fn d_bound_examples() {
    let e = ev("S(w^2+3)");
    assert!(point_interval(&e.d, &DimValue::Ordinal(ord("w^2+3"))));

    let e = ev("cunion(S(w), I^4)");
    assert!(point_interval(&e.d, &DimValue::Ordinal(ord("w"))));

    let e = ev("empty");
    assert!(point_interval(&e.d, &DimValue::NegOne));
    assert!(point_interval(&e.tdhd, &DimValue::NegOne));

    // excision: lower from the parts, upper from the lim/fin form
    let e = ev("excise(S(w+3), I^5)");
    assert_eq!(e.d.lower, DimValue::Ordinal(ord("w+3")));
    assert_eq!(e.d.upper, DimValue::Ordinal(ord("w+5")));
    assert!(!e.d.upper_strict);

    let e = ev("aug(S(w+1))");
    assert!(point_interval(&e.d, &DimValue::Ordinal(ord("w+1"))));
}

#[test]
fn tdhd_bound_examples() {
    let e = ev("C(w)");
    assert_eq!(e.tdhd.lower, DimValue::Ordinal(ord("w")));
    assert_eq!(e.tdhd.upper, DimValue::Ordinal(ord("w_1")));
    assert!(e.tdhd.upper_strict);
    assert!(point_interval(&e.d, &DimValue::nat(0)));
    assert_eq!(e.hd, HdClass::Infinite);

    let e = ev("I^1 with {hd=1}");
    assert!(point_interval(&e.tdhd, &DimValue::nat(1)));

    let e = ev("point");
    assert!(point_interval(&e.tdhd, &DimValue::nat(0)));

    let e = ev("C(w_1 + w)");
    assert_eq!(e.tdhd.lower, DimValue::Ordinal(ord("w_1 + w")));
    assert_eq!(e.tdhd.upper, DimValue::Ordinal(ord("w_2")));
    assert!(!e.tdhd.upper_strict);
}

#[test]
fn attribute_examples() {
    let e = ev("S(w)");
    assert!(e.attrs.compact.is_true());
    assert!(e.attrs.separable.is_true());

    let e = ev("Dsub(w_1)");
    assert_eq!(e.attrs.weight, crate::ordinal::Aleph::new(Ordinal::nat(1)));

    let e = ev("point");
    assert!(e.attrs.compact.is_true());
    assert!(e.attrs.separable.is_true());
    assert_eq!(e.attrs.weight, crate::ordinal::Aleph::countable());

    let err = crate::space::evaluate(
        &dsl::parse("S(w_1) with {separable}").unwrap(),
    )
    .unwrap_err();
    assert!(matches!(err, SpaceError::DeclarationConflict(_)));
}

#[test]
fn hd_class_examples() {
    assert_eq!(ev("C(w)").hd, HdClass::Infinite);
    assert_eq!(
        ev("I^3").hd,
        HdClass::FiniteExactly(Rat::from_integer(3.into()))
    );
    assert_eq!(
        ev("cantor(1/2)").hd,
        HdClass::FiniteExactly(Rat::from_integer(1.into()))
    );
    assert_eq!(ev("prod(I^1, I^1)").hd, HdClass::Unknown);
}

#[test]
fn fat_cantor_tdhd_is_pinned() {
    let e = ev("cantor(1/2)");
    assert!(point_interval(&e.tdhd, &DimValue::nat(1)));
    assert!(point_interval(&e.d, &DimValue::nat(0)));
}

#[test]
fn weight_cap_fires_with_gate() {
    let e = ev("Dsub(w_1)");
    // D in [0, w_1], variant capped at w_2 by the aleph_1 base
    assert_eq!(e.d.lower, DimValue::nat(0));
    assert_eq!(e.d.upper, DimValue::Ordinal(ord("w_1")));
    assert_eq!(e.tdhd.upper, DimValue::Ordinal(ord("w_2")));
    assert!(!e.tdhd.upper_strict);
    assert!(e.tdhd.trace.iter().any(|r| r.rule == "weight_cap"));
}

#[test]
fn weight_cap_gated_off_when_d_unknown() {
    // products have no D upper bound in the catalog, so the cap must not fire
    let e = ev("prod(I^1, I^1)");
    assert_eq!(e.d.upper, DimValue::Omega);
    assert_eq!(e.tdhd.upper, DimValue::Omega);
    assert!(e.tdhd.trace.iter().all(|r| r.rule != "weight_cap"));
    // lower bounds still flow from the factors
    assert_eq!(e.d.lower, DimValue::nat(1));
    assert_eq!(e.tdhd.lower, DimValue::nat(1));
}

#[test]
fn dense_subset_below_omega_one() {
    let e = ev("Dsub(w+3)");
    assert_eq!(e.d.lower, DimValue::nat(0));
    assert_eq!(e.d.upper, DimValue::Ordinal(ord("w+3")));
    assert_eq!(e.tdhd.upper, DimValue::Ordinal(ord("w_1")));
    assert!(e.tdhd.upper_strict);
}

#[test]
fn augment_of_possibly_empty_core_widens() {
    let e = ev("aug(sub(I^2))");
    assert_eq!(e.d.lower, DimValue::NegOne);
    assert_eq!(e.d.upper, DimValue::nat(2));
}

#[test]
fn alexandrov_sum_bounds() {
    let e = ev("alex(I^1, I^2, ...)");
    assert_eq!(e.d.lower, DimValue::nat(2));
    assert_eq!(e.d.upper, DimValue::nat(2));
    // compact: blocks are compact, so the variant sum rule fires
    assert!(e.attrs.compact.is_true());
    assert_eq!(e.tdhd.upper, DimValue::nat(2));

    let e = ev("alex(S(w), point)");
    assert_eq!(e.d.lower, DimValue::Ordinal(ord("w")));
    assert_eq!(e.d.upper, DimValue::Ordinal(ord("w")));
    assert_eq!(e.tdhd.upper, DimValue::Ordinal(ord("w_1")));
    assert!(e.tdhd.upper_strict);
}

#[test]
fn compact_union_equality_vs_lower_only() {
    let compact = ev("cunion(C(w), I^2)");
    assert_eq!(compact.tdhd.lower, DimValue::Ordinal(ord("w")));
    assert_eq!(compact.tdhd.upper, DimValue::Ordinal(ord("w_1")));
    assert!(compact.tdhd.upper_strict);

    // a union with a non-compact part only keeps the subspace lower bound
    let open = ev("cunion(C(w), Dsub(2))");
    assert_eq!(open.tdhd.lower, DimValue::Ordinal(ord("w")));
    assert!(open
        .tdhd
        .trace
        .iter()
        .all(|r| r.rule != "compact_union_max_tdhd"));
}

#[test]
fn declared_compact_enables_gated_rules() {
    let e = ev("lfunion(C(w), C(w), ...) with {compact}");
    assert_eq!(e.tdhd.upper, DimValue::Ordinal(ord("w_1")));
    assert!(e.tdhd.upper_strict);
}

#[test]
fn subspace_monotonicity() {
    let parent = ev("S(w^2)");
    let sub = ev("sub(S(w^2))");
    assert!(sub.d.upper <= parent.d.upper);
    assert!(sub.tdhd.upper <= parent.tdhd.upper);
    assert_eq!(sub.d.lower, DimValue::NegOne);
}

#[test]
fn excision_first_form_is_tighter() {
    // lim + max form never exceeds the naive ordinal sum
    let pairs = [
        ("w+3", "5"),
        ("w^2+7", "w+1"),
        ("w*4+2", "3"),
        ("5", "7"),
        ("w^3", "w^3"),
    ];
    for (a, b) in pairs {
        let a = DimValue::Ordinal(ord(a));
        let b = DimValue::Ordinal(ord(b));
        let tight = excision_upper(&a, &b).unwrap();
        let naive = naive_sum(&a, &b).unwrap();
        assert!(tight <= naive, "{tight} > {naive}");
    }
}

#[test]
fn intermediate_target_examples() {
    let t = intermediate_targets(&DimValue::Ordinal(ord("w^2+5")), &ord("w")).unwrap();
    assert_eq!(t.base, ord("w^2"));
    assert!(t.caveat.is_some());

    let t = intermediate_targets(&DimValue::Ordinal(ord("w+3")), &ord("w")).unwrap();
    assert_eq!(t.base, Ordinal::zero());
    assert!(t.caveat.is_none());

    let t = intermediate_targets(&DimValue::Ordinal(ord("w*2+1")), &Ordinal::zero()).unwrap();
    assert_eq!(t.base, ord("w*2"));

    assert!(intermediate_targets(&DimValue::Ordinal(ord("w+3")), &ord("w*2")).is_err());
    assert!(intermediate_targets(&DimValue::Omega, &ord("w")).is_err());
    assert!(intermediate_targets(&DimValue::NegOne, &Ordinal::zero()).is_err());
}

#[test]
fn traces_follow_the_catalog() {
    let e = ev("aug(C(w))");
    let d_rules: Vec<&str> = e.d.trace.iter().map(|r| r.rule).collect();
    assert_eq!(d_rules, vec!["smirnov_cantor_zero", "countable_augment_d"]);
    for (_, r) in e.full_trace() {
        assert!(
            crate::space::catalog().iter().any(|c| c.name == r.rule),
            "{} missing from catalog",
            r.rule
        );
    }

    let e = ev("S(w)");
    assert_eq!(e.d.trace.len(), 1);
    assert_eq!(e.d.trace[0].rule, "smirnov_exact");
}

#[test]
fn disabling_rules_only_widens() {
    let expr = dsl::parse("cunion(excise(S(w+3), I^5), aug(C(w)))").unwrap();
    let full = evaluate(&expr).unwrap();
    for rule in ["excision_d", "closed_union_max_d", "countable_augment_d"] {
        let partial = evaluate_with(&expr, &RuleSet::all().without(rule)).unwrap();
        assert!(partial.d.lower <= full.d.lower);
        assert!(partial.d.upper >= full.d.upper);
        assert!(partial.tdhd.lower <= full.tdhd.lower);
        assert!(partial.tdhd.upper >= full.tdhd.upper);
    }
}

#[test]
fn declared_hd_conflicts_are_rejected() {
    let err = crate::space::evaluate(&dsl::parse("I^2 with {hd=3}").unwrap()).unwrap_err();
    assert!(matches!(err, SpaceError::DeclarationConflict(_)));

    // a finite declaration on a space with variant lower >= w crosses bounds
    let err = crate::space::evaluate(&dsl::parse("C(w) with {hd=2}").unwrap()).unwrap_err();
    assert!(err.is_internal());
}
