use super::*;
use crate::ordinal::Ordinal;

fn ord(s: &str) -> Ordinal {
    s.parse().unwrap()
}

#[test]
fn parse_examples() {
    assert_eq!(parse("S(w*2+3)").unwrap(), SpaceExpr::Smirnov(ord("w*2+3")));
    assert_eq!(
        parse("cunion(S(w), I^4)").unwrap(),
        SpaceExpr::ClosedUnion(vec![SpaceExpr::Smirnov(ord("w")), SpaceExpr::Cube(4)])
    );
    let err = parse("S(w+").unwrap_err();
    assert_eq!(err.position, 4);
    assert!(err.expected.contains(&"ordinal term"));
}

#[test]
fn pretty_examples() {
    assert_eq!(pretty(&SpaceExpr::Smirnov(ord("w"))), "S(w)");
    assert_eq!(
        pretty(&SpaceExpr::product(
            SpaceExpr::SmirnovCantor(ord("w")),
            SpaceExpr::Cube(1)
        )),
        "prod(C(w), I^1)"
    );
    assert_eq!(pretty(&SpaceExpr::Empty), "empty");
}

#[test]
fn bare_interval_is_the_one_cell() {
    assert_eq!(parse("I").unwrap(), SpaceExpr::Cube(1));
    assert_eq!(parse("I^0").unwrap(), SpaceExpr::Cube(0));
    assert_eq!(pretty(&SpaceExpr::Cube(1)), "I^1");
}

#[test]
fn whitespace_is_ignored(){
    let a = parse("prod( S( w ) ,I^2 ) with { separable , hd = 3/2 }").unwrap();
    let b = parse("prod(S(w),I^2)with{separable,hd=3/2}").unwrap();
    assert_eq!(a, b);
}

#[test]
fn ellipsis_markers() {
    let e = parse("lfunion(I^1, I^2, ...)").unwrap();
    assert_eq!(
        e,
        SpaceExpr::LocallyFiniteClosedUnion {
            parts: vec![SpaceExpr::Cube(1), SpaceExpr::Cube(2)],
            unbounded: true,
        }
    );
    assert_eq!(pretty(&e), "lfunion(I^1, I^2, ...)");
    assert!(parse("cunion(I^1, ...)").is_err());
}

#[test]
fn attribute_clauses() {
    let e = parse("sub(S(w_1)) with {separable, weight=aleph(1), hd=2}").unwrap();
    let SpaceExpr::WithAttrs { attrs, .. } = &e else {
        panic!("expected attribute wrapper");
    };
    assert_eq!(attrs.separable, Some(true));
    assert_eq!(attrs.compact, None);
    assert!(attrs.weight.is_some());
    assert_eq!(pretty(&e), "sub(S(w_1)) with {separable, weight=aleph(1), hd=2}");

    let err = parse("point with {separable, separable}").unwrap_err();
    assert!(err.message.contains("duplicate"));

    let stacked = parse("point with {separable} with {compact}").unwrap();
    assert_eq!(pretty(&stacked), "point with {separable} with {compact}");
}

#[test]
fn failure_positions_are_within_input() {
    for bad in ["", "S", "S(", "S(w", "S(w+", "prod(I^1", "cantor(0/0)", "xyz", "I^", "empty)"] {
        let err = parse(bad).unwrap_err();
        assert!(err.position <= bad.len(), "{bad}: position {}", err.position);
    }
}

#[test]
fn truncations_never_report_past_the_cut() {
    let valid = [
        "prod(S(w), I^4)",
        "excise(aug(C(w*2)), cantor(1/2)) with {compact}",
        "lfunion(sub(Dsub(w_2)), point, ...)",
    ];
    for input in valid {
        assert!(parse(input).is_ok(), "{input} should parse");
        for cut in 0..input.len() {
            let prefix = &input[..cut];
            if let Err(err) = parse(prefix) {
                assert!(
                    err.position <= cut,
                    "truncating {input} at {cut} reported position {}",
                    err.position
                );
            }
        }
    }
}

#[test]
fn round_trip_spot_checks() {
    for text in [
        "empty",
        "point",
        "I^1",
        "I^7",
        "cantor(3/4)",
        "S(w^2*3 + w + 4)",
        "C(w_1 + w*3)",
        "Dsub(w_2)",
        "prod(I^1, prod(S(w), C(1)))",
        "cunion(I^1, I^2, I^3)",
        "lfunion(point, ...)",
        "aug(sub(S(w)))",
        "excise(S(w + 3), I^5)",
        "alex(I^1, I^2, ...)",
        "point with {separable, compact, weight=aleph(2), hd=1/2}",
    ] {
        let parsed = parse(text).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(pretty(&parsed), text, "canonical form of {text}");
        assert_eq!(parse(&pretty(&parsed)).unwrap(), parsed);
    }
}
