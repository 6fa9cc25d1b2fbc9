use birep_probe::parse_expression;
use proptest::prelude::*;

/// Well-formed sources with random spacing, optional parentheses and
/// unparenthesised operator chains.
fn source() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        (0.0f64..100.0).prop_map(|v| format!("{v}")),
        (1u32..9, -3i32..4).prop_map(|(m, e)| format!("{m}e{e}")),
    ];
    leaf.prop_recursive(6, 64, 2, |inner| {
        let pad = prop_oneof![Just(""), Just(" "), Just("  ")];
        prop_oneof![
            (inner.clone(), prop_oneof![Just('+'), Just('-'), Just('*'), Just('/')], inner.clone(), pad.clone())
                .prop_map(|(a, op, b, p)| format!("({a}){p}{op}{p}({b})")),
            (inner.clone(), prop_oneof![Just('+'), Just('-')], inner.clone(), pad.clone())
                .prop_map(|(a, op, b, p)| format!("{a}{p}{op}{p}{b}")),
            (inner.clone(), -3i32..4).prop_map(|(a, k)| format!("({a})^{k}")),
            inner.clone().prop_map(|a| format!("-({a})")),
            inner.clone().prop_map(|a| format!("abs({a})")),
            (inner.clone(), inner.clone(), prop_oneof![Just("min"), Just("max")], pad)
                .prop_map(|(a, b, f, p)| format!("{f}({a},{p}{b})")),
        ]
    })
}

fn agree(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn unparse_parse_preserves_evaluation(
        src in source(),
        points in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 10),
    ) {
        let e = parse_expression(&src).unwrap();
        let printed = e.to_string();
        let back = parse_expression(&printed).unwrap();
        prop_assert_eq!(&back, &e);
        for (x, y) in points {
            match (e.eval(x, y), back.eval(x, y)) {
                (Ok(a), Ok(b)) => prop_assert!(agree(a, b), "{} vs {} at ({}, {})", a, b, x, y),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{:?} vs {:?} for {}", a, b, src),
            }
        }
    }

    #[test]
    fn arbitrary_text_never_panics(src in "[xy0-9a-z+*/^(),. -]{0,40}") {
        let _ = parse_expression(&src);
    }
}
