//! Catalog fixtures: pinned reports and suite outcomes.
//!
//! Set `BIREP_BLESS=1` to rewrite the pinned reports.

use std::fs;
use std::path::PathBuf;

use birep::catalog;
use birep_probe::report::render_structured;
use birep_probe::{parse_problem, run_suite, ReportBundle};

fn fixture(name: &str, kind: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.{kind}.json"))
}

fn run(name: &str) -> (ReportBundle, String) {
    let text = fs::read_to_string(fixture(name, "problem")).unwrap();
    let bundle = run_suite(&parse_problem(&text).unwrap()).unwrap();
    let rendered = render_structured(&bundle);
    (bundle, rendered)
}

#[test]
fn reports_match_pinned_bytes() {
    for item in catalog::ITEMS {
        let (_, first) = run(item.name);
        let (_, second) = run(item.name);
        assert_eq!(first, second, "{} is not deterministic", item.name);
        let path = fixture(item.name, "report");
        if std::env::var_os("BIREP_BLESS").is_some() {
            fs::write(&path, &first).unwrap();
        }
        let pinned = fs::read_to_string(&path).unwrap();
        assert!(first == pinned, "{} differs from {}", item.name, path.display());
    }
}

/// `(suite, passed)` per catalog item, in run order.
const OUTCOMES: [(&str, [(&str, bool); 6]); 6] = [
    (
        "skew-quadratic",
        [
            ("lemma5", true),
            ("bo", true),
            ("lemma_le0", true),
            ("theorems", true),
            ("young", true),
            ("fitzpatrick-psi", true),
        ],
    ),
    (
        "skew-abs",
        [
            ("lemma5", true),
            ("bo", true),
            ("lemma_le0", true),
            ("theorems", true),
            ("young", true),
            ("fitzpatrick-psi", true),
        ],
    ),
    (
        "affine-field",
        [
            ("lemma5", true),
            ("bo", true),
            ("lemma_le0", true),
            ("theorems", true),
            ("young", true),
            ("fitzpatrick-psi", true),
        ],
    ),
    // the extracted intervals differ by one grid step
    (
        "saddle-linear",
        [
            ("lemma5", true),
            ("bo", false),
            ("lemma_le0", false),
            ("theorems", false),
            ("young", true),
            ("fitzpatrick-psi", true),
        ],
    ),
    (
        "neg-distance",
        [
            ("lemma5", true),
            ("bo", false),
            ("lemma_le0", true),
            ("theorems", true),
            ("young", true),
            ("fitzpatrick-psi", true),
        ],
    ),
    (
        "nonmono-quadratic",
        [
            ("lemma5", true),
            ("bo", true),
            ("lemma_le0", true),
            ("theorems", true),
            ("young", true),
            ("fitzpatrick-psi", true),
        ],
    ),
];

#[test]
fn suite_outcomes() {
    for (name, expected) in OUTCOMES {
        let (bundle, _) = run(name);
        let got: Vec<(&str, bool)> = bundle.suites.iter().map(|s| (s.name.as_str(), s.passed)).collect();
        assert_eq!(got, expected, "{name}");
        assert_eq!(bundle.overall, expected.iter().all(|(_, p)| *p), "{name}");
    }
}

#[test]
fn not_applicable_suites() {
    let (bundle, _) = run("nonmono-quadratic");
    let inapplicable: Vec<&str> = bundle.suites.iter().filter(|s| !s.applicable).map(|s| s.name.as_str()).collect();
    assert_eq!(inapplicable, ["bo", "theorems", "fitzpatrick-psi"]);
    let (bundle, _) = run("neg-distance");
    let bo = &bundle.suites[1];
    let eq = bo.checks.iter().find(|c| c.name == "interval-equality").unwrap();
    assert!(!eq.passed && eq.witness.is_some());
}
