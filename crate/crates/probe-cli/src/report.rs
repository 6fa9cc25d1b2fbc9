//! Rendering and writing report bundles.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;

use birep::Check;

use crate::problem::Format;
use crate::run::ReportBundle;

/// Every selected check passed.
pub const EXIT_PASS: i32 = 0;

/// Malformed input or an I/O failure.
pub const EXIT_INPUT_ERROR: i32 = 1;

/// At least one check failed.
pub const EXIT_VERIFICATION_FAILURE: i32 = 2;

pub fn exit_code(bundle: &ReportBundle) -> i32 {
    if bundle.overall {
        EXIT_PASS
    } else {
        EXIT_VERIFICATION_FAILURE
    }
}

pub fn render(bundle: &ReportBundle, format: Format) -> String {
    match format {
        Format::Text => render_text(bundle),
        Format::Structured => render_structured(bundle),
        Format::Csv => render_csv(bundle),
    }
}

pub fn render_structured(bundle: &ReportBundle) -> String {
    let mut s = serde_json::to_string_pretty(bundle).expect("report bundles always serialize");
    s.push('\n');
    s
}

/// One row per check: `suite, check, passed, worstViolation, witnessX,
/// witnessS`. The suite column reads `name:subject`.
pub fn render_csv(bundle: &ReportBundle) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "check", "passed", "worstViolation", "witnessX", "witnessS"]).expect("writing to memory");
    for s in &bundle.suites {
        let suite = format!("{}:{}", s.name, s.subject);
        for c in &s.checks {
            let (wx, ws) = match c.witness {
                Some(w) => (format!("{:?}", w.x), format!("{:?}", w.s)),
                None => (String::new(), String::new()),
            };
            let passed = if c.applicable { c.passed.to_string() } else { "skipped".to_string() };
            w.write_record([&suite, &c.name, &passed, &format!("{:?}", c.worst_violation), &wx, &ws])
                .expect("writing to memory");
        }
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
}

fn status(c: &Check) -> &'static str {
    match (c.applicable, c.passed) {
        (false, _) => "skip",
        (true, true) => "ok",
        (true, false) => "FAIL",
    }
}

pub fn render_text(bundle: &ReportBundle) -> String {
    let env = &bundle.environment;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "grid [{}, {}] n={} step={}; dual [{}, {}] n={} step={}; window {}",
        env.grid.lo,
        env.grid.hi,
        env.grid.n,
        env.grid.step,
        env.dual.lo,
        env.dual.hi,
        env.dual.n,
        env.dual.step,
        env.window
    );
    for s in &bundle.suites {
        let head = match (s.applicable, s.passed) {
            (false, _) => "n/a ",
            (true, true) => "PASS",
            (true, false) => "FAIL",
        };
        let trunc = if s.truncation_flagged { " (truncation flagged)" } else { "" };
        let _ = writeln!(out, "[{head}] {} {}{trunc}", s.name, s.subject);
        for c in &s.checks {
            let _ = write!(out, "    {:<4} {}", status(c), c.name);
            if c.applicable {
                let _ = write!(out, "  worst {:e}", c.worst_violation);
            }
            if let Some(w) = c.witness {
                let _ = write!(out, "  at ({}, {})", w.x, w.s);
            }
            if let Some(n) = &c.note {
                let _ = write!(out, "  [{n}]");
            }
            out.push('\n');
        }
        for n in &s.notes {
            let _ = writeln!(out, "    note: {n}");
        }
    }
    let failed = bundle.failed_checks().count();
    let verdict = if bundle.overall { "PASS".to_string() } else { format!("FAIL ({failed} failed checks)") };
    let _ = writeln!(out, "overall: {verdict}");
    out
}

/// Writes the rendered bundle to `path` or standard output and returns the
/// process exit code.
pub fn emit_report(bundle: &ReportBundle, format: Format, path: Option<&Path>) -> i32 {
    let text = render(bundle, format);
    let written = match path {
        Some(p) => fs::write(p, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| format!("cannot write report: {e}")),
    };
    match written {
        Ok(()) => exit_code(bundle),
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_INPUT_ERROR
        }
    }
}
