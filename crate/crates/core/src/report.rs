//! Certificate reports and the tolerances they are checked against.

use serde::{Deserialize, Serialize};

use crate::extgrid::{Grid, SubInterval};

/// Node coordinates attached to a failed check. The second coordinate is a
/// dual value for paired functions, or the second primal argument for
/// bifunction checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: f64,
    pub s: f64,
}

impl Witness {
    pub fn new(x: f64, s: f64) -> Self {
        // keep reports serializable: unbounded slopes are clamped
        let clamp = |v: f64| if v.is_finite() { v } else { v.signum() * f64::MAX };
        Self { x: clamp(x), s: clamp(s) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub applicable: bool,
    pub worst_violation: f64,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, applicable: true, worst_violation: 0.0, witness: None, note: None }
    }

    pub fn fail(name: impl Into<String>, worst_violation: f64, witness: Option<Witness>) -> Self {
        Self {
            name: name.into(),
            passed: false,
            applicable: true,
            worst_violation: sanitize(worst_violation),
            witness,
            note: None,
        }
    }

    /// A check whose hypotheses do not hold. Counts as passed.
    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            applicable: false,
            worst_violation: 0.0,
            witness: None,
            note: Some(reason.into()),
        }
    }

    pub fn from_scan(name: impl Into<String>, scan: &Scan, tol: f64) -> Self {
        let passed = scan.worst <= tol;
        Self {
            name: name.into(),
            passed,
            applicable: true,
            worst_violation: sanitize(scan.worst.max(0.0)),
            witness: if passed { None } else { scan.witness },
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::MAX
    } else {
        v.clamp(-f64::MAX, f64::MAX)
    }
}

/// Running maximum of `required − actual` over a node scan.
#[derive(Debug, Clone, Copy)]
pub struct Scan {
    pub worst: f64,
    pub witness: Option<Witness>,
    pub count: usize,
}

impl Default for Scan {
    fn default() -> Self {
        Self { worst: f64::NEG_INFINITY, witness: None, count: 0 }
    }
}

impl Scan {
    /// Records a gap; ties go to the later node.
    pub fn observe(&mut self, gap: f64, witness: Witness) {
        self.count += 1;
        if gap >= self.worst || gap.is_nan() {
            self.worst = if gap.is_nan() { f64::INFINITY } else { gap };
            self.witness = Some(witness);
        }
    }

    pub fn merge(&mut self, other: &Scan) {
        self.count += other.count;
        if other.worst >= self.worst {
            self.worst = other.worst;
            self.witness = other.witness;
        }
    }
}

/// The node box on which truncation-sensitive checks are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub primal: SubInterval,
    pub dual: SubInterval,
}

impl Window {
    pub fn full(primal: &Grid, dual: &Grid) -> Self {
        Self { primal: primal.full(), dual: dual.full() }
    }

    /// Central `fraction` of each axis.
    pub fn central(primal: &Grid, dual: &Grid, fraction: f64) -> Self {
        Self { primal: primal.full().central(fraction), dual: dual.full().central(fraction) }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.primal.contains(i) && self.dual.contains(j)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateReport {
    pub name: String,
    pub passed: bool,
    pub applicable: bool,
    pub checks: Vec<Check>,
    pub truncation_flagged: bool,
    pub window: Option<Window>,
    pub notes: Vec<String>,
}

impl CertificateReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            applicable: true,
            checks: Vec::new(),
            truncation_flagged: false,
            window: None,
            notes: Vec::new(),
        }
    }

    /// A report whose preconditions fail; nothing was checked.
    pub fn not_applicable(name: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut r = Self::new(name);
        r.applicable = false;
        r.notes.push(reason.into());
        r
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Appends every check of `other` with its name prefixed.
    pub fn absorb(&mut self, prefix: &str, other: CertificateReport) {
        self.truncation_flagged |= other.truncation_flagged;
        for c in other.checks {
            let name = format!("{prefix}/{}", c.name);
            self.push(Check { name, ..c });
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
    }
}

/// Absolute/relative tolerances. Each is multiplied by a scale
/// `1 + max |finite value involved|` at the point of use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Tolerances {
    /// Inequalities that hold exactly on the grid.
    pub exact: f64,
    /// Inequalities that hold up to conjugation round-off.
    pub approx: f64,
    /// Interval endpoint comparisons.
    pub interval: f64,
    /// Membership of `|h − c|` in an equality set.
    pub equality: f64,
    /// Agreement of two independently computed conjugates.
    pub duality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { exact: 1e-12, approx: 1e-9, interval: 1e-9, equality: 1e-9, duality: 1e-6 }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 5] = ["exact", "approx", "interval", "equality", "duality"];

    pub fn set(&mut self, name: &str, value: f64) -> bool {
        let slot = match name {
            "exact" => &mut self.exact,
            "approx" => &mut self.approx,
            "interval" => &mut self.interval,
            "equality" => &mut self.equality,
            "duality" => &mut self.duality,
            _ => return false,
        };
        *slot = value;
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckConfig {
    pub tol: Tolerances,
    /// Fraction of each axis kept in the verification window.
    pub window: f64,
    /// Graph points fed to the ψ envelope when a sandwich check needs it.
    pub psi_sample: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { tol: Tolerances::default(), window: 0.5, psi_sample: 12 }
    }
}
