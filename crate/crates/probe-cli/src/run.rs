//! Suite dispatch and the report bundle.

use birep::bifn::{
    check_bo_maximal, check_lemma4, check_lemma5, check_lemma_le0, extract_af, theorem_suite, BifunctionTable,
};
use birep::bisum::{check_lemma14, check_prop16, check_theorem15};
use birep::fenchel::{check_young, conjugate_fast};
use birep::monop::{conjugate_transpose, fitzpatrick, psi_envelope, JointMethod, PairedFunction};
use birep::report::Scan;
use birep::{CertificateReport, Check, CheckConfig, Grid, GridFunction, Tolerances, Window, Witness};
use serde::{Deserialize, Serialize};

use crate::problem::{InputError, NamedTable, Problem, ProblemSpec, Suite};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GridEcho {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub step: f64,
}

impl From<&Grid> for GridEcho {
    fn from(g: &Grid) -> Self {
        Self { lo: g.lo(), hi: g.hi(), n: g.len(), step: g.step() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Environment {
    pub grid: GridEcho,
    pub dual: GridEcho,
    pub window: f64,
    /// Node ranges of the central window.
    pub window_nodes: Window,
    pub tolerances: Tolerances,
    pub psi_sample: usize,
    pub problem: Problem,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub name: String,
    /// Bifunction name, or `F+G` for pair suites.
    pub subject: String,
    pub applicable: bool,
    pub passed: bool,
    pub truncation_flagged: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, subject: String, r: CertificateReport) -> Self {
        Self {
            name: suite.name().to_string(),
            subject,
            applicable: r.applicable,
            passed: r.passed,
            truncation_flagged: r.truncation_flagged,
            checks: r.checks,
            notes: r.notes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportBundle {
    pub environment: Environment,
    pub suites: Vec<SuiteReport>,
    pub overall: bool,
}

impl ReportBundle {
    pub fn failed_checks(&self) -> impl Iterator<Item = (&SuiteReport, &Check)> {
        self.suites.iter().flat_map(|s| s.checks.iter().filter(|c| !c.passed).map(move |c| (s, c)))
    }
}

/// Runs the selected suites in declaration order. Per-bifunction suites run
/// once for each bifunction; `lemma4` and `sum` take the first two (or the
/// first one twice).
pub fn run_suite(spec: &ProblemSpec) -> Result<ReportBundle, InputError> {
    let cfg = &spec.config;
    let mut suites = Vec::new();
    for &suite in &spec.suites {
        if suite.is_pair() {
            let f = &spec.bifunctions[0];
            let g = spec.bifunctions.get(1).unwrap_or(f);
            let subject = format!("{}+{}", f.name, g.name);
            let report = match suite {
                Suite::Lemma4 => {
                    let xbar = spec.xbar.unwrap_or_else(|| {
                        let c = f.table.domain();
                        c.lo + (c.hi - c.lo) / 2
                    });
                    check_lemma4(&f.table, &g.table, xbar, cfg)?
                }
                _ => sum_suite(&f.table, &g.table, &spec.dual, cfg)?,
            };
            suites.push(SuiteReport::new(suite, subject, report));
        } else {
            for b in &spec.bifunctions {
                let report = single(suite, b, spec)?;
                suites.push(SuiteReport::new(suite, b.name.clone(), report));
            }
        }
    }
    let overall = suites.iter().all(|s| s.passed);
    let environment = Environment {
        grid: (&spec.primal).into(),
        dual: (&spec.dual).into(),
        window: cfg.window,
        window_nodes: Window::central(&spec.primal, &spec.dual, cfg.window),
        tolerances: cfg.tol,
        psi_sample: cfg.psi_sample,
        problem: spec.document.clone(),
    };
    Ok(ReportBundle { environment, suites, overall })
}

fn single(suite: Suite, b: &NamedTable, spec: &ProblemSpec) -> Result<CertificateReport, InputError> {
    let (t, dual, cfg) = (&b.table, &spec.dual, &spec.config);
    Ok(match suite {
        Suite::Lemma5 => check_lemma5(t, dual, cfg),
        Suite::Bo => check_bo_maximal(t, cfg),
        Suite::LemmaLe0 => check_lemma_le0(t, cfg),
        Suite::Theorems => theorem_suite(t, dual, cfg),
        Suite::Young => young_suite(t, dual, &cfg.tol)?,
        Suite::FitzpatrickPsi => fitzpatrick_suite(t, dual, cfg)?,
        Suite::Lemma4 | Suite::Sum => unreachable!("pair suites are dispatched separately"),
    })
}

fn sum_suite(
    f: &BifunctionTable,
    g: &BifunctionTable,
    dual: &Grid,
    cfg: &CheckConfig,
) -> Result<CertificateReport, InputError> {
    let mut r = CertificateReport::new("sum");
    let shared = f.same_shape(g);
    if shared {
        r.absorb("lemma14", check_lemma14(f, g, cfg)?);
    } else {
        r.push(Check::skipped("lemma14", "F and G have different C"));
    }
    r.absorb("theorem15", check_theorem15(f, g, dual, cfg)?);
    if shared {
        r.absorb("prop16", check_prop16(f, g, dual, cfg)?);
    } else {
        r.push(Check::skipped("prop16", "F and G have different C"));
    }
    Ok(r)
}

/// Young's inequality for every row `F(x, ·) + δ_C` against its fast
/// conjugate, merged check by check.
fn young_suite(t: &BifunctionTable, dual: &Grid, tol: &Tolerances) -> Result<CertificateReport, InputError> {
    let grid = *t.grid();
    let c = t.domain();
    let mut merged: Vec<Check> = Vec::new();
    let mut equalities = 0;
    for i in c.indices() {
        let mut v = vec![f64::INFINITY; grid.len()];
        for (j, &value) in c.indices().zip(t.row(i)) {
            v[j] = value;
        }
        let row = GridFunction::from_f64(grid, &v)?;
        let y = check_young(&row, &conjugate_fast(&row, dual), tol);
        equalities += y.equality_pairs.len();
        for check in y.report.checks {
            match merged.iter_mut().find(|m| m.name == check.name) {
                None => merged.push(check),
                Some(m) => {
                    let worse = check.worst_violation > m.worst_violation;
                    if !check.passed && (m.passed || worse) {
                        m.witness = check.witness;
                    }
                    if worse {
                        m.worst_violation = check.worst_violation;
                    }
                    m.passed &= check.passed;
                }
            }
        }
    }
    let mut r = CertificateReport::new("young");
    for check in merged {
        r.push(check);
    }
    r.note(format!("{} rows of F(x,.) + indicator of C; {equalities} equality pairs", c.len()));
    Ok(r)
}

/// Fitzpatrick and ψ functions of the graph of `A^F` sampled on the dual
/// grid: `φ = c` on the graph, `ψ*ᵀ = φ` and `φ ≤ ψ` for a subsample.
fn fitzpatrick_suite(t: &BifunctionTable, dual: &Grid, cfg: &CheckConfig) -> Result<CertificateReport, InputError> {
    let primal = t.grid();
    let graph = extract_af(t).to_graph(dual, cfg.tol.interval);
    let mut r = CertificateReport::new("fitzpatrick-psi");
    let names = ["phi-equals-coupling-on-graph", "psi-conjugate-equals-phi", "phi-below-psi"];
    if graph.is_empty() {
        r.applicable = false;
        r.note("the sampled graph of A^F is empty");
        for n in names {
            r.push(Check::skipped(n, "empty graph"));
        }
        return Ok(r);
    }
    if let Err(w) = graph.check_monotone() {
        r.applicable = false;
        r.note(format!(
            "the sampled graph of A^F is not monotone: ({}, {}) and ({}, {}) give {}",
            w.first.0, w.first.1, w.second.0, w.second.1, w.product
        ));
        for n in names {
            r.push(Check::skipped(n, "graph is not monotone"));
        }
        return Ok(r);
    }

    let phi = fitzpatrick(&graph, primal, dual)?;
    let scale = 1.0 + phi.max_abs_finite();
    let mut on_graph = Scan::default();
    for (i, j) in graph.node_indices(primal, dual)? {
        let gap = (phi.get(i, j) - phi.coupling_at(i, j)).abs();
        on_graph.observe(gap, Witness::new(primal.node(i), dual.node(j)));
    }
    r.push(Check::from_scan(names[0], &on_graph, cfg.tol.exact * scale));

    let sub = graph.subsample(cfg.psi_sample);
    let phi_sub = fitzpatrick(&sub, primal, dual)?;
    let psi = psi_envelope(&sub, primal, dual)?;
    let back = conjugate_transpose(&psi, JointMethod::Fast);
    r.truncation_flagged = back.truncated_in(&psi.full_window());
    let scale = 1.0 + phi_sub.max_abs_finite().max(psi.max_abs_finite());
    r.push(Check::from_scan(names[1], &agreement(&back.function, &phi_sub), cfg.tol.duality * scale));
    r.push(Check::from_scan(names[2], &below(&phi_sub, &psi), cfg.tol.approx * scale));
    r.note(format!("{} graph pairs; psi built from a subsample of {}", graph.len(), sub.len()));
    Ok(r)
}

fn agreement(a: &PairedFunction, b: &PairedFunction) -> Scan {
    let mut s = Scan::default();
    for i in 0..a.primal().len() {
        for j in 0..a.dual().len() {
            s.observe((a.get(i, j) - b.get(i, j)).abs(), Witness::new(a.primal().node(i), a.dual().node(j)));
        }
    }
    s
}

/// `lower − upper` wherever `upper` is finite.
fn below(lower: &PairedFunction, upper: &PairedFunction) -> Scan {
    let mut s = Scan::default();
    for i in 0..upper.primal().len() {
        for j in 0..upper.dual().len() {
            if upper.is_finite_at(i, j) {
                s.observe(
                    lower.get(i, j) - upper.get(i, j),
                    Witness::new(upper.primal().node(i), upper.dual().node(j)),
                );
            }
        }
    }
    s
}
