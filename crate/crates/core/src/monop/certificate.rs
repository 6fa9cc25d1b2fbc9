use crate::error::{Error, Result};
use crate::extgrid::{check_convex_slice, Grid};
use crate::report::{CertificateReport, Check, CheckConfig, Scan, Window, Witness};

use super::fitzpatrick::{fitzpatrick, psi_envelope};
use super::graph::OperatorGraph;
use super::joint::{conjugate_transpose, JointMethod};
use super::paired::PairedFunction;

/// Node pairs with `|h − c| ≤ tol·(1 + max |h|)`.
pub fn equality_set(h: &PairedFunction, tol: f64) -> OperatorGraph {
    let bound = tol * (1.0 + h.max_abs_finite());
    let (primal, dual) = (h.primal(), h.dual());
    let mut pairs = Vec::new();
    for i in 0..primal.len() {
        for j in 0..dual.len() {
            let v = h.get(i, j);
            if v.is_finite() && (v - h.coupling_at(i, j)).abs() <= bound {
                pairs.push((primal.node(i), dual.node(j)));
            }
        }
    }
    OperatorGraph::new(pairs)
}

/// Outcome of matching a computed equality set against a reference graph
/// row by row on a window.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualitySetComparison {
    /// Every reference node pair is in the found set.
    pub contains_reference: bool,
    /// Every found node pair is in the reference set.
    pub contained_in_reference: bool,
    /// Largest dual distance from a node of either set to the other set in
    /// the same row; `+∞` when one row is empty and the other is not.
    pub worst_distance: f64,
    pub witness: Option<Witness>,
    pub extra: usize,
    pub missing: usize,
}

impl EqualitySetComparison {
    /// Both sets agree up to one dual step in every row.
    pub fn within_resolution(&self, dual: &Grid) -> bool {
        self.worst_distance <= dual.step() * (1.0 + 1e-9)
    }

    pub fn direction(&self) -> &'static str {
        match (self.contains_reference, self.contained_in_reference) {
            (true, true) => "equal",
            (true, false) => "strictly contains the graph",
            (false, true) => "strictly contained in the graph",
            (false, false) => "differs from the graph in both directions",
        }
    }
}

fn rows_of(g: &OperatorGraph, primal: &Grid, dual: &Grid) -> Result<Vec<Vec<usize>>> {
    let mut rows = vec![Vec::new(); primal.len()];
    for (i, j) in g.node_indices(primal, dual)? {
        rows[i].push(j);
    }
    for r in &mut rows {
        r.sort_unstable();
    }
    Ok(rows)
}

pub fn compare_equality_sets(
    found: &OperatorGraph,
    reference: &OperatorGraph,
    primal: &Grid,
    dual: &Grid,
    window: &Window,
) -> Result<EqualitySetComparison> {
    let f = rows_of(found, primal, dual)?;
    let r = rows_of(reference, primal, dual)?;
    let mut out = EqualitySetComparison {
        contains_reference: true,
        contained_in_reference: true,
        worst_distance: 0.0,
        witness: None,
        extra: 0,
        missing: 0,
    };
    let step = dual.step();
    let nearest = |row: &[usize], j: usize| -> f64 {
        row.iter().map(|&k| k.abs_diff(j)).min().map_or(f64::INFINITY, |d| d as f64 * step)
    };
    for i in window.primal.indices() {
        for &j in f[i].iter().filter(|&&j| window.dual.contains(j)) {
            if r[i].binary_search(&j).is_err() {
                out.contained_in_reference = false;
                out.extra += 1;
            }
            let d = nearest(&r[i], j);
            if d > out.worst_distance {
                out.worst_distance = d;
                out.witness = Some(Witness::new(primal.node(i), dual.node(j)));
            }
        }
        for &j in r[i].iter().filter(|&&j| window.dual.contains(j)) {
            if f[i].binary_search(&j).is_err() {
                out.contains_reference = false;
                out.missing += 1;
            }
            let d = nearest(&f[i], j);
            if d > out.worst_distance {
                out.worst_distance = d;
                out.witness = Some(Witness::new(primal.node(i), dual.node(j)));
            }
        }
    }
    Ok(out)
}

/// Checks that `h` represents the operator with graph `g`: (a) `h ≥ c`,
/// (b) `h = c` on the graph, (c) convexity along axis and diagonal lines,
/// and when `g` is taken as maximal, (d) `φ ≤ h ≤ ψ` and (e) the equality
/// sets of `h` and `h*ᵀ` reproduce `g`. With a window, (a) and (c)–(e) are
/// evaluated on it only.
pub fn verify_representative(
    h: &PairedFunction,
    g: &OperatorGraph,
    maximal_assumed: bool,
    window: Option<&Window>,
    cfg: &CheckConfig,
) -> Result<CertificateReport> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (primal, dual) = (h.primal(), h.dual());
    let nodes = g.node_indices(primal, dual)?;
    let region = window.copied().unwrap_or_else(|| h.full_window());
    let scale = h.scale_on(&region);
    let tol = cfg.tol;

    let mut report = CertificateReport::new("representative");
    report.window = window.copied();

    let mut below = Scan::default();
    for i in region.primal.indices() {
        for j in region.dual.indices() {
            let v = h.get(i, j);
            if v.is_finite() {
                below.observe(h.coupling_at(i, j) - v, Witness::new(primal.node(i), dual.node(j)));
            }
        }
    }
    report.push(Check::from_scan("dominates-coupling", &below, tol.exact * scale));

    let mut on_graph = Scan::default();
    for &(i, j) in &nodes {
        on_graph.observe((h.get(i, j) - h.coupling_at(i, j)).abs(), Witness::new(primal.node(i), dual.node(j)));
    }
    report.push(Check::from_scan("equal-on-graph", &on_graph, tol.approx * scale));

    report.push(line_convexity(h, &region, tol.approx * scale));

    if !maximal_assumed {
        report.push(Check::skipped("sandwich", "operator not assumed maximal"));
        report.push(Check::skipped("equality-set", "operator not assumed maximal"));
        report.push(Check::skipped("equality-set-conjugate", "operator not assumed maximal"));
        return Ok(report);
    }

    let phi = fitzpatrick(g, primal, dual)?;
    let psi = psi_envelope(&g.subsample(cfg.psi_sample), primal, dual)?;
    let mut lower = Scan::default();
    let mut upper = Scan::default();
    for i in region.primal.indices() {
        for j in region.dual.indices() {
            let w = Witness::new(primal.node(i), dual.node(j));
            let v = h.get(i, j);
            if v.is_finite() {
                lower.observe(phi.get(i, j) - v, w);
            }
            let p = psi.get(i, j);
            if p.is_finite() {
                upper.observe(v - p, w);
            }
        }
    }
    report.push(Check::from_scan("sandwich-lower", &lower, tol.approx * scale));
    report.push(Check::from_scan("sandwich-upper", &upper, tol.approx * scale));

    let conj = conjugate_transpose(h, JointMethod::Fast);
    report.truncation_flagged |= conj.truncated_in(&region);
    for (name, f) in [("equality-set", h), ("equality-set-conjugate", &conj.function)] {
        let cmp = compare_equality_sets(&equality_set(f, tol.equality), g, primal, dual, &region)?;
        let note = format!("{name} {} ({} extra, {} missing node pairs)", cmp.direction(), cmp.extra, cmp.missing);
        let check = if cmp.within_resolution(dual) {
            Check::pass(name)
        } else {
            Check::fail(name, cmp.worst_distance, cmp.witness)
        };
        report.push(check.with_note(note));
    }
    Ok(report)
}

/// Discrete convexity along rows, columns and both diagonals of `region`.
fn line_convexity(h: &PairedFunction, region: &Window, tol: f64) -> Check {
    let (pl, ph) = (region.primal.lo, region.primal.hi);
    let (dl, dh) = (region.dual.lo, region.dual.hi);
    let mut lines: Vec<Vec<(usize, usize)>> = Vec::new();
    for i in pl..=ph {
        lines.push((dl..=dh).map(|j| (i, j)).collect());
    }
    for j in dl..=dh {
        lines.push((pl..=ph).map(|i| (i, j)).collect());
    }
    let (n, m) = ((ph - pl) as isize, (dh - dl) as isize);
    for d in -m..=n {
        // i − j = d (relative), then i + j = d
        lines.push(
            (0..=n)
                .filter_map(|a| {
                    let b = a - d;
                    (0..=m).contains(&b).then(|| ((pl as isize + a) as usize, (dl as isize + b) as usize))
                })
                .collect(),
        );
    }
    for d in 0..=(n + m) {
        lines.push(
            (0..=n)
                .filter_map(|a| {
                    let b = d - a;
                    (0..=m).contains(&b).then(|| ((pl as isize + a) as usize, (dl as isize + b) as usize))
                })
                .collect(),
        );
    }
    let mut worst: Option<(f64, (usize, usize))> = None;
    for line in lines.iter().filter(|l| l.len() >= 3) {
        let vals: Vec<f64> = line.iter().map(|&(i, j)| h.get(i, j)).collect();
        if let Err(nc) = check_convex_slice(&vals, tol) {
            let (k, size) = match nc {
                crate::extgrid::NonConvexity::GappedDomain { gap, .. } => (gap, f64::INFINITY),
                crate::extgrid::NonConvexity::Curvature { index, second_difference } => (index, -second_difference),
            };
            if worst.map_or(true, |(w, _)| size > w) {
                worst = Some((size, line[k]));
            }
        }
    }
    match worst {
        None => Check::pass("convex-along-lines"),
        Some((size, (i, j))) => {
            Check::fail("convex-along-lines", size, Some(Witness::new(h.primal().node(i), h.dual().node(j))))
        }
    }
}

/// `h ≥ c` and `h*ᵀ ≥ c` on the window, the discrete form of the
/// conjugate-duality criterion for maximality of `{h = c}`.
pub fn maximality_certificate(
    h: &PairedFunction,
    window: &Window,
    cfg: &CheckConfig,
    method: JointMethod,
) -> CertificateReport {
    let (primal, dual) = (h.primal(), h.dual());
    let tol = cfg.tol;
    let mut report = CertificateReport::new("maximality");
    report.window = Some(*window);
    report.note("interior condition on the primal projection of dom h holds automatically in finite dimension");
    report.note("maximality is asserted at grid resolution on the window");

    let full = h.full_window();
    let mut below = Scan::default();
    for i in 0..primal.len() {
        for j in 0..dual.len() {
            let v = h.get(i, j);
            if v.is_finite() {
                below.observe(h.coupling_at(i, j) - v, Witness::new(primal.node(i), dual.node(j)));
            }
        }
    }
    let pre = Check::from_scan("dominates-coupling", &below, tol.exact * h.scale_on(&full));
    let pre_ok = pre.passed;
    report.push(pre);
    if !pre_ok {
        report.push(Check::skipped("conjugate-dominates-coupling", "h ≥ c failed"));
        return report;
    }

    let conj = conjugate_transpose(h, method);
    report.truncation_flagged = conj.truncated_in(window);
    let f = &conj.function;
    let scale = f.scale_on(window);
    let mut gap = Scan::default();
    for i in window.primal.indices() {
        for j in window.dual.indices() {
            gap.observe(f.coupling_at(i, j) - f.get(i, j), Witness::new(primal.node(i), dual.node(j)));
        }
    }
    report.push(Check::from_scan("conjugate-dominates-coupling", &gap, tol.approx * scale));
    report
}
