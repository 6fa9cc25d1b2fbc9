use crate::extgrid::GridFunction;
use crate::report::{CertificateReport, Check, Scan, Tolerances, Witness};

use super::subdifferential;

#[derive(Debug, Clone)]
pub struct YoungReport {
    pub report: CertificateReport,
    /// `(primal index, dual index)` pairs with `f*(s) + f(x) = s·x`.
    pub equality_pairs: Vec<(usize, usize)>,
}

/// Scans `f*(s) + f(x) ≥ s·x` over every node pair and cross-checks each
/// equality pair against `s ∈ ∂f(x)` (widened by one primal step), and each
/// subgradient against equality.
pub fn check_young(f: &GridFunction, fstar: &GridFunction, tol: &Tolerances) -> YoungReport {
    let pg = *f.grid();
    let dg = *fstar.grid();
    let fv = f.to_f64_vec();
    let sv = fstar.to_f64_vec();
    let xmax = pg.lo().abs().max(pg.hi().abs());
    let smax = dg.lo().abs().max(dg.hi().abs());
    let scale = 1.0 + f.max_abs_finite().max(fstar.max_abs_finite()).max(xmax * smax);
    let eq_tol = tol.equality * scale;

    let mut inequality = Scan::default();
    let mut forward = Scan::default();
    let mut backward = Scan::default();
    let mut pairs = Vec::new();
    for i in f.effective_domain() {
        let x = pg.node(i);
        let sub = subdifferential(f, i).expect("i is in the domain");
        for (j, s) in dg.nodes().enumerate() {
            if !sv[j].is_finite() {
                continue;
            }
            let gap = sv[j] + fv[i] - s * x;
            inequality.observe(-gap, Witness::new(x, s));
            let is_eq = gap.abs() <= eq_tol;
            if is_eq {
                pairs.push((i, j));
                let miss = if sub.contains(s, pg.step()) { 0.0 } else { 1.0 };
                forward.observe(miss, Witness::new(x, s));
            }
            if sub.contains(s, tol.interval) {
                backward.observe(gap.abs() - eq_tol, Witness::new(x, s));
            }
        }
    }
    let mut report = CertificateReport::new("young");
    report.push(Check::from_scan("young-inequality", &inequality, tol.exact * scale));
    report.push(Check::from_scan("equality-implies-subgradient", &forward, 0.5));
    report.push(Check::from_scan("subgradient-implies-equality", &backward, 0.0));
    report.note(format!("{} equality pairs", pairs.len()));
    YoungReport { report, equality_pairs: pairs }
}
