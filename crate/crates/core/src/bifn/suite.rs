use serde::{Deserialize, Serialize};

use crate::extgrid::Grid;
use crate::fenchel::convex_envelope;
use crate::monop::{
    compare_equality_sets, conjugate_transpose, convex_closure, equality_set, maximality_certificate,
    verify_representative, JointMethod,
};
use crate::report::{CertificateReport, Check, CheckConfig, Window};
use crate::GridFunction;

use super::lemmas::{check_bo_maximal, dominance};
use super::operators::{build_h, extract_af};
use super::table::{BifunctionTable, HypothesisProfile};

/// Which maximality results have their hypotheses met by a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Applicability {
    /// Convex in `y`, concave in `x`.
    pub convex_concave: bool,
    /// Monotone and convex in `y`.
    pub monotone_convex: bool,
    /// Monotone with `D(A^F)` the whole grid.
    pub full_domain: bool,
    /// BO-maximal and convex in `y`.
    pub bo_convex: bool,
}

impl Applicability {
    pub fn any(&self) -> bool {
        self.convex_concave || self.monotone_convex || self.full_domain || self.bo_convex
    }
}

fn flag_reason(profile: &HypothesisProfile, flag: &str, text: &str) -> String {
    match profile.witness(flag) {
        Some(w) => format!("{text} (witness x={}, y={})", w.witness.x, w.witness.s),
        None => text.to_string(),
    }
}

/// Runs every maximality result whose hypotheses the table meets: the
/// chain `h_F ≥ co̅h_F ≥ h_F*ᵀ ≥ c`, the projection inclusions, the
/// equality-set identity against `G(A^F)`, the maximality certificate of
/// `co̅h_F`, the interval identity `A^F = ^F A` for convex–concave tables,
/// the representative checks for `co̅h_F` and `h_F*ᵀ`, and for full-domain
/// tables the auxiliary bifunction built from row envelopes.
pub fn theorem_suite(f: &BifunctionTable, dual: &Grid, cfg: &CheckConfig) -> CertificateReport {
    let tol = cfg.tol;
    let grid = *f.grid();
    let profile = f.profile(&tol);
    let af = extract_af(f);
    let full_grid = f.domain() == grid.full();
    let af_full = af.domain().len() == f.domain().len();
    let bo = profile.monotone && check_bo_maximal(f, cfg).passed;
    let app = Applicability {
        convex_concave: profile.convex_in_y && profile.concave_in_x,
        monotone_convex: profile.monotone && profile.convex_in_y,
        full_domain: profile.monotone && af_full && full_grid,
        bo_convex: bo && profile.convex_in_y,
    };

    let mut report = CertificateReport::new("theorems");
    report.note(HypothesisProfile::PROXY_NOTE);
    report.note(format!(
        "hypotheses: monotone={}, convexInY={}, concaveInX={}",
        profile.monotone, profile.convex_in_y, profile.concave_in_x
    ));
    let mono_reason = flag_reason(&profile, "monotone", "F is not monotone");
    let convex_reason = flag_reason(&profile, "convexInY", "F(x, ·) is not convex");
    let concave_reason = flag_reason(&profile, "concaveInX", "F(·, y) is not concave");

    if !app.any() {
        report.applicable = false;
        let cc = if profile.convex_in_y { concave_reason.clone() } else { convex_reason.clone() };
        let mc = if profile.monotone { convex_reason.clone() } else { mono_reason.clone() };
        let fd = if !profile.monotone {
            mono_reason.clone()
        } else if !af_full {
            "D(A^F) is not all of C".to_string()
        } else {
            "C is not the whole grid".to_string()
        };
        let bc = if profile.convex_in_y { "F is not BO-maximal".to_string() } else { convex_reason.clone() };
        for (name, why) in [("convex-concave", cc), ("monotone-convex", mc), ("full-domain", fd), ("bo-convex", bc)] {
            report.push(Check::skipped(name, why));
        }
        return report;
    }

    let window = Window::central(&grid, dual, cfg.window);
    report.window = Some(window);
    let h = build_h(f, dual);
    let conj = conjugate_transpose(&h, JointMethod::Fast);
    let closure = convex_closure(&h, JointMethod::Fast);
    report.truncation_flagged = conj.truncated_in(&window);
    let (hc, hs) = (&closure.function, &conj.function);
    let full = h.full_window();

    report.push(dominance("chain/h-above-closure", &h, |i, j| hc.get(i, j), &full, tol.approx));
    report.push(dominance("chain/closure-above-conjugate", hc, |i, j| hs.get(i, j), &window, tol.approx));
    report.push(dominance("chain/conjugate-above-coupling", hs, |i, j| hs.coupling_at(i, j), &window, tol.exact));

    let rows = |p: &crate::monop::PairedFunction| -> Vec<usize> {
        (0..grid.len()).filter(|&i| (0..dual.len()).any(|j| p.is_finite_at(i, j))).collect()
    };
    let (dom_h, dom_closure) = (rows(&h), rows(hc));
    let hull = dom_h.first().copied().unwrap_or(0)..=dom_h.last().copied().unwrap_or(0);
    let e5 = dom_h.iter().all(|i| dom_closure.contains(i)) && dom_closure.iter().all(|i| hull.contains(i));
    report.push(if e5 {
        Check::pass("projection-domains")
    } else {
        Check::fail("projection-domains", 1.0, None)
            .with_note(format!("pr dom h = {dom_h:?}, pr dom closure = {dom_closure:?}"))
    });

    let graph = af.to_graph(dual, tol.interval);
    for (name, p) in [("equality-set/closure", hc), ("equality-set/conjugate", hs)] {
        let check = match compare_equality_sets(&equality_set(p, tol.equality), &graph, &grid, dual, &window) {
            Ok(cmp) if cmp.within_resolution(dual) => Check::pass(name),
            Ok(cmp) => Check::fail(name, cmp.worst_distance, cmp.witness),
            Err(e) => Check::fail(name, f64::INFINITY, None).with_note(e.to_string()),
        };
        report.push(check);
    }

    let cert = maximality_certificate(hc, &window, cfg, JointMethod::Fast);
    let certified = cert.passed;
    report.absorb("certificate", cert);

    if app.convex_concave {
        let fa = super::operators::extract_fa(f);
        let mut worst: Option<(f64, crate::Witness)> = None;
        for &(i, a) in af.images() {
            let b = fa.image(i);
            if !a.approx_eq(&b, tol.interval) {
                let gap = match (a.bounds(), b.bounds()) {
                    (Some((a0, a1)), Some((b0, b1))) => (a0 - b0).abs().max((a1 - b1).abs()),
                    _ => f64::INFINITY,
                };
                if worst.map_or(true, |(w, _)| gap > w) {
                    let s = b.point_outside(&a, tol.interval).or_else(|| a.point_outside(&b, tol.interval));
                    worst = Some((gap, crate::Witness::new(grid.node(i), s.unwrap_or(0.0))));
                }
            }
        }
        report.push(match worst {
            None => Check::pass("convex-concave/interval-equality"),
            Some((gap, w)) => Check::fail("convex-concave/interval-equality", gap, Some(w)),
        });
    } else {
        report.push(Check::skipped("convex-concave/interval-equality", concave_reason.clone()));
    }

    if certified && !graph.is_empty() {
        for (name, p) in [("representative-closure", hc), ("representative-conjugate", hs)] {
            match verify_representative(p, &graph, true, Some(&window), cfg) {
                Ok(r) => report.absorb(name, r),
                Err(e) => report.push(Check::fail(name, f64::INFINITY, None).with_note(e.to_string())),
            }
        }
    } else {
        let why = if certified { "A^F has no dual-node images" } else { "certificate failed" };
        report.push(Check::skipped("representative-closure", why));
        report.push(Check::skipped("representative-conjugate", why));
    }

    if app.full_domain {
        push_envelope_checks(&mut report, f, cfg);
    } else {
        let why = if !profile.monotone {
            mono_reason
        } else if !af_full {
            "D(A^F) is not all of C".into()
        } else {
            "C is not the whole grid".into()
        };
        report.push(Check::skipped("full-domain/envelope-diagonal", why.clone()));
        report.push(Check::skipped("full-domain/envelope-inclusion", why));
    }
    report
}

/// `H(x, y)` = lower convex envelope of `F(x, ·)` at `y`: its diagonal must
/// vanish and `G(^H A) ⊆ G(A^H)` must hold.
fn push_envelope_checks(report: &mut CertificateReport, f: &BifunctionTable, cfg: &CheckConfig) {
    let grid = *f.grid();
    let c = f.domain();
    let mut values = Vec::with_capacity(c.len() * c.len());
    for i in c.indices() {
        let row = GridFunction::from_f64(grid, f.row(i)).ok();
        // the domain is the whole grid here, so rows are full grid functions
        let env = row.map(|r| convex_envelope(&r).to_f64_vec()).unwrap_or_else(|| f.row(i).to_vec());
        values.extend(env);
    }
    let h = match BifunctionTable::with_any_diagonal(grid, c, values) {
        Ok(h) => h,
        Err(e) => {
            report.push(Check::fail("full-domain/envelope-diagonal", f64::INFINITY, None).with_note(e.to_string()));
            return;
        }
    };
    let mut scan = crate::report::Scan::default();
    for i in c.indices() {
        scan.observe(h.value(i, i).abs(), crate::Witness::new(grid.node(i), grid.node(i)));
    }
    let tol = cfg.tol.approx * (1.0 + f.max_abs());
    report.push(Check::from_scan("full-domain/envelope-diagonal", &scan, tol));
    let ah = extract_af(&h);
    let ha = super::operators::extract_fa(&h);
    let mut bad: Option<crate::Witness> = None;
    let mut worst: f64 = 0.0;
    for &(i, a) in ha.images() {
        let b = ah.image(i);
        if !a.is_subset_of(&b, cfg.tol.interval) {
            let gap = match (a.bounds(), b.bounds()) {
                (Some((a0, a1)), Some((b0, b1))) => (b0 - a0).max(a1 - b1),
                _ => f64::INFINITY,
            };
            if gap > worst || bad.is_none() {
                worst = gap;
                bad = Some(crate::Witness::new(grid.node(i), a.point_outside(&b, cfg.tol.interval).unwrap_or(0.0)));
            }
        }
    }
    report.push(match bad {
        None => Check::pass("full-domain/envelope-inclusion"),
        Some(w) => Check::fail("full-domain/envelope-inclusion", worst, Some(w)),
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extgrid::SubInterval;

    fn grid(n: usize) -> Grid {
        Grid::new(-2.0, 2.0, n).unwrap()
    }

    fn sub(g: &Grid, lo: f64, hi: f64) -> SubInterval {
        SubInterval::new(g.index_of(lo, 1e-9).unwrap(), g.index_of(hi, 1e-9).unwrap(), g).unwrap()
    }

    #[test]
    fn skew_abs_runs_monotone_convex_path() {
        let g = grid(81);
        let f = BifunctionTable::skew(g, g.full(), f64::abs).unwrap();
        let r = theorem_suite(&f, &g, &CheckConfig::default());
        assert!(r.passed, "{r:#?}");
        assert!(r.check("certificate/conjugate-dominates-coupling").unwrap().passed);
        assert!(r.check("full-domain/envelope-inclusion").unwrap().applicable);
    }

    #[test]
    fn neg_distance_is_all_skipped() {
        let g = grid(81);
        let f = BifunctionTable::sample(g, sub(&g, 0.0, 1.0), |x, y| -(y - x).abs()).unwrap();
        let r = theorem_suite(&f, &g, &CheckConfig::default());
        assert!(!r.applicable);
        assert!(r.checks.iter().all(|c| !c.applicable));
    }

    #[test]
    fn saddle_certificate_passes() {
        let g = grid(81);
        let f = BifunctionTable::sample(g, sub(&g, -1.0, 1.0), |x, y| x * (y - x)).unwrap();
        let r = theorem_suite(&f, &g, &CheckConfig::default());
        assert!(r.check("certificate/conjugate-dominates-coupling").unwrap().passed, "{r:#?}");
        // the grid intervals of ^F A are one step wider than A^F
        assert!(!r.check("convex-concave/interval-equality").unwrap().passed);
    }
}
