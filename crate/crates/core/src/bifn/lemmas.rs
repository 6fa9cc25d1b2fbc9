use crate::error::{Error, Result};
use crate::extgrid::Grid;
use crate::monop::{conjugate_transpose, IntervalOperator, JointMethod, PairedFunction};
use crate::report::{CertificateReport, Check, CheckConfig, Scan, Window, Witness};

use super::operators::{build_g, build_h, extract_af, extract_fa};
use super::table::{check_bifunction_monotone, BifunctionTable};

/// `upper ≥ lower` wherever `upper` is finite, on `window`.
pub(crate) fn dominance(
    name: &str,
    upper: &PairedFunction,
    lower: impl Fn(usize, usize) -> f64,
    window: &Window,
    tol: f64,
) -> Check {
    let (p, d) = (upper.primal(), upper.dual());
    let mut scan = Scan::default();
    let mut scale: f64 = 0.0;
    for i in window.primal.indices() {
        for j in window.dual.indices() {
            let u = upper.get(i, j);
            if u.is_finite() {
                let l = lower(i, j);
                scale = scale.max(u.abs()).max(l.abs());
                scan.observe(l - u, Witness::new(p.node(i), d.node(j)));
            }
        }
    }
    Check::from_scan(name, &scan, tol * (1.0 + scale))
}

/// The four inequalities `h_F ≥ c`, `g_F ≥ c`, `h_F ≥ g_F` (monotone `F`)
/// and `g_F ≥ h_F*ᵀ` (on the window).
pub fn check_lemma5(f: &BifunctionTable, dual: &Grid, cfg: &CheckConfig) -> CertificateReport {
    let tol = cfg.tol;
    let h = build_h(f, dual);
    let g = build_g(f, dual);
    let full = h.full_window();
    let window = Window::central(f.grid(), dual, cfg.window);
    let mut report = CertificateReport::new("lemma5");
    report.window = Some(window);
    report.push(dominance("h-dominates-coupling", &h, |i, j| h.coupling_at(i, j), &full, tol.exact));
    report.push(dominance("g-dominates-coupling", &g, |i, j| g.coupling_at(i, j), &full, tol.exact));
    let mono = check_bifunction_monotone(f, &tol);
    if mono.passed {
        report.push(dominance("h-above-g", &h, |i, j| g.get(i, j), &full, tol.exact));
    } else {
        report.push(Check::skipped("h-above-g", "bifunction is not monotone"));
    }
    let conj = conjugate_transpose(&h, JointMethod::Fast);
    report.truncation_flagged = conj.truncated_in(&window);
    report.push(dominance("g-above-conjugate", &g, |i, j| conj.function.get(i, j), &window, tol.approx));
    report
}

fn compare_images(
    name: &str,
    grid: &Grid,
    left: &IntervalOperator,
    right: &IntervalOperator,
    tol: f64,
    subset_only: bool,
) -> Check {
    let mut worst: Option<(f64, Witness)> = None;
    for &(i, a) in left.images() {
        let b = right.image(i);
        let ok = if subset_only { a.is_subset_of(&b, tol) } else { a.approx_eq(&b, tol) };
        if ok {
            continue;
        }
        let size = interval_gap(&a, &b);
        let slope = a.point_outside(&b, tol).or_else(|| b.point_outside(&a, tol)).unwrap_or(f64::NAN);
        if worst.map_or(true, |(w, _)| size > w) {
            worst = Some((size, Witness::new(grid.node(i), if slope.is_nan() { 0.0 } else { slope })));
        }
    }
    match worst {
        None => Check::pass(name),
        Some((size, w)) => Check::fail(name, size, Some(w)),
    }
}

/// Largest endpoint discrepancy; `+∞` when exactly one side is empty.
fn interval_gap(a: &crate::fenchel::SlopeInterval, b: &crate::fenchel::SlopeInterval) -> f64 {
    match (a.bounds(), b.bounds()) {
        (None, None) => 0.0,
        (Some((a0, a1)), Some((b0, b1))) => {
            let d = |x: f64, y: f64| if x == y { 0.0 } else { (x - y).abs() };
            d(a0, b0).max(d(a1, b1))
        }
        _ => f64::INFINITY,
    }
}

/// BO-maximality of a monotone `F` as the interval identity `^F A = A^F`,
/// together with the inclusion `A^F ⊆ ^F A` that monotonicity forces.
pub fn check_bo_maximal(f: &BifunctionTable, cfg: &CheckConfig) -> CertificateReport {
    let mono = check_bifunction_monotone(f, &cfg.tol);
    if !mono.passed {
        let why = match mono.witness {
            Some(w) => format!(
                "bifunction is not monotone: F(x,y) + F(y,x) = {} at x={}, y={}",
                mono.worst_violation, w.x, w.s
            ),
            None => "bifunction is not monotone".to_string(),
        };
        let mut r = CertificateReport::not_applicable("bo-maximal", why.clone());
        let mut m = Check::skipped("monotone", why.clone());
        m.witness = mono.witness;
        r.push(m);
        r.push(Check::skipped("monotone-inclusion", why.clone()));
        r.push(Check::skipped("interval-equality", why));
        return r;
    }
    let af = extract_af(f);
    let fa = extract_fa(f);
    let mut r = CertificateReport::new("bo-maximal");
    let tol = cfg.tol.interval;
    r.push(compare_images("monotone-inclusion", f.grid(), &af, &fa, tol, true));
    r.push(compare_images("interval-equality", f.grid(), &fa, &af, tol, false));
    r
}

/// Lemma 4 at `xbar`: (i) `F(y, x̄) ≤ G(x̄, y)` for all `y ∈ C` and (ii)
/// `0 ≤ F(x̄, y) + G(x̄, y)` for all `y ∈ C`. The direction (ii) ⇒ (i) needs
/// only monotonicity of `F`; (i) ⇒ (ii) also needs convexity of `F(x, ·)`
/// and `G(x, ·)`.
pub fn check_lemma4(
    f: &BifunctionTable,
    g: &BifunctionTable,
    xbar: usize,
    cfg: &CheckConfig,
) -> Result<CertificateReport> {
    if !f.same_shape(g) {
        return Err(Error::Mismatch("lemma 4 needs F and G on the same grid and domain".into()));
    }
    if !f.domain().contains(xbar) {
        return Err(Error::OutsideC(xbar));
    }
    let grid = f.grid();
    let scale = 1.0 + f.max_abs().max(g.max_abs());
    let tol = cfg.tol.exact * scale;
    let mut first = Scan::default();
    let mut second = Scan::default();
    for y in f.domain().indices() {
        let w = Witness::new(grid.node(xbar), grid.node(y));
        first.observe(f.value(y, xbar) - g.value(xbar, y), w);
        second.observe(-(f.value(xbar, y) + g.value(xbar, y)), w);
    }
    let holds_i = first.worst <= tol;
    let holds_ii = second.worst <= tol;
    let pf = f.profile(&cfg.tol);
    let pg = g.profile(&cfg.tol);

    let mut r = CertificateReport::new("lemma4");
    r.note(format!("statement (i) holds: {holds_i}; statement (ii) holds: {holds_ii}"));
    if pf.monotone {
        let c = if !holds_ii || holds_i {
            Check::pass("ii-implies-i")
        } else {
            Check::from_scan("ii-implies-i", &first, tol)
        };
        r.push(c);
    } else {
        r.push(Check::skipped("ii-implies-i", "F is not monotone"));
    }
    if pf.monotone && pf.convex_in_y && pg.convex_in_y {
        let c = if !holds_i || holds_ii {
            Check::pass("i-implies-ii")
        } else {
            Check::from_scan("i-implies-ii", &second, tol)
        };
        r.push(c);
    } else {
        let why = if !pf.monotone {
            "F is not monotone"
        } else if !pf.convex_in_y {
            "F(x, ·) is not convex"
        } else {
            "G(x, ·) is not convex"
        };
        r.push(Check::skipped("i-implies-ii", why));
    }
    Ok(r)
}

/// `G(^F A) ⊆ G(A^F)` for `F` convex in its second argument, cross-checked
/// against the BO report when `F` is monotone.
pub fn check_lemma_le0(f: &BifunctionTable, cfg: &CheckConfig) -> CertificateReport {
    let profile = f.profile(&cfg.tol);
    if !profile.convex_in_y {
        let mut r = CertificateReport::not_applicable("lemma-le0", "F(x, ·) is not convex");
        let mut c = Check::skipped("inclusion", "F(x, ·) is not convex");
        c.witness = profile.witness("convexInY").map(|w| w.witness);
        r.push(c);
        return r;
    }
    let af = extract_af(f);
    let fa = extract_fa(f);
    let mut r = CertificateReport::new("lemma-le0");
    let inclusion = compare_images("inclusion", f.grid(), &fa, &af, cfg.tol.interval, true);
    let included = inclusion.passed;
    r.push(inclusion);
    if profile.monotone {
        let bo = check_bo_maximal(f, cfg);
        let equal = bo.check("interval-equality").is_some_and(|c| c.passed);
        let c = if equal == included {
            Check::pass("consistent-with-bo")
        } else {
            Check::fail("consistent-with-bo", 1.0, None)
                .with_note(format!("inclusion {included} but BO interval equality {equal}"))
        };
        r.push(c);
    } else {
        r.push(Check::skipped("consistent-with-bo", "bifunction is not monotone"));
    }
    r
}
