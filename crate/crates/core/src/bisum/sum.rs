use crate::bifn::{build_h, check_bifunction_monotone, extract_af, BifunctionTable};
use crate::error::{Error, Result};
use crate::extgrid::Grid;
use crate::fenchel::SlopeInterval;
use crate::monop::{
    conjugate_transpose, convex_closure, maximality_certificate, IntervalOperator, JointMethod, PairedFunction,
};
use crate::report::{CertificateReport, Check, CheckConfig, Scan, Window, Witness};

use super::qualification::qualification_ri;

/// Entry-wise `F + G`; both tables must share grid and domain.
pub fn sum_bifunctions(f: &BifunctionTable, g: &BifunctionTable) -> Result<BifunctionTable> {
    let s = f.zip_with(g, |a, b| a + b)?;
    BifunctionTable::new(*s.grid(), s.domain(), s.raw().to_vec())
}

/// `(h1 □₂ h2)(x, s) = min_σ h1(x, σ) + h2(x, s − σ)` over dual nodes with
/// `s − σ` on the grid. The dual grid must be shared and symmetric.
pub fn inf_convolution2(h1: &PairedFunction, h2: &PairedFunction) -> Result<PairedFunction> {
    if h1.primal() != h2.primal() || h1.dual() != h2.dual() {
        return Err(Error::Mismatch("inf-convolution needs identical grids".into()));
    }
    let dual = h1.dual();
    if !dual.is_symmetric() {
        return Err(Error::AsymmetricDual);
    }
    let (n, m) = (h1.primal().len(), dual.len());
    let z = (m - 1) / 2;
    let mut values = vec![f64::INFINITY; n * m];
    for i in 0..n {
        let (r1, r2) = (h1.row(i), h2.row(i));
        for j in 0..m {
            let mut best = f64::INFINITY;
            // index of s_j − σ_k is j − k + z
            let k_lo = (j + z).saturating_sub(m - 1);
            let k_hi = (j + z).min(m - 1);
            for k in k_lo..=k_hi {
                let v = r1[k] + r2[j + z - k];
                if v < best {
                    best = v;
                }
            }
            values[i * m + j] = best;
        }
    }
    PairedFunction::from_f64(*h1.primal(), *dual, values)
}

fn interval_check(
    name: &str,
    grid: &Grid,
    pairs: impl Iterator<Item = (usize, SlopeInterval, SlopeInterval)>,
    tol: f64,
    subset_only: bool,
) -> Check {
    let mut worst: Option<(f64, Witness)> = None;
    for (i, a, b) in pairs {
        let ok = if subset_only { a.is_subset_of(&b, tol) } else { a.approx_eq(&b, tol) };
        if ok {
            continue;
        }
        let gap = match (a.bounds(), b.bounds()) {
            (Some((a0, a1)), Some((b0, b1))) => {
                let d = |x: f64, y: f64| if x == y { 0.0 } else { (x - y).abs() };
                d(a0, b0).max(d(a1, b1))
            }
            _ => f64::INFINITY,
        };
        if worst.map_or(true, |(w, _)| gap > w) {
            let s = a.point_outside(&b, tol).or_else(|| b.point_outside(&a, tol)).unwrap_or(0.0);
            worst = Some((gap, Witness::new(grid.node(i), s)));
        }
    }
    match worst {
        None => Check::pass(name),
        Some((gap, w)) => Check::fail(name, gap, Some(w)),
    }
}

fn sum_rule_pairs<'a>(
    af: &'a IntervalOperator,
    ag: &'a IntervalOperator,
    asum: &'a IntervalOperator,
) -> impl Iterator<Item = (usize, SlopeInterval, SlopeInterval)> + 'a {
    af.images().iter().map(move |&(i, a)| (i, a.minkowski_sum(&ag.image(i)), asum.image(i)))
}

/// `A^F(x) + A^G(x) ⊆ A^{F+G}(x)` at every node, and monotonicity of `F + G`
/// when both summands are monotone.
pub fn check_lemma14(f: &BifunctionTable, g: &BifunctionTable, cfg: &CheckConfig) -> Result<CertificateReport> {
    let s = sum_bifunctions(f, g)?;
    let (af, ag, asum) = (extract_af(f), extract_af(g), extract_af(&s));
    let mut r = CertificateReport::new("lemma14");
    let empty = af.images().iter().filter(|&&(i, a)| a.minkowski_sum(&ag.image(i)).is_empty()).count();
    if empty > 0 {
        r.note(format!("inclusion is vacuous at {empty} nodes where A^F + A^G is empty"));
    }
    r.push(interval_check("inclusion", f.grid(), sum_rule_pairs(&af, &ag, &asum), cfg.tol.interval, true));
    let both = check_bifunction_monotone(f, &cfg.tol).passed && check_bifunction_monotone(g, &cfg.tol).passed;
    if both {
        let mut c = check_bifunction_monotone(&s, &cfg.tol);
        c.name = "sum-monotone".into();
        r.push(c);
    } else {
        r.push(Check::skipped("sum-monotone", "a summand is not monotone"));
    }
    Ok(r)
}

/// Per-row Minkowski sum of the dual-node samples of two interval operators.
fn sampled_sum_graph(af: &IntervalOperator, ag: &IntervalOperator, dual: &Grid, tol: f64) -> Vec<(usize, usize)> {
    let (rf, rg) = (af.sampled_rows(dual, tol), ag.sampled_rows(dual, tol));
    let m = dual.len();
    let z = (m - 1) / 2;
    let mut out = Vec::new();
    for (i, (a, b)) in rf.iter().zip(&rg).enumerate() {
        let mut js: Vec<usize> = a
            .iter()
            .flat_map(|&ja| b.iter().map(move |&jb| ja + jb))
            .filter(|&t| t >= z && t - z < m)
            .map(|t| t - z)
            .collect();
        js.sort_unstable();
        js.dedup();
        out.extend(js.into_iter().map(|j| (i, j)));
    }
    out
}

/// The sum theorem for maximal monotone `F`, `G` under the relative-interior
/// qualification: with `f_F = co̅h_F`, `f_G = co̅h_G` and `k = f_F □₂ f_G`,
/// (a) `k ≥ c`, (b) `k = c` on `G(A^F + A^G)`, (c) `k` passes the
/// maximality certificate, (d) `A^F + A^G = A^{F+G}` and (e)
/// `k*ᵀ ≤ h_{F+G}*ᵀ`.
pub fn check_theorem15(
    f: &BifunctionTable,
    g: &BifunctionTable,
    dual: &Grid,
    cfg: &CheckConfig,
) -> Result<CertificateReport> {
    if f.grid() != g.grid() {
        return Err(Error::Mismatch("F and G live on different grids".into()));
    }
    if !dual.is_symmetric() {
        return Err(Error::AsymmetricDual);
    }
    let grid = *f.grid();
    let q = qualification_ri(f, g);
    if !q.zero_in_ri {
        let detail = match q.difference {
            Some((lo, hi)) => format!("0 not in ri of D(A^F) − D(A^G) = [{lo}, {hi}]"),
            None => "0 not in ri: a domain is empty".to_string(),
        };
        return Ok(skipped_theorem15(detail));
    }
    if f.domain() != g.domain() {
        return Ok(skipped_theorem15("F and G are defined on different sets C".into()));
    }

    let window = Window::central(&grid, dual, cfg.window);
    let (hf, hg) = (build_h(f, dual), build_h(g, dual));
    let (ff, fg) = (convex_closure(&hf, JointMethod::Fast).function, convex_closure(&hg, JointMethod::Fast).function);
    for (label, p) in [("F", &ff), ("G", &fg)] {
        let cert = maximality_certificate(p, &window, cfg, JointMethod::Fast);
        if !cert.passed {
            return Ok(skipped_theorem15(format!("{label} failed its maximality certificate")));
        }
    }

    let mut r = CertificateReport::new("theorem15");
    r.window = Some(window);
    r.note("maximality of F and G is taken from their certificates at grid resolution on the window");
    r.note(format!("qualification: {:?}", q.case));
    let k = inf_convolution2(&ff, &fg)?;
    let scale = k.scale_on(&window);
    let tol = cfg.tol;

    let mut below = Scan::default();
    for i in window.primal.indices() {
        for j in window.dual.indices() {
            let v = k.get(i, j);
            if v.is_finite() {
                below.observe(k.coupling_at(i, j) - v, Witness::new(grid.node(i), dual.node(j)));
            }
        }
    }
    r.push(Check::from_scan("dominates-coupling", &below, tol.approx * scale));

    let (af, ag) = (extract_af(f), extract_af(g));
    let mut on_graph = Scan::default();
    for (i, j) in sampled_sum_graph(&af, &ag, dual, tol.interval) {
        if window.contains(i, j) {
            on_graph.observe((k.get(i, j) - k.coupling_at(i, j)).abs(), Witness::new(grid.node(i), dual.node(j)));
        }
    }
    r.push(Check::from_scan("equal-on-sum-graph", &on_graph, tol.approx * scale));

    let cert = maximality_certificate(&k, &window, cfg, JointMethod::Fast);
    r.absorb("certificate", cert);

    let s = sum_bifunctions(f, g)?;
    let asum = extract_af(&s);
    r.push(interval_check("sum-rule", &grid, sum_rule_pairs(&af, &ag, &asum), tol.interval, false));

    let kc = conjugate_transpose(&k, JointMethod::Fast).function;
    let hs = conjugate_transpose(&build_h(&s, dual), JointMethod::Fast).function;
    let mut above = Scan::default();
    for i in window.primal.indices() {
        for j in window.dual.indices() {
            above.observe(kc.get(i, j) - hs.get(i, j), Witness::new(grid.node(i), dual.node(j)));
        }
    }
    let cscale = kc.scale_on(&window).max(hs.scale_on(&window));
    r.push(Check::from_scan("conjugate-below-sum-conjugate", &above, tol.approx * cscale));
    Ok(r)
}

fn skipped_theorem15(detail: String) -> CertificateReport {
    let mut r = CertificateReport::not_applicable("theorem15", detail.clone());
    for name in ["dominates-coupling", "equal-on-sum-graph", "certificate", "sum-rule", "conjugate-below-sum-conjugate"]
    {
        r.push(Check::skipped(name, detail.clone()));
    }
    r
}

/// Sum rule `A^F + A^G = A^{F+G}` for monotone `F`, `G` convex in `y` on a
/// shared `C`, where `0 ∈ ri(C − C)` always holds. Also checks the chain
/// `co̅h_{F+G} ≥ h_{F+G}*ᵀ ≥ c` on the window.
pub fn check_prop16(
    f: &BifunctionTable,
    g: &BifunctionTable,
    dual: &Grid,
    cfg: &CheckConfig,
) -> Result<CertificateReport> {
    if !f.same_shape(g) {
        return Err(Error::Mismatch("F and G must share grid and C".into()));
    }
    let (pf, pg) = (f.profile(&cfg.tol), g.profile(&cfg.tol));
    let unmet = [
        (pf.monotone, "F is not monotone"),
        (pg.monotone, "G is not monotone"),
        (pf.convex_in_y, "F(x, ·) is not convex"),
        (pg.convex_in_y, "G(x, ·) is not convex"),
    ]
    .into_iter()
    .find(|(ok, _)| !ok);
    if let Some((_, why)) = unmet {
        let mut r = CertificateReport::not_applicable("prop16", why);
        for name in ["sum-rule", "chain/closure-above-conjugate", "chain/conjugate-above-coupling"] {
            r.push(Check::skipped(name, why));
        }
        return Ok(r);
    }
    let mut r = CertificateReport::new("prop16");
    r.note("0 ∈ ri(C − C) holds for every node interval C");
    let s = sum_bifunctions(f, g)?;
    let (af, ag, asum) = (extract_af(f), extract_af(g), extract_af(&s));
    r.push(interval_check("sum-rule", f.grid(), sum_rule_pairs(&af, &ag, &asum), cfg.tol.interval, false));

    let window = Window::central(f.grid(), dual, cfg.window);
    r.window = Some(window);
    let h = build_h(&s, dual);
    let closure = convex_closure(&h, JointMethod::Fast).function;
    let conj = conjugate_transpose(&h, JointMethod::Fast);
    r.truncation_flagged = conj.truncated_in(&window);
    let hs = &conj.function;
    let grid = f.grid();
    let mut first = Scan::default();
    let mut second = Scan::default();
    for i in window.primal.indices() {
        for j in window.dual.indices() {
            let w = Witness::new(grid.node(i), dual.node(j));
            let cv = closure.get(i, j);
            if cv.is_finite() {
                first.observe(hs.get(i, j) - cv, w);
            }
            second.observe(hs.coupling_at(i, j) - hs.get(i, j), w);
        }
    }
    let scale = hs.scale_on(&window);
    r.push(Check::from_scan("chain/closure-above-conjugate", &first, cfg.tol.approx * scale));
    r.push(Check::from_scan("chain/conjugate-above-coupling", &second, cfg.tol.approx * scale));
    r.note("the chain alone does not certify maximality of F + G");
    Ok(r)
}
