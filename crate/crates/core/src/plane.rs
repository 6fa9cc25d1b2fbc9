//! Experimental: bifunctions on a box `C` of a two-dimensional grid.
//!
//! Images of `A^F` and `^F A` are not intervals here; they are represented
//! by the dual-grid nodes satisfying the defining inequalities, so results
//! hold at grid resolution only.

use crate::error::{Error, Result};
use crate::extgrid::{Grid, SubInterval};
use crate::report::{CertificateReport, Check, Scan, Tolerances, Witness};

/// Tensor grid `X = ℝ²` sampled as `axis × axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2 {
    pub first: Grid,
    pub second: Grid,
}

impl Grid2 {
    pub fn node(&self, (i, j): (usize, usize)) -> [f64; 2] {
        [self.first.node(i), self.second.node(j)]
    }
}

/// Node-aligned box `C = C₁ × C₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeBox {
    pub first: SubInterval,
    pub second: SubInterval,
}

impl NodeBox {
    pub fn points(&self) -> Vec<(usize, usize)> {
        self.first.indices().flat_map(|i| self.second.indices().map(move |j| (i, j))).collect()
    }
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// `F(p, q)` for box points `p`, `q`, row-major in `p`.
#[derive(Debug, Clone)]
pub struct BifunctionTable2 {
    grid: Grid2,
    domain: NodeBox,
    points: Vec<(usize, usize)>,
    values: Vec<f64>,
}

impl BifunctionTable2 {
    pub fn sample(grid: Grid2, domain: NodeBox, f: impl Fn([f64; 2], [f64; 2]) -> f64) -> Result<Self> {
        let points = domain.points();
        let mut values = Vec::with_capacity(points.len() * points.len());
        for &p in &points {
            for &q in &points {
                values.push(f(grid.node(p), grid.node(q)));
            }
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        let k = points.len();
        for a in 0..k {
            let v = values[a * k + a];
            if v.abs() > 1e-12 {
                return Err(Error::NonzeroDiagonal { x: grid.node(points[a])[0], value: v });
            }
        }
        Ok(Self { grid, domain, points, values })
    }

    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    pub fn domain(&self) -> NodeBox {
        self.domain
    }

    fn value(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.points.len() + b]
    }

    pub fn check_monotone(&self, tol: &Tolerances) -> Check {
        let k = self.points.len();
        let scale = 1.0 + self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut scan = Scan::default();
        for a in 0..k {
            for b in a..k {
                let p = self.grid.node(self.points[a]);
                scan.observe(self.value(a, b) + self.value(b, a), Witness::new(p[0], p[1]));
            }
        }
        Check::from_scan("monotone", &scan, tol.exact * scale)
    }

    /// Dual nodes `s` with `F(p, q) ≥ ⟨s, q − p⟩ − tol` for all `q ∈ C`.
    pub fn upper_image(&self, a: usize, dual: &Grid2, tol: f64) -> Vec<(usize, usize)> {
        self.image(dual, tol, a, |b| self.value(a, b))
    }

    /// Dual nodes `s` with `−F(q, p) ≥ ⟨s, q − p⟩ − tol` for all `q ∈ C`.
    pub fn lower_image(&self, a: usize, dual: &Grid2, tol: f64) -> Vec<(usize, usize)> {
        self.image(dual, tol, a, |b| -self.value(b, a))
    }

    fn image(&self, dual: &Grid2, tol: f64, a: usize, lhs: impl Fn(usize) -> f64) -> Vec<(usize, usize)> {
        let p = self.grid.node(self.points[a]);
        let mut out = Vec::new();
        for i in 0..dual.first.len() {
            for j in 0..dual.second.len() {
                let s = dual.node((i, j));
                let ok = (0..self.points.len()).all(|b| {
                    let q = self.grid.node(self.points[b]);
                    lhs(b) >= dot(s, sub(q, p)) - tol
                });
                if ok {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// BO comparison of the sampled images: every node of `A^F(p)` must lie in
/// `^F A(p)` when `F` is monotone, and BO-maximality asks for equality.
pub fn check_bo_maximal2(f: &BifunctionTable2, dual: &Grid2, tol: &Tolerances) -> CertificateReport {
    let mono = f.check_monotone(tol);
    if !mono.passed {
        let mut r = CertificateReport::not_applicable("bo-maximal-2d", "bifunction is not monotone");
        r.push(Check::skipped("monotone", "bifunction is not monotone"));
        return r;
    }
    let mut r = CertificateReport::new("bo-maximal-2d");
    r.note("images sampled on dual nodes; experimental");
    let mut inclusion: Option<Witness> = None;
    let mut equality: Option<Witness> = None;
    for a in 0..f.points().len() {
        let up = f.upper_image(a, dual, tol.interval);
        let low = f.lower_image(a, dual, tol.interval);
        let p = f.grid.node(f.points()[a]);
        if inclusion.is_none() && up.iter().any(|s| !low.contains(s)) {
            inclusion = Some(Witness::new(p[0], p[1]));
        }
        if equality.is_none() && up != low {
            equality = Some(Witness::new(p[0], p[1]));
        }
    }
    for (name, bad) in [("monotone-inclusion", inclusion), ("image-equality", equality)] {
        r.push(match bad {
            None => Check::pass(name),
            Some(w) => Check::fail(name, 1.0, Some(w)),
        });
    }
    r
}
