use crate::error::{Error, Result};
use crate::extgrid::Grid;

use super::graph::OperatorGraph;
use super::paired::PairedFunction;

/// Largest graph accepted by [`psi_envelope`].
pub const PSI_GRAPH_LIMIT: usize = 50;

const GEOM_TOL: f64 = 1e-9;
const BARY_TOL: f64 = -1e-12;

/// `φ(x, s) = max over graph pairs (y, y*) of y*·x + s·y − y·y*`.
pub fn fitzpatrick(g: &OperatorGraph, primal: &Grid, dual: &Grid) -> Result<PairedFunction> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    PairedFunction::sample(*primal, *dual, |x, s| {
        g.pairs().iter().fold(f64::NEG_INFINITY, |m, &(y, ys)| m.max(ys * x + s * y - y * ys))
    })
}

/// `ψ = co̅(c + δ_G)` at the node pairs: the least value `Σ λ_k·y_k·y*_k`
/// over convex combinations of at most three graph pairs hitting the node,
/// `+∞` off the convex hull of the graph.
pub fn psi_envelope(g: &OperatorGraph, primal: &Grid, dual: &Grid) -> Result<PairedFunction> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.len() > PSI_GRAPH_LIMIT {
        return Err(Error::GraphTooLarge { got: g.len(), limit: PSI_GRAPH_LIMIT });
    }
    let mut env = Envelope::new(primal, dual);
    let p = g.pairs();
    for &a in p {
        env.point(a);
    }
    for (k, &a) in p.iter().enumerate() {
        for &b in &p[k + 1..] {
            env.segment(a, b);
        }
    }
    for (k, &a) in p.iter().enumerate() {
        for (l, &b) in p.iter().enumerate().skip(k + 1) {
            for &c in &p[l + 1..] {
                env.triangle(a, b, c);
            }
        }
    }
    PairedFunction::from_f64(*primal, *dual, env.values)
}

struct Envelope<'a> {
    primal: &'a Grid,
    dual: &'a Grid,
    values: Vec<f64>,
}

impl<'a> Envelope<'a> {
    fn new(primal: &'a Grid, dual: &'a Grid) -> Self {
        Self { primal, dual, values: vec![f64::INFINITY; primal.len() * dual.len()] }
    }

    fn offer(&mut self, i: usize, j: usize, v: f64) {
        let cell = &mut self.values[i * self.dual.len() + j];
        if v < *cell {
            *cell = v;
        }
    }

    fn point(&mut self, (x, s): (f64, f64)) {
        if let (Some(i), Some(j)) = (self.primal.index_of(x, GEOM_TOL), self.dual.index_of(s, GEOM_TOL)) {
            self.offer(i, j, x * s);
        }
    }

    fn segment(&mut self, a: (f64, f64), b: (f64, f64)) {
        let (ca, cb) = (a.0 * a.1, b.0 * b.1);
        if (a.0 - b.0).abs() <= GEOM_TOL * (1.0 + a.0.abs()) {
            let Some(i) = self.primal.index_of(a.0, GEOM_TOL) else { return };
            if a.1 == b.1 {
                return;
            }
            for j in node_range(self.dual, a.1.min(b.1), a.1.max(b.1)) {
                let t = (self.dual.node(j) - a.1) / (b.1 - a.1);
                self.offer(i, j, (1.0 - t) * ca + t * cb);
            }
            return;
        }
        for i in node_range(self.primal, a.0.min(b.0), a.0.max(b.0)) {
            let t = ((self.primal.node(i) - a.0) / (b.0 - a.0)).clamp(0.0, 1.0);
            let s = a.1 + t * (b.1 - a.1);
            if let Some(j) = self.dual.index_of(s, GEOM_TOL) {
                self.offer(i, j, (1.0 - t) * ca + t * cb);
            }
        }
    }

    fn triangle(&mut self, a: (f64, f64), b: (f64, f64), c: (f64, f64)) {
        let det = (b.1 - c.1) * (a.0 - c.0) + (c.0 - b.0) * (a.1 - c.1);
        let extent = [a, b, c].iter().fold(1.0f64, |m, p| m.max(p.0.abs()).max(p.1.abs()));
        if det.abs() <= GEOM_TOL * extent * extent {
            // collinear triples add nothing beyond their segments
            return;
        }
        let vals = [a.0 * a.1, b.0 * b.1, c.0 * c.1];
        let xlo = a.0.min(b.0).min(c.0);
        let xhi = a.0.max(b.0).max(c.0);
        for i in node_range(self.primal, xlo, xhi) {
            let x = self.primal.node(i);
            let Some((slo, shi)) = vertical_section([a, b, c], x) else { continue };
            for j in node_range(self.dual, slo, shi) {
                let s = self.dual.node(j);
                let l1 = ((b.1 - c.1) * (x - c.0) + (c.0 - b.0) * (s - c.1)) / det;
                let l2 = ((c.1 - a.1) * (x - c.0) + (a.0 - c.0) * (s - c.1)) / det;
                let l3 = 1.0 - l1 - l2;
                if l1 >= BARY_TOL && l2 >= BARY_TOL && l3 >= BARY_TOL {
                    self.offer(i, j, l1 * vals[0] + l2 * vals[1] + l3 * vals[2]);
                }
            }
        }
    }
}

/// Nodes of `grid` in `[lo, hi]`, widened by the geometric tolerance.
fn node_range(grid: &Grid, lo: f64, hi: f64) -> std::ops::RangeInclusive<usize> {
    let h = grid.step();
    let last = grid.len() as f64 - 1.0;
    let first = ((lo - grid.lo()) / h - GEOM_TOL).ceil().max(0.0);
    let end = ((hi - grid.lo()) / h + GEOM_TOL).floor().min(last);
    if end < first {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    first as usize..=end as usize
}

/// `[s_min, s_max]` of the triangle on the vertical line through `x`.
fn vertical_section(t: [(f64, f64); 3], x: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..3 {
        let (p, q) = (t[k], t[(k + 1) % 3]);
        let (xmin, xmax) = (p.0.min(q.0), p.0.max(q.0));
        if x < xmin - GEOM_TOL || x > xmax + GEOM_TOL {
            continue;
        }
        if (q.0 - p.0).abs() <= GEOM_TOL {
            lo = lo.min(p.1.min(q.1));
            hi = hi.max(p.1.max(q.1));
        } else {
            let t = ((x - p.0) / (q.0 - p.0)).clamp(0.0, 1.0);
            let s = p.1 + t * (q.1 - p.1);
            lo = lo.min(s);
            hi = hi.max(s);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3() -> Grid {
        Grid::new(-2.0, 2.0, 5).unwrap()
    }

    fn identity3() -> OperatorGraph {
        OperatorGraph::new([(-1.0, -1.0), (0.0, 0.0), (1.0, 1.0)])
    }

    #[test]
    fn fitzpatrick_examples() {
        let g = g3();
        let single = fitzpatrick(&OperatorGraph::new([(0.0, 0.0)]), &g, &g).unwrap();
        assert!(single.raw().iter().all(|&v| v == 0.0));
        let phi = fitzpatrick(&identity3(), &g, &g).unwrap();
        // x = 0 is node 2, s = 2 is node 4
        assert_eq!(phi.get(2, 4), 1.0);
        assert_eq!(phi.get(3, 3), 1.0);
    }

    #[test]
    fn psi_examples() {
        let g = g3();
        let single = psi_envelope(&OperatorGraph::new([(0.0, 0.0)]), &g, &g).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expect = if (i, j) == (2, 2) { 0.0 } else { f64::INFINITY };
                assert_eq!(single.get(i, j), expect);
            }
        }
        let two = psi_envelope(&OperatorGraph::new([(-1.0, -1.0), (1.0, 1.0)]), &g, &g).unwrap();
        assert_eq!(two.get(2, 2), 1.0);
        assert_eq!(two.get(2, 3), f64::INFINITY);
        let three = psi_envelope(&identity3(), &g, &g).unwrap();
        assert_eq!(three.get(2, 2), 0.0);
    }

    #[test]
    fn psi_fills_triangles() {
        let g = Grid::new(-1.0, 1.0, 21).unwrap();
        let tri = OperatorGraph::new([(-1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]);
        let psi = psi_envelope(&tri, &g, &g).unwrap();
        // (−0.5, 0.5): λ = (1/4, 1/4, 1/2) on the vertices
        let v = psi.get(5, 15);
        assert!((v - 0.0).abs() < 1e-12, "{v}");
        assert_eq!(psi.get(15, 5), f64::INFINITY);
    }

    #[test]
    fn psi_guard() {
        let g = Grid::new(-1.0, 1.0, 101).unwrap();
        let big = OperatorGraph::new((0..51).map(|k| (g.node(k), g.node(k))));
        assert!(matches!(psi_envelope(&big, &g, &g), Err(Error::GraphTooLarge { got: 51, .. })));
    }
}
