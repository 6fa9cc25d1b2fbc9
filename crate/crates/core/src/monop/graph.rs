use crate::error::{Error, Result};
use crate::extgrid::Grid;
use crate::fenchel::SlopeInterval;

/// A pair violating `⟨y* − x*, y − x⟩ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityWitness {
    pub first: (f64, f64),
    pub second: (f64, f64),
    pub product: f64,
}

/// Finite graph `{(x, x*)}` of a set-valued operator.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OperatorGraph {
    pairs: Vec<(f64, f64)>,
}

impl OperatorGraph {
    /// Keeps the first occurrence of every pair.
    pub fn new(pairs: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for p in pairs {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Self { pairs: out }
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `D(T)`: distinct `x` with a nonempty image, in first-seen order.
    pub fn domain(&self) -> Vec<f64> {
        let mut xs: Vec<f64> = Vec::new();
        for &(x, _) in &self.pairs {
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        xs
    }

    /// Pairwise scan; returns the most negative product on failure.
    pub fn check_monotone(&self) -> std::result::Result<(), MonotonicityWitness> {
        let mut worst: Option<MonotonicityWitness> = None;
        for (k, &(x, xs)) in self.pairs.iter().enumerate() {
            for &(y, ys) in &self.pairs[k + 1..] {
                let product = (ys - xs) * (y - x);
                if product < 0.0 && worst.map_or(true, |w| product < w.product) {
                    worst = Some(MonotonicityWitness { first: (x, xs), second: (y, ys), product });
                }
            }
        }
        worst.map_or(Ok(()), Err)
    }

    pub fn is_monotone(&self) -> bool {
        self.check_monotone().is_ok()
    }

    /// `ceil(k)` evenly spaced pairs, first and last included.
    pub fn subsample(&self, k: usize) -> Self {
        let m = self.pairs.len();
        if m <= k || k == 0 {
            return self.clone();
        }
        if k == 1 {
            return Self { pairs: vec![self.pairs[m / 2]] };
        }
        let picks = (0..k).map(|t| self.pairs[(t * (m - 1) + (k - 1) / 2) / (k - 1)]);
        Self::new(picks)
    }

    /// Node indices of every pair; fails on the first pair off the grids.
    pub fn node_indices(&self, primal: &Grid, dual: &Grid) -> Result<Vec<(usize, usize)>> {
        self.pairs
            .iter()
            .map(|&(x, s)| match (primal.index_of(x, 1e-9), dual.index_of(s, 1e-9)) {
                (Some(i), Some(j)) => Ok((i, j)),
                _ => Err(Error::OffGrid { x, s }),
            })
            .collect()
    }
}

/// A 1D operator given by one slope interval per primal node, as extracted
/// from a bifunction. Nodes without an entry have empty image.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalOperator {
    grid: Grid,
    images: Vec<(usize, SlopeInterval)>,
}

impl IntervalOperator {
    pub fn new(grid: Grid, images: Vec<(usize, SlopeInterval)>) -> Self {
        Self { grid, images }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn images(&self) -> &[(usize, SlopeInterval)] {
        &self.images
    }

    pub fn image(&self, i: usize) -> SlopeInterval {
        self.images.iter().find(|(k, _)| *k == i).map_or(SlopeInterval::Empty, |(_, s)| *s)
    }

    /// Indices of nodes with nonempty image.
    pub fn domain(&self) -> Vec<usize> {
        self.images.iter().filter(|(_, s)| !s.is_empty()).map(|(i, _)| *i).collect()
    }

    /// Dual-node indices lying in each image, one row per primal node of
    /// the grid.
    pub fn sampled_rows(&self, dual: &Grid, tol: f64) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.grid.len()];
        for &(i, img) in &self.images {
            rows[i] = dual.nodes().enumerate().filter(|&(_, s)| img.contains(s, tol)).map(|(j, _)| j).collect();
        }
        rows
    }

    /// The graph restricted to dual nodes.
    pub fn to_graph(&self, dual: &Grid, tol: f64) -> OperatorGraph {
        let rows = self.sampled_rows(dual, tol);
        OperatorGraph::new(
            rows.iter().enumerate().flat_map(|(i, js)| js.iter().map(move |&j| (self.grid.node(i), dual.node(j)))),
        )
    }

    /// Node-wise Minkowski sum; both operators must live on the same grid.
    pub fn sum(&self, other: &Self) -> Self {
        let images = self.images.iter().map(|&(i, a)| (i, a.minkowski_sum(&other.image(i)))).collect();
        Self { grid: self.grid, images }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotonicity_examples() {
        assert!(OperatorGraph::new([(-1.0, -1.0), (0.0, 0.0), (1.0, 1.0)]).is_monotone());
        let w = OperatorGraph::new([(0.0, 1.0), (1.0, 0.0)]).check_monotone().unwrap_err();
        assert_eq!(w.product, -1.0);
        assert!(OperatorGraph::new([(0.0, 0.0)]).is_monotone());
    }

    #[test]
    fn dedup_and_domain() {
        let g = OperatorGraph::new([(0.0, 0.0), (0.0, 1.0), (0.0, 0.0), (1.0, 2.0)]);
        assert_eq!(g.len(), 3);
        assert_eq!(g.domain(), vec![0.0, 1.0]);
    }

    #[test]
    fn subsample_keeps_ends() {
        let g = OperatorGraph::new((0..100).map(|k| (k as f64, k as f64)));
        let s = g.subsample(12);
        assert_eq!(s.len(), 12);
        assert_eq!(s.pairs()[0], (0.0, 0.0));
        assert_eq!(*s.pairs().last().unwrap(), (99.0, 99.0));
    }

    #[test]
    fn off_grid_pairs_rejected() {
        let p = Grid::new(-1.0, 1.0, 21).unwrap();
        let g = OperatorGraph::new([(0.05, 0.0)]);
        assert!(matches!(g.node_indices(&p, &p), Err(Error::OffGrid { .. })));
        let g = OperatorGraph::new([(0.1, -0.3)]);
        assert_eq!(g.node_indices(&p, &p).unwrap(), vec![(11, 7)]);
    }
}
