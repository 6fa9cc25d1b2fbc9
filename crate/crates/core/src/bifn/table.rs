use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extgrid::{check_convex_slice, Grid, NonConvexity, SubInterval};
use crate::report::{Check, Scan, Tolerances, Witness};

/// Largest `|F(x, x)|` accepted at construction.
pub const DIAGONAL_TOL: f64 = 1e-12;

/// `F(x_i, x_j)` for nodes `x_i, x_j` of a sub-interval `C` of the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BifunctionTable {
    grid: Grid,
    domain: SubInterval,
    values: Vec<f64>,
}

impl BifunctionTable {
    /// `values` is row-major over `C × C`. Every entry must be finite and
    /// the diagonal must vanish.
    pub fn new(grid: Grid, domain: SubInterval, values: Vec<f64>) -> Result<Self> {
        let t = Self::with_any_diagonal(grid, domain, values)?;
        for i in domain.indices() {
            let v = t.value(i, i);
            if v.abs() > DIAGONAL_TOL {
                return Err(Error::NonzeroDiagonal { x: grid.node(i), value: v });
            }
        }
        Ok(t)
    }

    /// Like [`BifunctionTable::new`] without the diagonal condition, for
    /// auxiliary tables whose diagonal is itself under test.
    pub fn with_any_diagonal(grid: Grid, domain: SubInterval, values: Vec<f64>) -> Result<Self> {
        if domain.hi >= grid.len() || domain.lo > domain.hi {
            return Err(Error::InvalidSubInterval { lo: domain.lo, hi: domain.hi, n: grid.len() });
        }
        let k = domain.len();
        if values.len() != k * k {
            return Err(Error::LengthMismatch { expected: k * k, got: values.len() });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self { grid, domain, values })
    }

    pub fn sample(grid: Grid, domain: SubInterval, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let values = domain
            .indices()
            .flat_map(|i| domain.indices().map(move |j| (i, j)))
            .map(|(i, j)| f(grid.node(i), grid.node(j)))
            .collect();
        Self::new(grid, domain, values)
    }

    /// `F(x, y) = f(y) − f(x)`.
    pub fn skew(grid: Grid, domain: SubInterval, f: impl Fn(f64) -> f64) -> Result<Self> {
        let fv: Vec<f64> = grid.nodes().map(f).collect();
        let values =
            domain.indices().flat_map(|i| domain.indices().map(move |j| (i, j))).map(|(i, j)| fv[j] - fv[i]).collect();
        Self::new(grid, domain, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn domain(&self) -> SubInterval {
        self.domain
    }

    /// `F(x_i, x_j)`; both indices must lie in `C`.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        debug_assert!(self.domain.contains(i) && self.domain.contains(j));
        let k = self.domain.len();
        self.values[(i - self.domain.lo) * k + (j - self.domain.lo)]
    }

    /// `F(x_i, ·)` over `C`.
    pub fn row(&self, i: usize) -> &[f64] {
        let k = self.domain.len();
        let r = i - self.domain.lo;
        &self.values[r * k..(r + 1) * k]
    }

    /// `F(·, x_j)` over `C`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.domain.indices().map(|i| self.value(i, j)).collect()
    }

    pub fn raw(&self) -> &[f64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.grid == other.grid && self.domain == other.domain
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if !self.same_shape(other) {
            return Err(Error::Mismatch("bifunctions live on different grids or domains".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect();
        Self::with_any_diagonal(self.grid, self.domain, values)
    }

    pub fn profile(&self, tol: &Tolerances) -> HypothesisProfile {
        HypothesisProfile::of(self, tol)
    }
}

/// `F(x, y) + F(y, x) ≤ 0` for every pair, up to `exact·(1 + max |F|)`.
/// The witness carries the two nodes of the worst pair.
pub fn check_bifunction_monotone(f: &BifunctionTable, tol: &Tolerances) -> Check {
    let g = f.grid();
    let mut scan = Scan::default();
    for i in f.domain().indices() {
        for j in f.domain().indices().filter(|&j| j >= i) {
            scan.observe(f.value(i, j) + f.value(j, i), Witness::new(g.node(i), g.node(j)));
        }
    }
    Check::from_scan("monotone", &scan, tol.exact * (1.0 + f.max_abs()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FlagWitness {
    pub flag: String,
    pub witness: Witness,
    pub amount: f64,
}

/// Which hypotheses of the maximality theorems the table satisfies.
/// Semicontinuity and hemicontinuity carry no information for real-valued
/// tables on finite grids and are always set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HypothesisProfile {
    pub monotone: bool,
    pub convex_in_y: bool,
    pub lsc_in_y: bool,
    pub concave_in_x: bool,
    pub usc_in_x: bool,
    pub hemicontinuous_in_x: bool,
    pub witnesses: Vec<FlagWitness>,
}

impl HypothesisProfile {
    pub const PROXY_NOTE: &'static str =
        "semicontinuity and hemicontinuity flags are vacuous on finite grids and always set";

    fn of(f: &BifunctionTable, tol: &Tolerances) -> Self {
        let g = f.grid();
        let mut witnesses = Vec::new();
        let mono = check_bifunction_monotone(f, tol);
        if let (false, Some(w)) = (mono.passed, mono.witness) {
            witnesses.push(FlagWitness { flag: "monotone".into(), witness: w, amount: mono.worst_violation });
        }
        let ctol = tol.approx * (1.0 + f.max_abs());
        let c = f.domain();
        let mut convex_in_y = true;
        for i in c.indices() {
            if let Err(nc) = check_convex_slice(f.row(i), ctol) {
                convex_in_y = false;
                let (k, amount) = locate(nc);
                witnesses.push(FlagWitness {
                    flag: "convexInY".into(),
                    witness: Witness::new(g.node(i), g.node(c.lo + k)),
                    amount,
                });
                break;
            }
        }
        let mut concave_in_x = true;
        for j in c.indices() {
            let neg: Vec<f64> = f.column(j).iter().map(|v| -v).collect();
            if let Err(nc) = check_convex_slice(&neg, ctol) {
                concave_in_x = false;
                let (k, amount) = locate(nc);
                witnesses.push(FlagWitness {
                    flag: "concaveInX".into(),
                    witness: Witness::new(g.node(c.lo + k), g.node(j)),
                    amount,
                });
                break;
            }
        }
        Self {
            monotone: mono.passed,
            convex_in_y,
            lsc_in_y: true,
            concave_in_x,
            usc_in_x: true,
            hemicontinuous_in_x: true,
            witnesses,
        }
    }

    pub fn witness(&self, flag: &str) -> Option<&FlagWitness> {
        self.witnesses.iter().find(|w| w.flag == flag)
    }
}

fn locate(nc: NonConvexity) -> (usize, f64) {
    match nc {
        NonConvexity::GappedDomain { gap, .. } => (gap, f64::INFINITY),
        NonConvexity::Curvature { index, second_difference } => (index, -second_difference),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Grid, SubInterval) {
        let g = Grid::new(-2.0, 2.0, 41).unwrap();
        (g, g.full())
    }

    #[test]
    fn diagonal_is_enforced() {
        let (g, c) = setup();
        let err = BifunctionTable::sample(g, c, |x, y| y - x + 1.0).unwrap_err();
        assert!(matches!(err, Error::NonzeroDiagonal { .. }));
        assert!(BifunctionTable::sample(g, c, |x, y| y - x).is_ok());
    }

    #[test]
    fn monotone_examples() {
        let (g, c) = setup();
        let tol = Tolerances::default();
        let skew = BifunctionTable::skew(g, c, |x| 0.5 * x * x).unwrap();
        let m = check_bifunction_monotone(&skew, &tol);
        assert!(m.passed && m.worst_violation == 0.0);
        let saddle = BifunctionTable::sample(g, c, |x, y| x * (y - x)).unwrap();
        assert!(check_bifunction_monotone(&saddle, &tol).passed);
        let unit = SubInterval::new(20, 30, &g).unwrap();
        let bad = BifunctionTable::sample(g, unit, |x, y| (y - x) + (y - x) * (y - x)).unwrap();
        let m = check_bifunction_monotone(&bad, &tol);
        assert!(!m.passed);
        assert!((m.worst_violation - 2.0).abs() < 1e-12);
        assert_eq!(m.witness, Some(Witness::new(0.0, 1.0)));
    }

    #[test]
    fn profile_flags() {
        let (g, c) = setup();
        let tol = Tolerances::default();
        let saddle = BifunctionTable::sample(g, c, |x, y| x * (y - x)).unwrap().profile(&tol);
        assert!(saddle.monotone && saddle.convex_in_y && saddle.concave_in_x);
        let nd = BifunctionTable::sample(g, c, |x, y| -(y - x).abs()).unwrap().profile(&tol);
        assert!(nd.monotone && !nd.convex_in_y);
        assert!(nd.witness("convexInY").is_some());
        assert!(nd.lsc_in_y && nd.usc_in_x && nd.hemicontinuous_in_x);
    }
}
