use crate::extgrid::Grid;
use crate::fenchel::{conjugate_brute_raw, quotient_interval};
use crate::monop::{IntervalOperator, PairedFunction};

use super::table::BifunctionTable;

/// `A^F(x) = {s : F(x, y) − F(x, x) ≥ s·(y − x) ∀y ∈ C}` at every node of `C`.
pub fn extract_af(f: &BifunctionTable) -> IntervalOperator {
    let g = *f.grid();
    let c = f.domain();
    let images =
        c.indices().map(|i| (i, quotient_interval(|j| g.node(j), |j| f.value(i, j), i, c.indices()))).collect();
    IntervalOperator::new(g, images)
}

/// `^F A(x) = {s : F(x, x) − F(y, x) ≥ s·(y − x) ∀y ∈ C}`.
pub fn extract_fa(f: &BifunctionTable) -> IntervalOperator {
    let g = *f.grid();
    let c = f.domain();
    let images =
        c.indices().map(|i| (i, quotient_interval(|j| g.node(j), |j| -f.value(j, i), i, c.indices()))).collect();
    IntervalOperator::new(g, images)
}

/// `h_F(x, s) = max_{y ∈ C} (s·y − F(x, y))` for `x ∈ C`, `+∞` elsewhere.
pub fn build_h(f: &BifunctionTable, dual: &Grid) -> PairedFunction {
    rowwise(f, dual, |i, j| f.value(i, j))
}

/// `g_F(x, s) = max_{y ∈ C} (s·y + F(y, x))` for `x ∈ C`, `+∞` elsewhere.
pub fn build_g(f: &BifunctionTable, dual: &Grid) -> PairedFunction {
    rowwise(f, dual, |i, j| -f.value(j, i))
}

fn rowwise(f: &BifunctionTable, dual: &Grid, source: impl Fn(usize, usize) -> f64) -> PairedFunction {
    let g = f.grid();
    let c = f.domain();
    let (n, m) = (g.len(), dual.len());
    let mut values = vec![f64::INFINITY; n * m];
    let mut row = vec![f64::INFINITY; n];
    for i in c.indices() {
        for j in c.indices() {
            row[j] = source(i, j);
        }
        let (v, _) = conjugate_brute_raw(g, &row, dual);
        values[i * m..(i + 1) * m].copy_from_slice(&v);
    }
    PairedFunction::from_f64(*g, *dual, values).expect("C is nonempty")
}
