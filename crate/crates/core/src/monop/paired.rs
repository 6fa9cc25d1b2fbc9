use crate::error::{Error, Result};
use crate::extgrid::{ExtendedValue, Grid};
use crate::report::Window;

/// A function on `primal × dual` node pairs, stored row-major by primal
/// index. `+∞` entries are stored as `f64::INFINITY`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedFunction {
    primal: Grid,
    dual: Grid,
    values: Vec<f64>,
}

impl PairedFunction {
    pub fn new(primal: Grid, dual: Grid, values: Vec<ExtendedValue>) -> Result<Self> {
        let raw = values.into_iter().map(ExtendedValue::to_f64).collect();
        Self::from_f64(primal, dual, raw)
    }

    /// Accepts `f64::INFINITY` for `+∞`; rejects NaN, `−∞` and all-`+∞` tables.
    pub fn from_f64(primal: Grid, dual: Grid, values: Vec<f64>) -> Result<Self> {
        let expected = primal.len() * dual.len();
        if values.len() != expected {
            return Err(Error::LengthMismatch { expected, got: values.len() });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| v.is_nan() || **v == f64::NEG_INFINITY) {
            return Err(Error::NonFinite { index, value });
        }
        if !values.iter().any(|v| v.is_finite()) {
            return Err(Error::Improper);
        }
        Ok(Self { primal, dual, values })
    }

    pub fn sample(primal: Grid, dual: Grid, h: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let values = primal.nodes().flat_map(|x| dual.nodes().map(move |s| (x, s))).map(|(x, s)| h(x, s)).collect();
        Self::from_f64(primal, dual, values)
    }

    /// `c(x, s) = s·x`.
    pub fn coupling(primal: Grid, dual: Grid) -> Self {
        Self::sample(primal, dual, |x, s| x * s).expect("coupling is finite")
    }

    pub fn primal(&self) -> &Grid {
        &self.primal
    }

    pub fn dual(&self) -> &Grid {
        &self.dual
    }

    pub fn raw(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let m = self.dual.len();
        &self.values[i * m..(i + 1) * m]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dual.len() + j]
    }

    pub fn value(&self, i: usize, j: usize) -> ExtendedValue {
        ExtendedValue::from_f64(self.get(i, j)).expect("validated at construction")
    }

    pub fn coupling_at(&self, i: usize, j: usize) -> f64 {
        self.primal.node(i) * self.dual.node(j)
    }

    /// Swaps the axes: `hᵀ(s, x) = h(x, s)`.
    pub fn transpose(&self) -> Self {
        let (n, m) = (self.primal.len(), self.dual.len());
        let mut values = vec![0.0; n * m];
        for i in 0..n {
            for j in 0..m {
                values[j * n + i] = self.values[i * m + j];
            }
        }
        Self { primal: self.dual, dual: self.primal, values }
    }

    pub fn map(&self, f: impl Fn(usize, usize, f64) -> f64) -> Result<Self> {
        let m = self.dual.len();
        let values = self.values.iter().enumerate().map(|(k, &v)| f(k / m, k % m, v)).collect();
        Self::from_f64(self.primal, self.dual, values)
    }

    pub fn is_finite_at(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_finite()
    }

    pub fn max_abs_finite(&self) -> f64 {
        self.values.iter().filter(|v| v.is_finite()).fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|h|` and `|c|` over finite cells of the window.
    pub fn scale_on(&self, window: &Window) -> f64 {
        let mut m: f64 = 0.0;
        for i in window.primal.indices() {
            for j in window.dual.indices() {
                let v = self.get(i, j);
                if v.is_finite() {
                    m = m.max(v.abs()).max(self.coupling_at(i, j).abs());
                }
            }
        }
        1.0 + m
    }

    pub fn full_window(&self) -> Window {
        Window::full(&self.primal, &self.dual)
    }

    pub fn same_grids(&self, other: &Self) -> bool {
        self.primal == other.primal && self.dual == other.dual
    }
}
