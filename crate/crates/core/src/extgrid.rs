//! Extended reals, uniform grids and grid-sampled functions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A value in `ℝ ∪ {+∞}`.
///
/// `-∞` has no representation: every sampled function is proper, so an
/// attempt to build one surfaces as [`Error::NonFinite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedValue {
    Finite(f64),
    PlusInfinity,
}

impl ExtendedValue {
    /// Maps `f64::INFINITY` to [`ExtendedValue::PlusInfinity`]; rejects NaN
    /// and `-∞`.
    pub fn from_f64(v: f64) -> Option<Self> {
        if v.is_nan() || v == f64::NEG_INFINITY {
            None
        } else if v == f64::INFINITY {
            Some(Self::PlusInfinity)
        } else {
            Some(Self::Finite(v))
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(v),
            Self::PlusInfinity => None,
        }
    }

    /// The value as an `f64`, with `+∞` mapped to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            Self::Finite(v) => v,
            Self::PlusInfinity => f64::INFINITY,
        }
    }
}

impl Eq for ExtendedValue {}

impl PartialOrd for ExtendedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            // Finite values are never NaN.
            (Self::Finite(a), Self::Finite(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
            (Self::Finite(_), Self::PlusInfinity) => Ordering::Less,
            (Self::PlusInfinity, Self::Finite(_)) => Ordering::Greater,
            (Self::PlusInfinity, Self::PlusInfinity) => Ordering::Equal,
        }
    }
}

impl Add for ExtendedValue {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a + b),
            _ => Self::PlusInfinity,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::PlusInfinity => f.write_str("+inf"),
        }
    }
}

/// Uniform grid `lo = node(0) < ... < node(n-1) = hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    lo: f64,
    hi: f64,
    n: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidGrid(format!("bounds must be finite, got [{lo}, {hi}]")));
        }
        if lo >= hi {
            return Err(Error::InvalidGrid(format!("need lo < hi, got [{lo}, {hi}]")));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 nodes, got {n}")));
        }
        Ok(Self { lo, hi, n })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n - 1) as f64
    }

    /// `node(i) = lo + i·(hi − lo)/(n − 1)`, with the last node pinned to `hi`.
    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.n);
        if i + 1 == self.n {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64
        }
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Index of the node within `tol · step` of `x`, if any.
    pub fn index_of(&self, x: f64, tol: f64) -> Option<usize> {
        if !x.is_finite() {
            return None;
        }
        let pos = ((x - self.lo) / self.step()).round();
        if pos < 0.0 || pos > (self.n - 1) as f64 {
            return None;
        }
        let i = pos as usize;
        ((self.node(i) - x).abs() <= tol * self.step()).then_some(i)
    }

    /// Symmetric about zero with an odd node count, so that `0` is a node and
    /// differences of nodes land on nodes.
    pub fn is_symmetric(&self) -> bool {
        self.lo == -self.hi && self.n % 2 == 1
    }

    /// Index of the node `0` on a symmetric grid.
    pub fn zero_index(&self) -> Option<usize> {
        self.is_symmetric().then_some((self.n - 1) / 2)
    }

    pub fn full(&self) -> SubInterval {
        SubInterval { lo: 0, hi: self.n - 1 }
    }
}

/// Closed node range `[node(lo), node(hi)]` of some grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubInterval {
    pub lo: usize,
    pub hi: usize,
}

impl SubInterval {
    pub fn new(lo: usize, hi: usize, grid: &Grid) -> Result<Self> {
        if lo > hi || hi >= grid.len() {
            return Err(Error::InvalidSubInterval { lo, hi, n: grid.len() });
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }

    /// The central `fraction` of this range (at least one node).
    pub fn central(&self, fraction: f64) -> Self {
        let fraction = fraction.clamp(0.0, 1.0);
        let span = (self.hi - self.lo) as f64;
        let center = self.lo as f64 + span / 2.0;
        let half = span * fraction / 2.0;
        let lo = (center - half - 1e-9).ceil().max(self.lo as f64) as usize;
        let hi = (center + half + 1e-9).floor().min(self.hi as f64) as usize;
        if lo <= hi {
            Self { lo, hi }
        } else {
            let mid = center.round() as usize;
            Self { lo: mid, hi: mid }
        }
    }
}

/// Why a grid function failed the discrete convexity test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NonConvexity {
    /// `+∞` at some node strictly between two finite nodes.
    GappedDomain { left: usize, gap: usize, right: usize },
    /// Second difference at `(index − 1, index, index + 1)` below tolerance.
    Curvature { index: usize, second_difference: f64 },
}

/// Values of `f: X → ℝ ∪ {+∞}` at the nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<ExtendedValue>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<ExtendedValue>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), got: values.len() });
        }
        for (index, v) in values.iter().enumerate() {
            if let ExtendedValue::Finite(x) = v {
                if !x.is_finite() {
                    return Err(Error::NonFinite { index, value: *x });
                }
            }
        }
        if !values.iter().any(|v| v.is_finite()) {
            return Err(Error::Improper);
        }
        Ok(Self { grid, values })
    }

    /// Builds from raw `f64` samples, `f64::INFINITY` meaning `+∞`.
    pub fn from_f64(grid: Grid, values: &[f64]) -> Result<Self> {
        let ext = values
            .iter()
            .enumerate()
            .map(|(index, &v)| ExtendedValue::from_f64(v).ok_or(Error::NonFinite { index, value: v }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(grid, ext)
    }

    /// Samples `f` at every node.
    pub fn sample(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values: Vec<f64> = grid.nodes().map(f).collect();
        Self::from_f64(grid, &values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[ExtendedValue] {
        &self.values
    }

    pub fn value(&self, i: usize) -> ExtendedValue {
        self.values[i]
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.to_f64()).collect()
    }

    /// Indices with a finite value (never empty).
    pub fn effective_domain(&self) -> Vec<usize> {
        self.values.iter().enumerate().filter_map(|(i, v)| v.is_finite().then_some(i)).collect()
    }

    pub fn max_abs_finite(&self) -> f64 {
        self.values.iter().filter_map(|v| v.finite()).fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `1e-9 · (1 + max |finite value|)`.
    pub fn convexity_tolerance(&self) -> f64 {
        1e-9 * (1.0 + self.max_abs_finite())
    }

    /// Contiguous effective domain and non-negative second differences (up
    /// to [`GridFunction::convexity_tolerance`]).
    pub fn check_convex(&self) -> std::result::Result<(), NonConvexity> {
        check_convex_slice(&self.to_f64_vec(), self.convexity_tolerance())
    }

    pub fn is_convex_discrete(&self) -> bool {
        self.check_convex().is_ok()
    }
}

/// Discrete convexity of a sequence sampled on a uniform grid; `+∞` entries
/// are allowed outside a contiguous finite block.
pub(crate) fn check_convex_slice(values: &[f64], tol: f64) -> std::result::Result<(), NonConvexity> {
    let finite: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_finite()).collect();
    let (Some(&first), Some(&last)) = (finite.first(), finite.last()) else {
        return Ok(());
    };
    if let Some(gap) = (first..=last).find(|&i| !values[i].is_finite()) {
        let left = (first..gap).next_back().unwrap_or(first);
        let right = (gap..=last).find(|&i| values[i].is_finite()).unwrap_or(last);
        return Err(NonConvexity::GappedDomain { left, gap, right });
    }
    for i in first + 1..last {
        let d2 = values[i - 1] - 2.0 * values[i] + values[i + 1];
        if d2 < -tol {
            return Err(NonConvexity::Curvature { index: i, second_difference: d2 });
        }
    }
    Ok(())
}

/// Convenience wrapper for [`GridFunction::check_convex`].
pub fn is_convex_discrete(f: &GridFunction) -> std::result::Result<(), NonConvexity> {
    f.check_convex()
}

/// Convenience wrapper for [`GridFunction::effective_domain`].
pub fn effective_domain(f: &GridFunction) -> Vec<usize> {
    f.effective_domain()
}
