use crate::error::{Error, Result};
use crate::extgrid::GridFunction;

use super::SlopeInterval;

/// `{s : v[j] − v[i] ≥ s·(x_j − x_i) for every finite j in range}`.
///
/// Every `j` enters, not only the neighbours: for a non-convex sequence the
/// nearest difference quotients do not bound the subdifferential.
pub(crate) fn quotient_interval(
    node: impl Fn(usize) -> f64,
    value: impl Fn(usize) -> f64,
    i: usize,
    range: std::ops::RangeInclusive<usize>,
) -> SlopeInterval {
    let (xi, vi) = (node(i), value(i));
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for j in range {
        if j == i {
            continue;
        }
        let vj = value(j);
        if !vj.is_finite() {
            continue;
        }
        let q = (vj - vi) / (node(j) - xi);
        if j < i {
            lo = lo.max(q);
        } else {
            hi = hi.min(q);
        }
    }
    SlopeInterval::new(lo, hi)
}

/// `∂f(x_i)` on the grid; half-unbounded when no finite node lies on one
/// side.
pub fn subdifferential(f: &GridFunction, i: usize) -> Result<SlopeInterval> {
    let v = f.to_f64_vec();
    if i >= v.len() || !v[i].is_finite() {
        return Err(Error::OutsideDomain(i));
    }
    let g = *f.grid();
    Ok(quotient_interval(|j| g.node(j), |j| v[j], i, 0..=v.len() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extgrid::Grid;

    fn g() -> Grid {
        Grid::new(-2.0, 2.0, 401).unwrap()
    }

    #[test]
    fn abs_at_kink() {
        let f = GridFunction::sample(g(), f64::abs).unwrap();
        assert_eq!(subdifferential(&f, 200).unwrap(), SlopeInterval::new(-1.0, 1.0));
    }

    #[test]
    fn quadratic_interior_and_boundary() {
        let f = GridFunction::sample(g(), |x| 0.5 * x * x).unwrap();
        let (lo, hi) = subdifferential(&f, 250).unwrap().bounds().unwrap();
        assert!((lo - 0.495).abs() < 1e-9 && (hi - 0.505).abs() < 1e-9);
        let (lo, hi) = subdifferential(&f, 400).unwrap().bounds().unwrap();
        assert!((lo - 1.995).abs() < 1e-9);
        assert_eq!(hi, f64::INFINITY);
    }

    #[test]
    fn nonconvex_uses_all_nodes() {
        // W-shape at x = 1: the neighbours alone would allow [−1, 1], the
        // node x = −1 (value 0) cuts it to [0, 1]
        let f = GridFunction::sample(g(), |x| (x - 1.0).abs().min((x + 1.0).abs())).unwrap();
        let at_one = subdifferential(&f, 300).unwrap();
        assert!(at_one.approx_eq(&SlopeInterval::new(0.0, 1.0), 1e-12));
        let at_zero = subdifferential(&f, 200).unwrap();
        assert!(at_zero.is_empty());
    }

    #[test]
    fn outside_domain_is_error() {
        let mut v = vec![f64::INFINITY; 401];
        v[10] = 0.0;
        let f = GridFunction::from_f64(g(), &v).unwrap();
        assert_eq!(subdifferential(&f, 11), Err(Error::OutsideDomain(11)));
        assert_eq!(subdifferential(&f, 10).unwrap(), SlopeInterval::ALL);
    }
}
