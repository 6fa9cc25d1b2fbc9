use std::fmt;

/// A closed interval of slopes, possibly empty or unbounded on either side.
///
/// Unbounded ends are stored as `f64::NEG_INFINITY` / `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlopeInterval {
    Empty,
    Closed { lo: f64, hi: f64 },
}

impl SlopeInterval {
    pub const ALL: Self = Self::Closed { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    /// `[lo, hi]`, or `Empty` when `lo > hi`.
    ///
    /// Crossings within `1e-12 · (1 + |lo| + |hi|)` are rounding noise from
    /// equal difference quotients and collapse to the midpoint.
    pub fn new(lo: f64, hi: f64) -> Self {
        if lo <= hi {
            return Self::Closed { lo, hi };
        }
        let guard = 1e-12 * (1.0 + lo.abs() + hi.abs());
        if lo.is_finite() && hi.is_finite() && lo - hi <= guard {
            let mid = 0.5 * (lo + hi);
            Self::Closed { lo: mid, hi: mid }
        } else {
            Self::Empty
        }
    }

    pub fn point(s: f64) -> Self {
        Self::Closed { lo: s, hi: s }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Self::Empty)
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            Self::Empty => None,
            Self::Closed { lo, hi } => Some((lo, hi)),
        }
    }

    pub fn contains(&self, s: f64, tol: f64) -> bool {
        match *self {
            Self::Empty => false,
            Self::Closed { lo, hi } => s >= lo - tol && s <= hi + tol,
        }
    }

    /// Endpoint-wise equality; unbounded ends must match exactly and
    /// emptiness is compared without tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, None) => true,
            (Some((a0, a1)), Some((b0, b1))) => ends_eq(a0, b0, tol) && ends_eq(a1, b1, tol),
            _ => false,
        }
    }

    pub fn is_subset_of(&self, other: &Self, tol: f64) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a0, a1)), Some((b0, b1))) => b0 <= a0 + tol && a1 <= b1 + tol,
        }
    }

    /// Set sum `{a + b}`; `Empty` absorbs, unbounded ends absorb.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        match (self.bounds(), other.bounds()) {
            (Some((a0, a1)), Some((b0, b1))) => Self::Closed { lo: a0 + b0, hi: a1 + b1 },
            _ => Self::Empty,
        }
    }

    /// A finite point of the interval, for witnesses.
    pub fn representative(&self) -> Option<f64> {
        let (lo, hi) = self.bounds()?;
        Some(match (lo.is_finite(), hi.is_finite()) {
            (true, true) => 0.5 * (lo + hi),
            (true, false) => lo,
            (false, true) => hi,
            (false, false) => 0.0,
        })
    }

    /// A finite slope in `self \ other`, if one exists.
    pub fn point_outside(&self, other: &Self, tol: f64) -> Option<f64> {
        let (lo, hi) = self.bounds()?;
        let Some((olo, ohi)) = other.bounds() else {
            return self.representative();
        };
        if lo < olo - tol {
            return Some(if lo.is_finite() { lo } else { olo - 1.0 });
        }
        if hi > ohi + tol {
            return Some(if hi.is_finite() { hi } else { ohi + 1.0 });
        }
        None
    }
}

fn ends_eq(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a.is_finite() && b.is_finite() && (a - b).abs() <= tol)
}

impl fmt::Display for SlopeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Empty => f.write_str("∅"),
            Self::Closed { lo, hi } => {
                let end = |v: f64| {
                    if v == f64::INFINITY {
                        "+inf".to_string()
                    } else if v == f64::NEG_INFINITY {
                        "-inf".to_string()
                    } else {
                        format!("{v}")
                    }
                };
                write!(f, "[{}, {}]", end(lo), end(hi))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_rules() {
        assert!(SlopeInterval::new(1.0, -1.0).is_empty());
        let p = SlopeInterval::new(0.5 + 1e-15, 0.5);
        assert!(!p.is_empty());
        assert!(p.contains(0.5, 1e-12));
    }

    #[test]
    fn algebra() {
        let a = SlopeInterval::new(-1.0, 1.0);
        let b = SlopeInterval::new(-0.005, 0.005);
        assert_eq!(a.minkowski_sum(&b), SlopeInterval::new(-1.005, 1.005));
        assert!(SlopeInterval::Empty.minkowski_sum(&a).is_empty());
        let half = SlopeInterval::new(1.0, f64::INFINITY);
        assert_eq!(half.minkowski_sum(&a), SlopeInterval::new(0.0, f64::INFINITY));
        assert!(SlopeInterval::Empty.is_subset_of(&a, 0.0));
        assert!(!a.is_subset_of(&SlopeInterval::Empty, 0.0));
        assert!(b.is_subset_of(&a, 0.0));
        assert!(!a.is_subset_of(&b, 1e-9));
        assert!(a.approx_eq(&SlopeInterval::new(-1.0 + 1e-12, 1.0), 1e-9));
        assert!(!half.approx_eq(&SlopeInterval::new(1.0, 1e300), 1e-9));
        assert!(!SlopeInterval::Empty.approx_eq(&SlopeInterval::point(0.0), 1e9));
        assert_eq!(a.point_outside(&b, 1e-9), Some(-1.0));
        assert_eq!(b.point_outside(&a, 1e-9), None);
    }
}
