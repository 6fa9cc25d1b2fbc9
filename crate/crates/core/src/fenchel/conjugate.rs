use crate::extgrid::{Grid, GridFunction};

use super::envelope::lower_hull;

/// Sentinel argmax for a source with no finite value.
pub(crate) const NO_ARGMAX: usize = usize::MAX;

/// `out[k] = max_i (s_k·x_i − v_i)` by exhaustive scan. `+∞` entries of `v`
/// are skipped; an all-`+∞` source yields `-∞` everywhere.
pub(crate) fn conjugate_brute_raw(src: &Grid, v: &[f64], out: &Grid) -> (Vec<f64>, Vec<usize>) {
    let xs: Vec<f64> = src.nodes().collect();
    let mut values = Vec::with_capacity(out.len());
    let mut argmax = Vec::with_capacity(out.len());
    for s in out.nodes() {
        let mut best = f64::NEG_INFINITY;
        let mut arg = NO_ARGMAX;
        for (i, (&x, &fx)) in xs.iter().zip(v).enumerate() {
            if fx.is_finite() {
                let cand = s * x - fx;
                if cand > best {
                    best = cand;
                    arg = i;
                }
            }
        }
        values.push(best);
        argmax.push(arg);
    }
    (values, argmax)
}

/// Same values as [`conjugate_brute_raw`] in `O(N + M)`: the maximizer for a
/// slope `s` is the lower-hull vertex whose incoming and outgoing edge
/// slopes bracket `s`, and the dual nodes are visited in increasing order.
pub(crate) fn conjugate_fast_raw(src: &Grid, v: &[f64], out: &Grid) -> (Vec<f64>, Vec<usize>) {
    let xs: Vec<f64> = src.nodes().collect();
    let hull = lower_hull(&xs, v);
    if hull.is_empty() {
        return (vec![f64::NEG_INFINITY; out.len()], vec![NO_ARGMAX; out.len()]);
    }
    let slopes: Vec<f64> = hull.windows(2).map(|w| (v[w[1]] - v[w[0]]) / (xs[w[1]] - xs[w[0]])).collect();
    let mut k = 0;
    let mut values = Vec::with_capacity(out.len());
    let mut argmax = Vec::with_capacity(out.len());
    for s in out.nodes() {
        while k < slopes.len() && s > slopes[k] {
            k += 1;
        }
        let i = hull[k];
        values.push(s * xs[i] - v[i]);
        argmax.push(i);
    }
    (values, argmax)
}

/// A conjugate together with the primal node attaining each maximum.
#[derive(Debug, Clone)]
pub struct Conjugate {
    pub function: GridFunction,
    pub argmax: Vec<usize>,
    source_len: usize,
}

impl Conjugate {
    /// Some maximum is attained at an end node of the source grid, where the
    /// conjugate of the truncated function may differ from the untruncated
    /// one.
    pub fn truncated(&self) -> bool {
        self.argmax.iter().any(|&i| i == 0 || i + 1 == self.source_len)
    }
}

fn finish(values: Vec<f64>, dual: &Grid) -> GridFunction {
    // proper source ⇒ every entry is a finite maximum
    GridFunction::from_f64(*dual, &values).expect("conjugate of a proper grid function is finite")
}

/// Oracle: `O(N·M)` scan over every node pair.
pub fn conjugate_brute(f: &GridFunction, dual: &Grid) -> GridFunction {
    let (values, _) = conjugate_brute_raw(f.grid(), &f.to_f64_vec(), dual);
    finish(values, dual)
}

/// Hull-and-merge conjugate; agrees with [`conjugate_brute`] up to round-off.
pub fn conjugate_fast(f: &GridFunction, dual: &Grid) -> GridFunction {
    conjugate_traced(f, dual).function
}

pub fn conjugate_traced(f: &GridFunction, dual: &Grid) -> Conjugate {
    let (values, argmax) = conjugate_fast_raw(f.grid(), &f.to_f64_vec(), dual);
    Conjugate { function: finish(values, dual), argmax, source_len: f.grid().len() }
}

/// `f**` on `primal_back`, going through `dual`.
pub fn biconjugate(f: &GridFunction, dual: &Grid, primal_back: &Grid) -> GridFunction {
    biconjugate_traced(f, dual, primal_back).0
}

/// Biconjugate plus a flag raised when either transform saturates at an end
/// node of its source grid.
pub fn biconjugate_traced(f: &GridFunction, dual: &Grid, primal_back: &Grid) -> (GridFunction, bool) {
    let first = conjugate_traced(f, dual);
    let second = conjugate_traced(&first.function, primal_back);
    let flagged = first.truncated() || second.truncated();
    (second.function, flagged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fenchel::convex_envelope;

    fn grid(lo: f64, hi: f64, n: usize) -> Grid {
        Grid::new(lo, hi, n).unwrap()
    }

    fn point_indicator(g: Grid, at: usize) -> GridFunction {
        let mut v = vec![f64::INFINITY; g.len()];
        v[at] = 0.0;
        GridFunction::from_f64(g, &v).unwrap()
    }

    #[test]
    fn quadratic_conjugate() {
        let p = grid(-2.0, 2.0, 401);
        let d = grid(-1.0, 1.0, 201);
        let f = GridFunction::sample(p, |x| 0.5 * x * x).unwrap();
        let fs = conjugate_brute(&f, &d);
        // closed form s²/2 from the analytic Legendre transform
        assert!((fs.value(200).to_f64() - 0.5).abs() <= 1e-4);
        for (j, s) in d.nodes().enumerate() {
            assert!((fs.value(j).to_f64() - 0.5 * s * s).abs() <= 1e-4);
        }
        assert!(fs.is_convex_discrete());
        let fast = conjugate_fast(&f, &d);
        for j in 0..d.len() {
            assert!((fast.value(j).to_f64() - fs.value(j).to_f64()).abs() <= 1e-12);
        }
        assert!(!conjugate_traced(&f, &d).truncated());
    }

    #[test]
    fn point_indicator_conjugate_vanishes() {
        let p = grid(-2.0, 2.0, 401);
        let f = point_indicator(p, 200);
        for d in [grid(-1.0, 1.0, 11), grid(-7.0, 3.0, 64)] {
            let fs = conjugate_brute(&f, &d);
            assert!(fs.values().iter().all(|v| v.to_f64() == 0.0));
            assert_eq!(conjugate_fast(&f, &d), fs);
        }
    }

    #[test]
    fn abs_conjugate_is_truncated() {
        let p = grid(-2.0, 2.0, 401);
        let d = grid(-2.0, 2.0, 5);
        let f = GridFunction::sample(p, f64::abs).unwrap();
        let fs = conjugate_brute(&f, &d);
        // sup over [-2,2] of 2x − |x| is 2 = 2(|s| − 1) at s = 2
        assert!((fs.value(4).to_f64() - 2.0).abs() < 1e-12);
        assert!((fs.value(2).to_f64()).abs() < 1e-12);
        assert!(conjugate_traced(&f, &d).truncated());
    }

    #[test]
    fn w_shape_fast_matches_brute() {
        let p = grid(-2.0, 2.0, 401);
        let d = grid(-3.0, 3.0, 301);
        let f = GridFunction::sample(p, |x| (x - 1.0).abs().min((x + 1.0).abs())).unwrap();
        let a = conjugate_brute(&f, &d);
        let b = conjugate_fast(&f, &d);
        for j in 0..d.len() {
            assert!((a.value(j).to_f64() - b.value(j).to_f64()).abs() <= 1e-9);
        }
        // the conjugate only sees the envelope
        let e = conjugate_brute(&convex_envelope(&f), &d);
        for j in 0..d.len() {
            assert!((a.value(j).to_f64() - e.value(j).to_f64()).abs() <= 1e-9);
        }
    }

    #[test]
    fn biconjugate_quadratic_on_window() {
        let p = grid(-2.0, 2.0, 401);
        let d = grid(-2.5, 2.5, 501);
        let f = GridFunction::sample(p, |x| 0.5 * x * x).unwrap();
        let fb = biconjugate(&f, &d, &p);
        for i in 100..=300 {
            assert!((fb.value(i).to_f64() - f.value(i).to_f64()).abs() <= 1e-3);
        }
        for i in 0..p.len() {
            assert!(fb.value(i).to_f64() <= f.value(i).to_f64() + 1e-9);
        }
    }

    #[test]
    fn biconjugate_of_point_indicator_is_truncated_cone() {
        let p = grid(-2.0, 2.0, 41);
        let d = grid(-1.0, 1.0, 21);
        let f = point_indicator(p, 20);
        let fstar = conjugate_fast(&f, &d);
        assert!(fstar.values().iter().all(|v| v.to_f64() == 0.0));
        // max over the bounded dual of s·x is |x|, not δ_{0}
        let (fb, flagged) = biconjugate_traced(&f, &d, &p);
        for (i, x) in p.nodes().enumerate() {
            assert!((fb.value(i).to_f64() - x.abs()).abs() < 1e-12);
        }
        assert_eq!(fb.value(20).to_f64(), 0.0);
        assert!(flagged);
        // the envelope of δ_{0} agrees with it only at 0
        let env = convex_envelope(&f);
        assert_eq!(env.effective_domain(), vec![20]);
    }
}
