use crate::fenchel::{conjugate_fast_raw, NO_ARGMAX};
use crate::report::Window;

use super::paired::PairedFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JointMethod {
    /// Two successive 1D transforms, `O(N·M)` per axis sweep.
    #[default]
    Fast,
    /// Exhaustive `O(N²M²)` scan.
    Brute,
}

/// `h*ᵀ(x, s) = max_{u,σ} (s·u + σ·x − h(u, σ))` on the grids of `h`, with
/// a per-cell flag set when a maximizing node sits on an end of either axis.
#[derive(Debug, Clone)]
pub struct JointConjugate {
    pub function: PairedFunction,
    saturated: Vec<bool>,
}

impl JointConjugate {
    pub fn saturated(&self, i: usize, j: usize) -> bool {
        self.saturated[i * self.function.dual().len() + j]
    }

    pub fn truncated_in(&self, window: &Window) -> bool {
        window.primal.indices().any(|i| window.dual.indices().any(|j| self.saturated(i, j)))
    }
}

pub fn conjugate_transpose(h: &PairedFunction, method: JointMethod) -> JointConjugate {
    match method {
        JointMethod::Fast => conjugate_transpose_fast(h),
        JointMethod::Brute => conjugate_transpose_brute(h),
    }
}

fn conjugate_transpose_brute(h: &PairedFunction) -> JointConjugate {
    let (primal, dual) = (*h.primal(), *h.dual());
    let (n, m) = (primal.len(), dual.len());
    let xs: Vec<f64> = primal.nodes().collect();
    let ss: Vec<f64> = dual.nodes().collect();
    let cells: Vec<(usize, usize, f64)> = (0..n)
        .flat_map(|u| (0..m).map(move |k| (u, k)))
        .filter_map(|(u, k)| {
            let v = h.get(u, k);
            v.is_finite().then_some((u, k, v))
        })
        .collect();
    let mut values = Vec::with_capacity(n * m);
    let mut saturated = Vec::with_capacity(n * m);
    for &x in &xs {
        for &s in &ss {
            let mut best = f64::NEG_INFINITY;
            let mut arg = (0, 0);
            for &(u, k, v) in &cells {
                let cand = s * xs[u] + ss[k] * x - v;
                if cand > best {
                    best = cand;
                    arg = (u, k);
                }
            }
            values.push(best);
            saturated.push(arg.0 == 0 || arg.0 + 1 == n || arg.1 == 0 || arg.1 + 1 == m);
        }
    }
    let function = PairedFunction::from_f64(primal, dual, values).expect("conjugate of a proper table is finite");
    JointConjugate { function, saturated }
}

fn conjugate_transpose_fast(h: &PairedFunction) -> JointConjugate {
    let (primal, dual) = (*h.primal(), *h.dual());
    let (n, m) = (primal.len(), dual.len());
    // rows[u][i] = max_σ (σ·x_i − h(u, σ))
    let mut rows = vec![f64::NEG_INFINITY; n * n];
    let mut row_arg = vec![NO_ARGMAX; n * n];
    for u in 0..n {
        let (v, a) = conjugate_fast_raw(&dual, h.row(u), &primal);
        rows[u * n..(u + 1) * n].copy_from_slice(&v);
        row_arg[u * n..(u + 1) * n].copy_from_slice(&a);
    }
    let mut values = vec![0.0; n * m];
    let mut saturated = vec![false; n * m];
    let mut column = vec![0.0; n];
    for i in 0..n {
        for u in 0..n {
            column[u] = -rows[u * n + i];
        }
        let (v, a) = conjugate_fast_raw(&primal, &column, &dual);
        for j in 0..m {
            values[i * m + j] = v[j];
            let u = a[j];
            let k = row_arg[u * n + i];
            saturated[i * m + j] = u == 0 || u + 1 == n || k == 0 || k + 1 == m;
        }
    }
    let function = PairedFunction::from_f64(primal, dual, values).expect("conjugate of a proper table is finite");
    JointConjugate { function, saturated }
}

/// `co̅h`: the joint biconjugate, kept on the convex hull of `dom h` (taken
/// in node-index space) and `+∞` elsewhere. Saturation flags from both
/// conjugations are merged.
pub fn convex_closure(h: &PairedFunction, method: JointMethod) -> JointConjugate {
    let first = conjugate_transpose(h, method);
    let second = conjugate_transpose(&first.function, method);
    let hull = DomainHull::of(h);
    let m = h.dual().len();
    let values = second
        .function
        .raw()
        .iter()
        .enumerate()
        .map(|(k, &v)| if hull.contains((k / m) as i64, (k % m) as i64) { v } else { f64::INFINITY })
        .collect();
    let saturated = first.saturated.iter().zip(&second.saturated).map(|(a, b)| *a || *b).collect();
    let function =
        PairedFunction::from_f64(*h.primal(), *h.dual(), values).expect("hull contains the finite cells of h");
    JointConjugate { function, saturated }
}

/// Convex hull of the finite cells, counter-clockwise.
struct DomainHull {
    vertices: Vec<(i64, i64)>,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

impl DomainHull {
    fn of(h: &PairedFunction) -> Self {
        let m = h.dual().len();
        // row-major order is already lexicographic
        let points: Vec<(i64, i64)> = h
            .raw()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .map(|(k, _)| ((k / m) as i64, (k % m) as i64))
            .collect();
        if points.len() <= 2 {
            return Self { vertices: points };
        }
        let mut lower: Vec<(i64, i64)> = Vec::new();
        for &p in &points {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<(i64, i64)> = Vec::new();
        for &p in points.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self { vertices: lower }
    }

    fn contains(&self, i: i64, j: i64) -> bool {
        let p = (i, j);
        match self.vertices.as_slice() {
            [] => false,
            [a] => *a == p,
            [a, b] => on_segment(*a, *b, p),
            vs => (0..vs.len()).all(|k| cross(vs[k], vs[(k + 1) % vs.len()], p) >= 0),
        }
    }
}

fn on_segment(a: (i64, i64), b: (i64, i64), p: (i64, i64)) -> bool {
    cross(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}
