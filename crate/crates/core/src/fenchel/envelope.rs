use crate::extgrid::GridFunction;

/// Indices of the lower convex hull of `{(xs[i], v[i]) : v[i] < +∞}`, left
/// to right (Andrew's monotone chain, lower half). `xs` must be increasing.
pub(crate) fn lower_hull(xs: &[f64], v: &[f64]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::new();
    for i in (0..v.len()).filter(|&i| v[i].is_finite()) {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (xs[b] - xs[a]) * (v[i] - v[a]) - (v[b] - v[a]) * (xs[i] - xs[a]);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull
}

/// Greatest discretely convex minorant of `f`: linear interpolation of the
/// lower hull, `+∞` outside the convex hull of `dom f`.
pub fn convex_envelope(f: &GridFunction) -> GridFunction {
    let xs: Vec<f64> = f.grid().nodes().collect();
    let v = f.to_f64_vec();
    let hull = lower_hull(&xs, &v);
    let mut out = vec![f64::INFINITY; v.len()];
    out[hull[0]] = v[hull[0]];
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let slope = (v[b] - v[a]) / (xs[b] - xs[a]);
        for i in a..=b {
            let interp = if i == b { v[b] } else { v[a] + slope * (xs[i] - xs[a]) };
            // contact nodes keep their exact value
            out[i] = if v[i].is_finite() { interp.min(v[i]) } else { interp };
        }
    }
    GridFunction::from_f64(*f.grid(), &out).expect("envelope of a proper function is proper")
}
