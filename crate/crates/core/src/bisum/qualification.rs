use serde::{Deserialize, Serialize};

use crate::bifn::{extract_af, BifunctionTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QualificationCase {
    /// `0` lies strictly inside the difference interval.
    Interior,
    /// The difference is the single point `{0}`.
    SingletonZero,
    /// `0` is outside the relative interior.
    Fail,
    /// One of the domains is empty.
    EmptyDomain,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QualificationResult {
    /// `[min D_F − max D_G, max D_F − min D_G]`.
    pub difference: Option<(f64, f64)>,
    pub zero_in_ri: bool,
    pub case: QualificationCase,
    /// The same test on `pr_X(dom h_F) − pr_X(dom h_G)` agrees.
    pub forms_agree: bool,
}

/// `0 ∈ ri(D_F − D_G)` for two intervals `[lo, hi]`.
pub fn qualification(dom_f: Option<(f64, f64)>, dom_g: Option<(f64, f64)>) -> QualificationResult {
    let (Some((f0, f1)), Some((g0, g1))) = (dom_f, dom_g) else {
        return QualificationResult {
            difference: None,
            zero_in_ri: false,
            case: QualificationCase::EmptyDomain,
            forms_agree: true,
        };
    };
    let (lo, hi) = (f0 - g1, f1 - g0);
    let case = if lo < 0.0 && 0.0 < hi {
        QualificationCase::Interior
    } else if lo == 0.0 && hi == 0.0 {
        QualificationCase::SingletonZero
    } else {
        QualificationCase::Fail
    };
    QualificationResult {
        difference: Some((lo, hi)),
        zero_in_ri: case != QualificationCase::Fail,
        case,
        forms_agree: true,
    }
}

fn hull(f: &BifunctionTable) -> Option<(f64, f64)> {
    let dom = extract_af(f).domain();
    let g = f.grid();
    Some((g.node(*dom.first()?), g.node(*dom.last()?)))
}

/// Qualification on the hulls of `D(A^F)` and `D(A^G)`, cross-checked
/// against the projections of `dom h_F` and `dom h_G`, which are `C`.
pub fn qualification_ri(f: &BifunctionTable, g: &BifunctionTable) -> QualificationResult {
    let mut r = qualification(hull(f), hull(g));
    let proj = |t: &BifunctionTable| Some((t.grid().node(t.domain().lo), t.grid().node(t.domain().hi)));
    r.forms_agree = qualification(proj(f), proj(g)).zero_in_ri == r.zero_in_ri;
    r
}
