//! Monotone operators on `X × X*` grids: graphs, Fitzpatrick and ψ
//! functions, joint conjugates, representative-function checks and the
//! maximality certificate `h ≥ c`, `h*ᵀ ≥ c`.

mod certificate;
mod fitzpatrick;
mod graph;
mod joint;
mod paired;

pub use certificate::{
    compare_equality_sets, equality_set, maximality_certificate, verify_representative, EqualitySetComparison,
};
pub use fitzpatrick::{fitzpatrick, psi_envelope, PSI_GRAPH_LIMIT};
pub use graph::{IntervalOperator, MonotonicityWitness, OperatorGraph};
pub use joint::{conjugate_transpose, convex_closure, JointConjugate, JointMethod};
pub use paired::PairedFunction;
