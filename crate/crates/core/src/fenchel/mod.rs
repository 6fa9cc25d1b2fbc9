//! Legendre–Fenchel conjugation on uniform grids, lower convex envelopes,
//! subdifferentials and Young's inequality.
//!
//! The conjugate of a grid function is the finite maximum
//! `f*(s) = max { s·x − f(x) : x node, f(x) < +∞ }`, i.e. the exact conjugate
//! of `f + δ_nodes`. Two routes compute it: [`conjugate_brute`] scans every
//! node pair, [`conjugate_fast`] merges the slopes of the lower hull against
//! the sorted dual nodes in `O(N + M)`.

mod conjugate;
mod envelope;
mod interval;
mod subdiff;
mod young;

pub use conjugate::{biconjugate, biconjugate_traced, conjugate_brute, conjugate_fast, conjugate_traced, Conjugate};
pub use envelope::convex_envelope;
pub use interval::SlopeInterval;
pub use subdiff::subdifferential;
pub use young::{check_young, YoungReport};

pub(crate) use conjugate::{conjugate_brute_raw, conjugate_fast_raw, NO_ARGMAX};
pub(crate) use subdiff::quotient_interval;
