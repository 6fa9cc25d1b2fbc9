//! Bifunctions `F: C × C → ℝ` with `F(x, x) = 0`, the operators `A^F` and
//! `^F A`, their representative functions `h_F` and `g_F`, and mechanical
//! checks of the lemmas and maximality theorems built on them.

mod lemmas;
mod operators;
mod suite;
mod table;

pub use lemmas::{check_bo_maximal, check_lemma4, check_lemma5, check_lemma_le0};
pub use operators::{build_g, build_h, extract_af, extract_fa};
pub use suite::{theorem_suite, Applicability};
pub use table::{check_bifunction_monotone, BifunctionTable, FlagWitness, HypothesisProfile, DIAGONAL_TOL};
