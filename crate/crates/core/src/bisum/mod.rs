//! Sums of bifunctions, the partial infimal convolution of representative
//! functions in the dual variable, and the sum rule `A^F + A^G = A^{F+G}`.

mod qualification;
mod sum;

pub use qualification::{qualification, qualification_ri, QualificationCase, QualificationResult};
pub use sum::{check_lemma14, check_prop16, check_theorem15, inf_convolution2, sum_bifunctions};
