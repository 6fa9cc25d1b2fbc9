//! Discrete convex-analysis toolkit for monotone bifunctions.
//!
//! Everything lives on uniform one-dimensional grids: a primal grid for `X`
//! and a dual grid for `X*`. Functions are sampled with values in
//! `ℝ ∪ {+∞}`, conjugates are finite maxima over grid nodes, and every
//! inequality between representative functions is checked node by node and
//! reported as a [`report::CertificateReport`].
//!
//! Module map:
//!
//! * [`extgrid`]: extended reals, grids, sampled functions.
//! * [`fenchel`]: Legendre–Fenchel conjugation, convex envelopes,
//!   subdifferentials and Young's inequality.
//! * [`monop`]: operator graphs, Fitzpatrick and ψ functions, joint conjugates
//!   and maximality certificates.
//! * [`bifn`]: bifunction tables, the operators `A^F` / `^F A`, the functions
//!   `h_F` / `g_F` and the theorem suite.
//! * [`bisum`]: sums of bifunctions and partial infimal convolution.

pub mod bifn;
pub mod bisum;
pub mod catalog;
pub mod error;
pub mod extgrid;
pub mod fenchel;
pub mod monop;
#[cfg(feature = "experimental-2d")]
pub mod plane;
pub mod report;

pub use error::{Error, Result};
pub use extgrid::{ExtendedValue, Grid, GridFunction, SubInterval};
pub use fenchel::SlopeInterval;
pub use report::{CertificateReport, Check, CheckConfig, Tolerances, Window, Witness};
