use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("function is improper: no finite value on the grid")]
    Improper,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("sub-interval [{lo}, {hi}] invalid for a grid with {n} nodes")]
    InvalidSubInterval { lo: usize, hi: usize, n: usize },

    #[error("query at index {0} lies outside the effective domain")]
    OutsideDomain(usize),

    #[error("graph pair ({x}, {s}) does not coincide with a grid node pair")]
    OffGrid { x: f64, s: f64 },

    #[error("operator graph is empty")]
    EmptyGraph,

    #[error("graph has {got} pairs; the ψ envelope is limited to {limit}")]
    GraphTooLarge { got: usize, limit: usize },

    #[error("bifunction diagonal F(x,x) = {value} at x = {x} (must vanish)")]
    NonzeroDiagonal { x: f64, value: f64 },

    #[error("mismatched grids or domains: {0}")]
    Mismatch(String),

    #[error("dual grid must be symmetric about 0 with an odd node count")]
    AsymmetricDual,

    #[error("node {0} lies outside the bifunction domain C")]
    OutsideC(usize),
}
