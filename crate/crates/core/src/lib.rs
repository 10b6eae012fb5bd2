//! Certifying recognition of Robinsonian similarity matrices.
//!
//! A symmetric matrix is Robinsonian when some simultaneous row/column
//! reordering makes every row and column non-increasing away from the
//! diagonal. [`certify::certify`] decides this and always returns a
//! certificate: either such an ordering, or a weighted asteroidal triple
//! whose three witnessing paths can be checked entry by entry without any
//! search. The crate also carries a cubic enumerator for all weighted
//! asteroidal triples, the unit-interval-graph specialisation with classic
//! graph obstructions, and oracles for maximal Robinsonian submatrices.

#![allow(clippy::needless_range_loop)]

pub mod avoidance;
pub mod certificates;
pub mod certify;
pub mod cli;
pub mod decomposition;
pub mod formats;
pub mod gen;
pub mod layers;
pub mod matrix;
pub mod oracle;
pub mod submatrix;
pub mod uig;
pub mod values;
pub mod wat_enum;

pub use avoidance::{AvoidanceGraph, Path};
pub use certificates::{Certificate, WatVerdict, WeightedAsteroidalTriple};
pub use certify::{certify, certify_with_critical, CertifyOutcome};
pub use matrix::{LinearOrder, OrderVerdict, SymMatrix};
pub use values::EntryValue;

/// Element identifier. Submatrices keep the labels of the matrix they were
/// taken from, so certificates always name original elements.
pub type Label = usize;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown element label {0}")]
    UnknownLabel(Label),
    #[error("duplicate element label {0}")]
    DuplicateLabel(Label),
    #[error("elements must be distinct")]
    NotDistinct,
    #[error("empty element set")]
    EmptySet,
    #[error("not a permutation of the matrix labels")]
    NotPermutation,
    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error("matrix shape: {0}")]
    Shape(String),
    #[error("invalid value: {0}")]
    Value(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size {n} exceeds the bound {max}")]
    SizeBound { n: usize, max: usize },
    #[error("malformed certificate: {0}")]
    Certificate(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
