//! Exact verification of holonomy-weighted matrix-tree theorems.
//!
//! This crate constructs holonomy-twisted Laplacians on complete directed
//! graphs and on complete skeleta of simplicial complexes, computes their
//! τ-determinants by direct permutation expansion, evaluates the matching
//! forest-sum formulas by exhaustive enumeration, and certifies that both
//! sides agree as identities in a multivariate polynomial ring. All
//! arithmetic is exact.

pub mod algebra;
pub mod determinant;
pub mod forests;
pub mod graph;
pub mod harness;
pub mod lift;
pub mod report;
pub mod simplicial;

pub use algebra::{Element, Monomial, PolyMatrix, Polynomial, Ring, Trace};
pub use graph::{GraphInstance, WeightMode};
pub use report::VerificationReport;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("element does not belong to the expected ring")]
    ElementRingMismatch,
    #[error("polynomials have different coefficient rings")]
    PolynomialRingMismatch,
    #[error("identity trace requires a commutative ring")]
    TraceRequiresCommutative,
    #[error("unsupported trace for this ring")]
    UnsupportedTrace,
    #[error("exact division by {0} is not available in this ring")]
    DivisionUnavailable(u64),
    #[error("no assignment for variable {0}")]
    MissingAssignment(u32),
    #[error("minor size {k} out of range for matrix of size {size}")]
    MinorOutOfRange { k: usize, size: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("determinant expansion size {0} exceeds the cap {1}; use force to override")]
    DeterminantTooLarge(usize, usize),
    #[error("inner vertex count {m} out of range for {n} vertices")]
    InnerCountOutOfRange { m: usize, n: usize },
    #[error("self-loop edge ({0}, {0}) is not allowed")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) references an unknown vertex")]
    EdgeOutOfRange(usize, usize),
    #[error("operation requires scalar holonomies; matrix holonomies go through the lift")]
    MatrixHolonomiesNotScalar,
    #[error("operation requires matrix holonomies")]
    ScalarHolonomiesNotMatrix,
    #[error("operation requires symmetric weight mode")]
    NotSymmetricMode,
    #[error("enumeration size {0} exceeds the cap {1}")]
    EnumerationTooLarge(u128, u128),
    #[error("malformed instance document: {0}")]
    MalformedInstance(String),
    #[error("dimension {d} out of range for {v} vertices")]
    DimensionOutOfRange { d: usize, v: usize },
    #[error("cells are not incident as required")]
    NotIncident,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
