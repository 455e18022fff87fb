//! Exact coefficient rings, central traces, and sparse multivariate
//! polynomials.

pub mod literal;
pub mod poly;
pub mod ring;
pub mod trace;

pub use poly::{Monomial, PolyMatrix, Polynomial};
pub use ring::{render_element, Element, Ring};
pub use trace::{check_centrality, CentralityOutcome, Trace, TraceKind};
