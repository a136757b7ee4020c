//! Exact computations on finite-dimensional hermitian Jordan triples:
//! K-type decompositions of polynomials, partition ideals and the fibers of
//! their localizations along the rank stratification.

mod error;
pub mod exact;
pub mod jordan;
pub mod ideals;
pub mod kernels;
pub mod ktype;
pub mod localize;
pub mod poly;
pub mod report;
pub mod sample;
pub mod suites;

pub use error::{Error, Result};
pub use exact::{ExactMatrix, ExactScalar, Rat, Subspace};
pub use jordan::{make_triple, parse_triple, Family, JordanTriple};
pub use poly::{FockProduct, Monomial, Poly, PolySubspace, SesquiPoly};
