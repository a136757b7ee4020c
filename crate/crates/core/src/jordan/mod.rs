//! Hermitian Jordan triples of the classical families, Peirce calculus,
//! Jordan minors and the compression map `ω`.

mod family;
mod minors;
mod peirce;
mod triple;

pub use family::Family;
pub use minors::Subtriple;
pub use peirce::{Frame, JointPeirce, PeirceDecomposition, Tripotent};
pub use triple::{make_triple, JordanTriple};

/// Parses a descriptor such as `matrix:2x3` and builds the triple.
pub fn parse_triple(descriptor: &str) -> crate::Result<std::sync::Arc<JordanTriple>> {
    make_triple(descriptor.parse()?)
}
