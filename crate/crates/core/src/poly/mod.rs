//! Polynomials and sesqui-polynomials over Gaussian rationals, polynomial
//! subspaces and the Fischer–Fock inner product.

mod fock;
mod monomial;
#[allow(clippy::module_inception)]
mod poly;
mod sesqui;
mod space;

pub use fock::FockProduct;
pub use monomial::{count_homogeneous, monomials_of_degree, Monomial, MonomialBasis};
pub use poly::Poly;
pub use sesqui::SesquiPoly;
pub use space::{coords_in, poly_from_coords, project_onto, PolySubspace};
