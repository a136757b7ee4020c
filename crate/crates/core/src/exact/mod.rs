//! Exact Gaussian-rational arithmetic and linear algebra.

mod matrix;
mod rat;
mod scalar;
mod subspace;

pub use matrix::ExactMatrix;
pub use rat::{factorial, parse_rat, Rat};
pub use scalar::ExactScalar;
pub(crate) use scalar::parse_scalar;
pub use subspace::{dense_from_sparse, sparse_from_dense, EchelonBuilder, SparseVec, Subspace};

/// Sesquilinear pairing `Σ u_i conj(v_i)`.
pub fn dot_conj(u: &[ExactScalar], v: &[ExactScalar]) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * &b.conj());
        }
    }
    acc
}

pub fn vec_add(u: &[ExactScalar], v: &[ExactScalar]) -> Vec<ExactScalar> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn vec_sub(u: &[ExactScalar], v: &[ExactScalar]) -> Vec<ExactScalar> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn vec_scale(u: &[ExactScalar], s: &ExactScalar) -> Vec<ExactScalar> {
    u.iter().map(|a| a * s).collect()
}

pub fn vec_conj(u: &[ExactScalar]) -> Vec<ExactScalar> {
    u.iter().map(ExactScalar::conj).collect()
}

pub fn vec_is_zero(u: &[ExactScalar]) -> bool {
    u.iter().all(ExactScalar::is_zero)
}

pub fn zero_vec(n: usize) -> Vec<ExactScalar> {
    vec![ExactScalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<ExactScalar> {
    let mut v = zero_vec(n);
    v[i] = ExactScalar::one();
    v
}
