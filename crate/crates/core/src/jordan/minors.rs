use std::sync::Arc;

use super::peirce::{PeirceDecomposition, Tripotent};
use super::triple::JordanTriple;
use crate::error::{Error, Result};
use crate::exact::{vec_sub, ExactMatrix, ExactScalar};
use crate::poly::Poly;

/// Peirce-0 subtriple `W = E⁰_c` of the frame partial sum `c = e_1 + … + e_ℓ`,
/// realized as a triple of its own with an isometric embedding `W → E`.
#[derive(Debug)]
pub struct Subtriple {
    pub l: usize,
    pub c: Tripotent,
    pub peirce: PeirceDecomposition,
    pub w: Arc<JordanTriple>,
    /// `dim E × dim W`; column `k` is the image of the `k`-th basis vector of `W`.
    pub embed: ExactMatrix,
    /// `dim W × dim E`: `W`-coordinates of the Peirce-0 component.
    coords: ExactMatrix,
    u_basis: Vec<Vec<ExactScalar>>,
}

impl Subtriple {
    /// `ι(w)`.
    pub fn from_w(&self, w: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        self.embed.mul_vec(w)
    }

    /// `W`-coordinates of `P0 z`.
    pub fn to_w(&self, z: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        self.coords.mul_vec(z)
    }

    /// `dim E × dim W` matrix and offset for the normal projection `w ↦ c + ι(w)`.
    pub fn normal_map(&self) -> (&[ExactScalar], &ExactMatrix) {
        (self.c.vector(), &self.embed)
    }

    /// `ω(z) = w − Q_v(u^{-*})` in `W`-coordinates, where `u^{-*}` is the inverse of `Q_c u` in `E²_c`.
    pub fn omega(&self, t: &JordanTriple, z: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        let u = self.peirce.p2.mul_vec(z)?;
        let v = self.peirce.p1.mul_vec(z)?;
        let w = self.peirce.p0.mul_vec(z)?;
        let c = self.c.vector();
        let y = t.quad(c, &u)?;
        let x = if self.u_basis.is_empty() {
            vec![ExactScalar::zero(); t.dim()]
        } else {
            let cols: Vec<Vec<ExactScalar>> = self
                .u_basis
                .iter()
                .map(|b| t.quad(&y, &t.quad(c, b)?))
                .collect::<Result<_>>()?;
            let m = ExactMatrix::from_columns(t.dim(), &cols)?;
            let alpha = m.solve(&y).map_err(|_| Error::Singular("z ∉ Ω: Peirce-2 component is not invertible".into()))?;
            let mut x = vec![ExactScalar::zero(); t.dim()];
            for (a, b) in alpha.iter().zip(&self.u_basis) {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += &(a * bi);
                }
            }
            x
        };
        let om = vec_sub(&w, &t.quad(&v, &x)?);
        self.to_w(&om)
    }
}

impl JordanTriple {
    /// Peirce-0 subtriple for `c = e_1 + … + e_ℓ` (cached per `ℓ`).
    pub fn subtriple(&self, l: usize) -> Result<Arc<Subtriple>> {
        self.cache.get_or_try("subtriple", vec![l], || {
            let (wf, embed) = self.family().peirce_zero(l)?;
            let w = JordanTriple::build(wf)?;
            let c = Tripotent::new(self, self.frame_sum(l))?;
            let peirce = PeirceDecomposition::new(self, &c)?;
            // coords = G_W^{-1} ι* G_E
            let coords = if w.dim() == 0 {
                ExactMatrix::zeros(0, self.dim())
            } else {
                let gw_inv = w.metric().inverse()?;
                &(&gw_inv * &embed.adjoint()) * self.metric()
            };
            let u_basis = peirce.space(2).basis_dense();
            Ok(Subtriple { l, c, peirce, w, embed, coords, u_basis })
        })
    }

    /// `N_m(z)`.
    pub fn minor(&self, m: usize, z: &[ExactScalar]) -> Result<ExactScalar> {
        self.minor_poly(m)?.eval(z)
    }

    /// Jordan determinant `Δ_e = N_r`.
    pub fn determinant(&self, z: &[ExactScalar]) -> Result<ExactScalar> {
        self.minor(self.rank(), z)
    }

    /// Conical polynomial `N^λ = Π_m N_m^{λ_m − λ_{m+1}}`.
    pub fn conical_poly(&self, parts: &[usize]) -> Result<Poly> {
        if parts.len() > self.rank() {
            return Err(Error::InvalidParams(format!("partition of length {} exceeds rank {}", parts.len(), self.rank())));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParams("partition parts must be weakly decreasing".into()));
        }
        let mut p = Poly::one(self.dim());
        for m in 1..=parts.len() {
            let next = parts.get(m).copied().unwrap_or(0);
            let e = parts[m - 1] - next;
            if e > 0 {
                p = &p * &self.minor_poly(m)?.pow(e as u32);
            }
        }
        Ok(p)
    }

    pub fn conical(&self, parts: &[usize], z: &[ExactScalar]) -> Result<ExactScalar> {
        self.conical_poly(parts)?.eval(z)
    }

    /// Jordan inverse `z^{-1} = P_z^{-1} z`.
    pub fn jordan_inverse(&self, z: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        let p = self.quadratic_rep(z)?;
        p.solve(z).map_err(|_| Error::Singular("element is not invertible".into()))
    }

    /// `z^{-*}`, the inverse of `Q_e z`; satisfies `Δ'(z)v = Δ(z)·(v|z^{-*})`.
    pub fn inverse_star(&self, z: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        let qe = self.quad(&self.unit(), z)?;
        self.jordan_inverse(&qe)
    }

    /// Directional derivative `N_m'(z) v`.
    pub fn minor_derivative(&self, m: usize, z: &[ExactScalar], v: &[ExactScalar]) -> Result<ExactScalar> {
        let p = self.minor_poly(m)?;
        let mut acc = ExactScalar::zero();
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                acc += &(&p.partial(i).eval(z)? * vi);
            }
        }
        Ok(acc)
    }
}
