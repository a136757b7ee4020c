use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::monomial::{Monomial, MonomialBasis};
use super::poly::Poly;
use super::sesqui::SesquiPoly;
use crate::error::{Error, Result};
use crate::exact::{factorial, ExactMatrix, ExactScalar, Rat};

/// Fischer–Fock inner product attached to a hermitian metric `g`
/// (`(z|w) = Σ g_ij z_i conj(w_j)`), anti-linear in the first argument.
///
/// In degree `n` the monomial Gram matrix is the inverse of the coefficient
/// matrix of `(z|w)^n / n!`; for diagonal `g` this is `⟨z^α, z^β⟩ = δ_αβ α!/g^α`.
#[derive(Debug)]
pub struct FockProduct {
    g: ExactMatrix,
    diag: Option<Vec<Rat>>,
    grams: Mutex<HashMap<usize, Arc<ExactMatrix>>>,
}

impl Clone for FockProduct {
    fn clone(&self) -> Self {
        FockProduct { g: self.g.clone(), diag: self.diag.clone(), grams: Mutex::new(HashMap::new()) }
    }
}

impl FockProduct {
    pub fn new(g: ExactMatrix) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::dims("metric must be square"));
        }
        if g.adjoint() != g {
            return Err(Error::InvalidParams("metric is not hermitian".into()));
        }
        let diag = if g.is_diagonal() {
            let d: Vec<Rat> = (0..g.rows()).map(|i| g[(i, i)].re().clone()).collect();
            if d.iter().any(|x| !x.is_positive()) {
                return Err(Error::InvalidParams("metric is not positive definite".into()));
            }
            Some(d)
        } else {
            None
        };
        Ok(FockProduct { g, diag, grams: Mutex::new(HashMap::new()) })
    }

    pub fn metric(&self) -> &ExactMatrix {
        &self.g
    }

    pub fn nvars(&self) -> usize {
        self.g.rows()
    }

    /// `1 / ⟨z^α, z^α⟩` for diagonal metrics, i.e. `g^α / α!`.
    fn diag_norm(&self, d: &[Rat], a: &Monomial) -> ExactScalar {
        let mut acc = Rat::one();
        for (gi, &e) in d.iter().zip(a.exps()) {
            if e > 0 {
                acc = &acc * &factorial(e as u32);
                acc = &acc * &gi.pow(e as u32).recip().expect("positive metric");
            }
        }
        ExactScalar::real(acc)
    }

    /// Monomial Gram matrix of homogeneous degree `n`, indexed by `MonomialBasis::homogeneous`.
    pub fn gram(&self, n: usize) -> Result<Arc<ExactMatrix>> {
        if let Some(m) = self.grams.lock().expect("gram cache").get(&n) {
            return Ok(m.clone());
        }
        let basis = MonomialBasis::homogeneous(self.nvars(), n);
        let g = if let Some(d) = &self.diag {
            let mut m = ExactMatrix::zeros(basis.len(), basis.len());
            for (i, a) in basis.monomials().iter().enumerate() {
                m[(i, i)] = self.diag_norm(d, a);
            }
            m
        } else {
            let pairing = SesquiPoly::pairing(&self.g);
            let mut k = SesquiPoly::one(self.nvars());
            for _ in 0..n {
                k = k.mul(&pairing)?;
            }
            let inv_fact = ExactScalar::real(factorial(n as u32).recip().expect("nonzero"));
            let c = ExactMatrix::from_fn(basis.len(), basis.len(), |i, j| {
                &k.coeff(basis.monomial(i), basis.monomial(j)) * &inv_fact
            });
            c.inverse()?
        };
        let g = Arc::new(g);
        Ok(self.grams.lock().expect("gram cache").entry(n).or_insert(g).clone())
    }

    pub fn monomial_inner(&self, a: &Monomial, b: &Monomial) -> Result<ExactScalar> {
        if a.degree() != b.degree() {
            return Ok(ExactScalar::zero());
        }
        if let Some(d) = &self.diag {
            return Ok(if a == b { self.diag_norm(d, a) } else { ExactScalar::zero() });
        }
        let basis = MonomialBasis::homogeneous(self.nvars(), a.degree());
        let g = self.gram(a.degree())?;
        let (i, j) = (basis.index_of(a), basis.index_of(b));
        match (i, j) {
            (Some(i), Some(j)) => Ok(g[(i, j)].clone()),
            _ => Err(Error::dims("monomial arity")),
        }
    }

    pub fn inner(&self, p: &Poly, q: &Poly) -> Result<ExactScalar> {
        if p.nvars() != self.nvars() || q.nvars() != self.nvars() {
            return Err(Error::dims("polynomial arity differs from metric size"));
        }
        let mut acc = ExactScalar::zero();
        if let Some(d) = &self.diag {
            let (small, large, swap) = if p.len() <= q.len() { (p, q, false) } else { (q, p, true) };
            for (a, c) in small.terms() {
                if let Some(c2) = large.terms().get(a) {
                    let (cp, cq) = if swap { (c2, c) } else { (c, c2) };
                    acc += &(&(&cp.conj() * cq) * &self.diag_norm(d, a));
                }
            }
            return Ok(acc);
        }
        for (a, c) in p.terms() {
            for (b, c2) in q.terms() {
                if a.degree() != b.degree() {
                    continue;
                }
                acc += &(&(&c.conj() * c2) * &self.monomial_inner(a, b)?);
            }
        }
        Ok(acc)
    }

    pub fn norm_sqr(&self, p: &Poly) -> Result<ExactScalar> {
        self.inner(p, p)
    }

    /// `G_ij = ⟨p_i, p_j⟩`.
    pub fn gram_of(&self, polys: &[Poly]) -> Result<ExactMatrix> {
        let n = polys.len();
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.inner(&polys[i], &polys[j])?;
                m[(j, i)] = v.conj();
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }
}
