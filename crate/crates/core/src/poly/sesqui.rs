use std::collections::BTreeMap;

use super::monomial::Monomial;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exact::ExactScalar;

/// `Σ c_{αβ} z^α conj(ζ)^β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesquiPoly {
    nvars: usize,
    terms: BTreeMap<(Monomial, Monomial), ExactScalar>,
}

impl SesquiPoly {
    pub fn zero(nvars: usize) -> Self {
        SesquiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        let mut s = Self::zero(nvars);
        s.add_term(Monomial::one(nvars), Monomial::one(nvars), ExactScalar::one());
        s
    }

    /// `p(z)·conj(q(ζ))`.
    pub fn outer(p: &Poly, q: &Poly) -> Result<Self> {
        if p.nvars() != q.nvars() {
            return Err(Error::dims("outer product arity"));
        }
        let mut s = Self::zero(p.nvars());
        for (a, c) in p.terms() {
            for (b, d) in q.terms() {
                s.add_term(a.clone(), b.clone(), c * &d.conj());
            }
        }
        Ok(s)
    }

    /// `Σ g_ij z_i conj(ζ_j)`.
    pub fn pairing(g: &crate::exact::ExactMatrix) -> Self {
        let n = g.rows();
        let mut s = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                s.add_term(Monomial::var(n, i), Monomial::var(n, j), g[(i, j)].clone());
            }
        }
        s
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, Monomial), ExactScalar> {
        &self.terms
    }

    pub fn coeff(&self, a: &Monomial, b: &Monomial) -> ExactScalar {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::dims("sesqui arity"));
        }
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-ExactScalar::one()))
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        let mut out = Self::zero(self.nvars);
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c * s);
        }
        out
    }

    /// Product, dropping every term whose holomorphic degree exceeds `max_z_degree`.
    pub fn mul_truncated(&self, other: &Self, max_z_degree: usize) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::dims("sesqui arity"));
        }
        let mut out = Self::zero(self.nvars);
        for ((a1, b1), c1) in &self.terms {
            let d1 = a1.degree();
            for ((a2, b2), c2) in &other.terms {
                if d1 + a2.degree() > max_z_degree {
                    continue;
                }
                out.add_term(a1.mul(a2), b1.mul(b2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_truncated(other, usize::MAX)
    }

    pub fn truncate(&self, max_z_degree: usize) -> Self {
        SesquiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|((a, _), _)| a.degree() <= max_z_degree).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Part of bidegree `(n, n)`.
    pub fn bihomogeneous_part(&self, n: usize) -> Self {
        SesquiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| a.degree() == n && b.degree() == n)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// `c_{αβ} = conj(c_{βα})` for all pairs.
    pub fn is_hermitian(&self) -> bool {
        self.terms.iter().all(|((a, b), c)| self.coeff(b, a) == c.conj())
    }

    pub fn eval(&self, z: &[ExactScalar], zeta: &[ExactScalar]) -> Result<ExactScalar> {
        if z.len() != self.nvars || zeta.len() != self.nvars {
            return Err(Error::dims("sesqui evaluation point"));
        }
        let zc: Vec<ExactScalar> = zeta.iter().map(ExactScalar::conj).collect();
        let mut acc = ExactScalar::zero();
        for ((a, b), c) in &self.terms {
            acc += &(c * &(&mono_eval(a, z) * &mono_eval(b, &zc)));
        }
        Ok(acc)
    }

    /// The holomorphic polynomial `z ↦ K(z, ζ)` for fixed `ζ`.
    pub fn partial_eval_right(&self, zeta: &[ExactScalar]) -> Result<Poly> {
        if zeta.len() != self.nvars {
            return Err(Error::dims("sesqui evaluation point"));
        }
        let zc: Vec<ExactScalar> = zeta.iter().map(ExactScalar::conj).collect();
        let mut p = Poly::zero(self.nvars);
        for ((a, b), c) in &self.terms {
            p.add_term(a.clone(), c * &mono_eval(b, &zc));
        }
        Ok(p)
    }
}

fn mono_eval(m: &Monomial, z: &[ExactScalar]) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for (x, &e) in z.iter().zip(m.exps()) {
        if e > 0 {
            acc = &acc * &x.pow(e as u32);
        }
    }
    acc
}
