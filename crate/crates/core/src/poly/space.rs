use std::sync::Arc;

use super::fock::FockProduct;
use super::monomial::MonomialBasis;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exact::{EchelonBuilder, ExactScalar, SparseVec, Subspace};

/// A space of polynomials, stored as a [`Subspace`] of coefficient vectors
/// over a fixed monomial enumeration.
#[derive(Clone, Debug)]
pub struct PolySubspace {
    basis: Arc<MonomialBasis>,
    space: Subspace,
}

impl PartialEq for PolySubspace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) && self.space == other.space
    }
}

impl Eq for PolySubspace {}

impl PolySubspace {
    pub fn zero(basis: Arc<MonomialBasis>) -> Self {
        let n = basis.len();
        PolySubspace { basis, space: Subspace::zero(n) }
    }

    pub fn full(basis: Arc<MonomialBasis>) -> Self {
        let n = basis.len();
        PolySubspace { basis, space: Subspace::full(n) }
    }

    pub fn from_subspace(basis: Arc<MonomialBasis>, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != basis.len() {
            return Err(Error::dims("subspace ambient differs from monomial count"));
        }
        Ok(PolySubspace { basis, space })
    }

    pub fn span(basis: Arc<MonomialBasis>, polys: &[Poly]) -> Result<Self> {
        let mut b = EchelonBuilder::new(basis.len());
        for p in polys {
            b.insert(&coords_in(&basis, p)?);
        }
        Ok(PolySubspace { basis, space: b.finish() })
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn coords(&self, p: &Poly) -> Result<SparseVec> {
        coords_in(&self.basis, p)
    }

    pub fn poly_of(&self, v: &SparseVec) -> Poly {
        poly_from_coords(&self.basis, v)
    }

    /// Canonical (echelon) basis as polynomials.
    pub fn polys(&self) -> Vec<Poly> {
        self.space.rows().iter().map(|r| self.poly_of(r)).collect()
    }

    /// `false` also when `p` has monomials outside the enumeration.
    pub fn contains(&self, p: &Poly) -> bool {
        match self.coords(p) {
            Ok(v) => self.space.contains_sparse(&v),
            Err(_) => false,
        }
    }

    fn same(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.basis, &other.basis) {
            return Err(Error::dims("polynomial spaces over different monomial enumerations"));
        }
        Ok(())
    }

    pub fn contains_space(&self, other: &Self) -> Result<bool> {
        self.same(other)?;
        self.space.contains_subspace(&other.space)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(PolySubspace { basis: self.basis.clone(), space: self.space.sum(&other.space)? })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(PolySubspace { basis: self.basis.clone(), space: self.space.intersect(&other.space)? })
    }

    pub fn quotient_dim(&self, other: &Self) -> Result<usize> {
        self.same(other)?;
        self.space.quotient_dim(&other.space)
    }

    /// Fock-orthogonal projection of `f` onto this space.
    pub fn project(&self, f: &Poly, fock: &FockProduct) -> Result<Poly> {
        let b = self.polys();
        project_onto(&b, f, fock)
    }
}

/// Orthogonal projection onto the span of linearly independent `basis`.
pub fn project_onto(basis: &[Poly], f: &Poly, fock: &FockProduct) -> Result<Poly> {
    if basis.is_empty() {
        return Ok(Poly::zero(f.nvars()));
    }
    let g = fock.gram_of(basis)?;
    let rhs: Vec<ExactScalar> = basis.iter().map(|b| fock.inner(b, f)).collect::<Result<_>>()?;
    let c = g.solve(&rhs)?;
    let mut out = Poly::zero(f.nvars());
    for (ci, bi) in c.iter().zip(basis) {
        out = &out + &bi.scale(ci);
    }
    Ok(out)
}

pub fn coords_in(basis: &MonomialBasis, p: &Poly) -> Result<SparseVec> {
    if p.nvars() != basis.nvars() {
        return Err(Error::dims("polynomial arity"));
    }
    let mut v: SparseVec = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let i = basis
            .index_of(m)
            .ok_or_else(|| Error::dims(format!("monomial of degree {} outside the enumeration", m.degree())))?;
        v.push((i, c.clone()));
    }
    v.sort_by_key(|(i, _)| *i);
    Ok(v)
}

pub fn poly_from_coords(basis: &MonomialBasis, v: &SparseVec) -> Poly {
    let mut p = Poly::zero(basis.nvars());
    for (i, c) in v {
        p.add_term(basis.monomial(*i).clone(), c.clone());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactMatrix;

    #[test]
    fn membership_and_projection() {
        let basis = MonomialBasis::homogeneous(4, 2);
        let det = Poly::parse("z0*z3 - z1*z2", 4).unwrap();
        let line = PolySubspace::span(basis.clone(), &[det.clone()]).unwrap();
        assert_eq!(line.dim(), 1);
        assert!(line.contains(&det.scale(&ExactScalar::int(5))));
        assert!(!line.contains(&Poly::parse("z0*z3", 4).unwrap()));
        let fock = FockProduct::new(ExactMatrix::identity(4)).unwrap();
        let f = Poly::parse("z0*z3", 4).unwrap();
        assert_eq!(line.project(&f, &fock).unwrap(), det.scale(&ExactScalar::frac(1, 2)));
    }
}
