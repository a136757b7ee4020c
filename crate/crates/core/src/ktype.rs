//! Peter–Weyl decomposition of polynomials: the K-type spaces `P^λ`,
//! Fock-orthogonal projections, reproducing kernels and spherical polynomials.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{sparse_from_dense, unit_vec, EchelonBuilder, ExactMatrix, ExactScalar, SparseVec, Subspace};
use crate::jordan::JordanTriple;
use crate::poly::{count_homogeneous, coords_in, poly_from_coords, project_onto, MonomialBasis, Poly, PolySubspace, SesquiPoly};

/// Weakly decreasing tuple of nonnegative integers; trailing zeros are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParams(format!("{parts:?} is not weakly decreasing")));
        }
        let mut v = parts.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        Ok(Partition(v))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `1^{(m)} = (1, …, 1)`.
    pub fn fundamental(m: usize) -> Self {
        Partition(vec![1; m])
    }

    /// Rectangle `n^{(ℓ)}`.
    pub fn rectangle(n: usize, l: usize) -> Self {
        if n == 0 {
            return Self::empty();
        }
        Partition(vec![n; l])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `λ_i` (1-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `self ≥ other` in the Young-diagram order.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| b >= a)
    }

    /// `λ* = (λ_{ℓ+1}, …)`.
    pub fn truncate(&self, l: usize) -> Partition {
        Partition(self.0.iter().skip(l).copied().collect())
    }

    /// `λ + ε_i` (1-based) when it is a partition of length ≤ `r`.
    pub fn add_box(&self, i: usize, r: usize) -> Option<Partition> {
        if i == 0 || i > r {
            return None;
        }
        let mut v = self.padded(r);
        v[i - 1] += 1;
        Partition::new(&v).ok()
    }

    pub fn padded(&self, r: usize) -> Vec<usize> {
        let mut v = self.0.clone();
        v.resize(r.max(v.len()), 0);
        v
    }

    /// Partitions of `n` with at most `r` parts, in reverse-lexicographic order.
    pub fn of_size(n: usize, r: usize) -> Vec<Partition> {
        fn rec(left: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=max.min(left)).rev() {
                cur.push(p);
                rec(left - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, r, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions with `|λ| ≤ n` and at most `r` parts, by degree then reverse-lex.
    pub fn up_to(n: usize, r: usize) -> Vec<Partition> {
        (0..=n).flat_map(|k| Self::of_size(k, r)).collect()
    }

    /// Same parts, shown padded to `r` entries.
    pub fn display_padded(&self, r: usize) -> String {
        let v = self.padded(r);
        if v.is_empty() {
            return "()".into();
        }
        format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "({})", self.0.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `"2,1"`, `"(2,1)"`, `"0"` or the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::InvalidParams(format!("bad partition `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(&parts)
    }
}

/// `P^λ` as a space of homogeneous polynomials of degree `|λ|`.
#[derive(Clone, Debug)]
pub struct KTypeSpace {
    pub partition: Partition,
    pub space: PolySubspace,
}

impl KTypeSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Poly> {
        self.space.polys()
    }
}

/// A linearly independent subset of the operators `b_i□b_j*`.
pub fn closure_operators(t: &JordanTriple) -> Result<Vec<ExactMatrix>> {
    let d = t.dim();
    let mut seen = EchelonBuilder::new(d * d);
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let m = t.box_op(&unit_vec(d, i), &unit_vec(d, j))?;
            let flat: Vec<ExactScalar> = (0..d).flat_map(|r| m.row(r).to_vec()).collect();
            if seen.insert(&sparse_from_dense(&flat)) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

fn check_partition(t: &JordanTriple, lambda: &Partition) -> Result<()> {
    if lambda.len() > t.rank() {
        return Err(Error::InvalidParams(format!("partition {lambda} has more than {} parts", t.rank())));
    }
    Ok(())
}

/// Module closure of `N^λ` under the derivations `(b_i□b_j*)^δ`; cached per triple.
pub fn ktype_space(t: &JordanTriple, lambda: &Partition) -> Result<Arc<KTypeSpace>> {
    check_partition(t, lambda)?;
    t.cache.get_or_try("ktype", lambda.parts().to_vec(), || {
        let n = lambda.size();
        let basis = MonomialBasis::homogeneous(t.dim(), n);
        let ops = t.cache.get_or_try("closure-ops", vec![], || closure_operators(t))?;
        let seed = t.conical_poly(lambda.parts())?;
        let mut echelon = EchelonBuilder::new(basis.len());
        let mut queue: Vec<Poly> = Vec::new();
        if echelon.insert(&coords_in(&basis, &seed)?) {
            queue.push(seed);
        }
        while let Some(p) = queue.pop() {
            for a in ops.iter() {
                let q = p.derive(a)?;
                if q.is_zero() {
                    continue;
                }
                let v = coords_in(&basis, &q)?;
                let rem = echelon.reduce(&v);
                if !rem.is_empty() {
                    echelon.insert(&rem);
                    queue.push(poly_from_coords(&basis, &rem));
                }
            }
        }
        let space = PolySubspace::from_subspace(basis, echelon.finish())?;
        Ok(KTypeSpace { partition: lambda.clone(), space })
    })
}

/// Fock-orthogonal projection of a homogeneous `f` onto `P^λ`.
pub fn ktype_project(t: &JordanTriple, f: &Poly, lambda: &Partition) -> Result<Poly> {
    if f.nvars() != t.dim() {
        return Err(Error::dims("polynomial arity"));
    }
    if f.is_zero() {
        return Ok(f.clone());
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if f.degree() != Some(lambda.size()) {
        return Ok(Poly::zero(t.dim()));
    }
    let k = ktype_space(t, lambda)?;
    project_onto(&k.basis(), f, t.fock())
}

/// Components `f^λ` of an arbitrary polynomial over all `λ` with `|λ| ≤ deg f`
/// (zero components omitted).
pub fn decompose(t: &JordanTriple, f: &Poly) -> Result<Vec<(Partition, Poly)>> {
    let mut out = Vec::new();
    let Some(top) = f.degree() else { return Ok(out) };
    for n in 0..=top {
        let h = f.homogeneous_part(n);
        if h.is_zero() {
            continue;
        }
        for lambda in Partition::of_size(n, t.rank()) {
            let c = ktype_project(t, &h, &lambda)?;
            if !c.is_zero() {
                out.push((lambda, c));
            }
        }
    }
    Ok(out)
}

/// `E^λ(z, ζ) = Σ p_i(z) (G^{-1})_ij conj(p_j(ζ))`.
pub fn fock_kernel(t: &JordanTriple, lambda: &Partition) -> Result<Arc<SesquiPoly>> {
    check_partition(t, lambda)?;
    t.cache.get_or_try("fock-kernel", lambda.parts().to_vec(), || {
        let basis = ktype_space(t, lambda)?.basis();
        let g = t.fock().gram_of(&basis)?;
        let gi = g.inverse()?;
        let mut k = SesquiPoly::zero(t.dim());
        for (i, pi) in basis.iter().enumerate() {
            for (j, pj) in basis.iter().enumerate() {
                let c = &gi[(i, j)];
                if c.is_zero() {
                    continue;
                }
                k = k.add(&SesquiPoly::outer(pi, pj)?.scale(c))?;
            }
        }
        Ok(k)
    })
}

/// Spherical polynomial `Φ^λ = E^λ(·, e) / E^λ(e, e)` (tube type only).
pub fn spherical(t: &JordanTriple, lambda: &Partition) -> Result<Poly> {
    if !t.is_tube() {
        return Err(Error::Unsupported(format!("{} is not of tube type", t.descriptor())));
    }
    let e = t.unit();
    let k = fock_kernel(t, lambda)?;
    let norm = k.eval(&e, &e)?;
    Ok(k.partial_eval_right(&e)?.scale(&norm.inv()?))
}

/// `(λ, d_λ)` for `|λ| = n`; errors unless the dimensions add up to the homogeneous count.
pub fn dims_report(t: &JordanTriple, n: usize) -> Result<Vec<(Partition, usize)>> {
    let rows: Vec<(Partition, usize)> = Partition::of_size(n, t.rank())
        .into_iter()
        .map(|l| Ok((l.clone(), ktype_space(t, &l)?.dim())))
        .collect::<Result<_>>()?;
    let total: usize = rows.iter().map(|r| r.1).sum();
    let expect = count_homogeneous(t.dim(), n);
    if total != expect {
        return Err(Error::IdentityViolated {
            identity: "Σ d_λ = dim P^n".into(),
            location: format!("degree {n}: {total} vs {expect}"),
        });
    }
    Ok(rows)
}

/// `⊕_{|μ| = n, μ ≥ λ} P^μ` as a subspace of the degree-`n` homogeneous polynomials.
pub fn ktype_sum(t: &JordanTriple, n: usize, filter: impl Fn(&Partition) -> bool) -> Result<PolySubspace> {
    let basis = MonomialBasis::homogeneous(t.dim(), n);
    let mut b = EchelonBuilder::new(basis.len());
    for mu in Partition::of_size(n, t.rank()) {
        if !filter(&mu) {
            continue;
        }
        for r in ktype_space(t, &mu)?.space.subspace().rows() {
            b.insert(r);
        }
    }
    PolySubspace::from_subspace(basis, b.finish())
}

/// Rows of a subspace as sparse coordinate vectors (helper for callers working in coordinates).
pub fn rows_of(space: &Subspace) -> &[SparseVec] {
    space.rows()
}
