//! Partition ideals `J^λ` as degree truncations, and the checks of the
//! Peter–Weyl decomposition, containment and rectangular intersections.

use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{EchelonBuilder, ExactScalar};
use crate::jordan::JordanTriple;
use crate::ktype::{ktype_space, ktype_sum, Partition};
use crate::poly::{coords_in, MonomialBasis, Poly, PolySubspace};
use crate::report::{Check, Status};

/// Graded pieces `J^λ ∩ P^m` for `0 ≤ m ≤ n` (zero below `|λ|`).
#[derive(Clone, Debug)]
pub struct IdealTruncation {
    pub partition: Partition,
    pub degree: usize,
    pieces: Vec<PolySubspace>,
}

impl IdealTruncation {
    pub fn piece(&self, m: usize) -> Option<&PolySubspace> {
        self.pieces.get(m)
    }

    pub fn pieces(&self) -> &[PolySubspace] {
        &self.pieces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(PolySubspace::dim).collect()
    }

    /// Membership of an arbitrary polynomial of degree ≤ n (checked degree by degree).
    pub fn contains(&self, f: &Poly) -> bool {
        match f.degree() {
            None => true,
            Some(top) if top > self.degree => false,
            Some(top) => (0..=top).all(|m| {
                let h = f.homogeneous_part(m);
                h.is_zero() || self.pieces[m].contains(&h)
            }),
        }
    }
}

/// `J^λ` truncated at degree `n`: piece `m` is spanned by `z^γ·p`, `|γ| = m − |λ|`, `p ∈ P^λ`.
pub fn ideal_truncation(t: &JordanTriple, lambda: &Partition, n: usize) -> Result<Arc<IdealTruncation>> {
    let k = lambda.size();
    if n < k {
        return Err(Error::DegreeTooSmall { bound: n, needed: k });
    }
    let mut key = lambda.parts().to_vec();
    key.push(usize::MAX);
    key.push(n);
    t.cache.get_or_try("ideal", key, || {
        if n > k {
            // reuse the lower truncation
            let lower = ideal_truncation(t, lambda, n - 1)?;
            let mut pieces = lower.pieces.clone();
            let next = multiply_by_linear(t, &pieces[n - 1], n)?;
            pieces.push(next);
            return Ok(IdealTruncation { partition: lambda.clone(), degree: n, pieces });
        }
        let d = t.dim();
        let mut pieces: Vec<PolySubspace> = (0..k).map(|m| PolySubspace::zero(MonomialBasis::homogeneous(d, m))).collect();
        pieces.push(ktype_space(t, lambda)?.space.clone());
        Ok(IdealTruncation { partition: lambda.clone(), degree: n, pieces })
    })
}

/// `span{ z_i · q }` for `q` in a homogeneous piece of degree `m − 1`.
fn multiply_by_linear(t: &JordanTriple, piece: &PolySubspace, m: usize) -> Result<PolySubspace> {
    let d = t.dim();
    let basis = MonomialBasis::homogeneous(d, m);
    let mut b = EchelonBuilder::new(basis.len());
    for q in piece.polys() {
        for i in 0..d {
            let zq = q.mul_monomial(&crate::poly::Monomial::var(d, i));
            b.insert(&coords_in(&basis, &zq)?);
        }
    }
    PolySubspace::from_subspace(basis, b.finish())
}

/// `J^λ ∩ P^m = ⊕_{μ ≥ λ, |μ| = m} P^μ` for `|λ| ≤ m ≤ n`.
pub fn theorem_i_check(t: &JordanTriple, lambda: &Partition, n: usize) -> Result<Check> {
    let trunc = ideal_truncation(t, lambda, n)?;
    let mut rows = Vec::new();
    let mut status = Status::Pass;
    let mut first_bad = None;
    for m in lambda.size()..=n {
        let piece = &trunc.pieces[m];
        let sum = ktype_sum(t, m, |mu| mu.contains(lambda))?;
        let ok = *piece == sum;
        let comps: Vec<serde_json::Value> = crate::ktype::Partition::of_size(m, t.rank())
            .into_iter()
            .filter(|mu| mu.contains(lambda))
            .map(|mu| Ok(json!({ "mu": mu.to_string(), "dim": ktype_space(t, &mu)?.dim() })))
            .collect::<Result<_>>()?;
        rows.push(json!({ "degree": m, "ideal_dim": piece.dim(), "sum_dim": sum.dim(), "components": comps, "equal": ok }));
        if !ok {
            status = Status::Fail;
            first_bad.get_or_insert(m);
        }
    }
    Ok(Check::new("theorem_i", status)
        .param("triple", t.descriptor())
        .param("lambda", lambda)
        .param("degree", n)
        .details(json!({ "degrees": rows, "first_failure": first_bad })))
}

/// Observed containment `J^μ ⊆ J^λ` on truncations up to `n`.
pub fn ideal_contains(t: &JordanTriple, lambda: &Partition, mu: &Partition, n: usize) -> Result<bool> {
    let top = n.max(lambda.size()).max(mu.size());
    let jl = ideal_truncation(t, lambda, top)?;
    let jm = ideal_truncation(t, mu, top)?;
    for m in 0..=top {
        if !jl.pieces[m].contains_space(&jm.pieces[m])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `J^μ ⊆ J^λ` (observed) agrees with `μ ≥ λ`.
pub fn containment_check(t: &JordanTriple, lambda: &Partition, mu: &Partition, n: usize) -> Result<Check> {
    let observed = ideal_contains(t, lambda, mu, n)?;
    let predicted = mu.contains(lambda);
    Ok(Check::new("containment", Status::from_bool(observed == predicted))
        .param("triple", t.descriptor())
        .param("lambda", lambda)
        .param("mu", mu)
        .param("degree", n)
        .details(json!({ "observed": observed, "order": predicted })))
}

/// Rectangles `n_s^{(ℓ_s)}` whose diagrams cover that of `λ`.
pub fn rectangular_decomposition(lambda: &Partition) -> Vec<(usize, usize)> {
    let p = lambda.parts();
    let mut out = Vec::new();
    for (j, &v) in p.iter().enumerate() {
        if p.get(j + 1) != Some(&v) {
            out.push((v, j + 1));
        }
    }
    out
}

/// `J^λ ∩ P^m = ∩_s J^{n_s^{(ℓ_s)}} ∩ P^m` for `m ≤ n`.
pub fn intersection_check(t: &JordanTriple, lambda: &Partition, n: usize) -> Result<Check> {
    let rects = rectangular_decomposition(lambda);
    let jl = ideal_truncation(t, lambda, n.max(lambda.size()))?;
    let mut dims = Vec::new();
    let mut ok = true;
    for m in 0..=n {
        let mut inter = PolySubspace::full(MonomialBasis::homogeneous(t.dim(), m));
        for &(ns, ls) in &rects {
            let rp = Partition::rectangle(ns, ls);
            if rp.size() > m {
                inter = PolySubspace::zero(inter.basis().clone());
                break;
            }
            inter = inter.intersect(&ideal_truncation(t, &rp, m)?.pieces[m])?;
        }
        let eq = jl.pieces[m] == inter;
        ok &= eq;
        dims.push(json!({ "degree": m, "ideal_dim": jl.pieces[m].dim(), "intersection_dim": inter.dim(), "equal": eq }));
    }
    let rect_text: Vec<String> = rects.iter().map(|(a, b)| format!("{a}^({b})")).collect();
    Ok(Check::new("rectangular_intersection", Status::from_bool(ok))
        .param("triple", t.descriptor())
        .param("lambda", lambda)
        .param("degree", n)
        .details(json!({ "rectangles": rect_text, "degrees": dims })))
}

/// Every element of `J^{1^{(m)}}` up to degree `n` vanishes at the given points (of rank < m).
pub fn fundamental_vanishing_check(
    t: &JordanTriple,
    m: usize,
    n: usize,
    points: &[Vec<ExactScalar>],
) -> Result<Check> {
    let lambda = Partition::fundamental(m);
    let trunc = ideal_truncation(t, &lambda, n)?;
    let mut bad = None;
    'outer: for z in points {
        let rk = t.rank_of(z)?;
        if rk >= m {
            return Err(Error::RankMismatch { expected: m - 1, found: rk });
        }
        for piece in trunc.pieces() {
            for f in piece.polys() {
                if !f.eval(z)?.is_zero() {
                    bad = Some(f.to_string());
                    break 'outer;
                }
            }
        }
    }
    Ok(Check::new("fundamental_vanishing", Status::from_bool(bad.is_none()))
        .param("triple", t.descriptor())
        .param("m", m)
        .param("degree", n)
        .details(json!({ "points": points.len(), "counterexample": bad })))
}
