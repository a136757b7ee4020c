//! Localization fibers `J^λ / M_ζ J^λ`, normal projections onto the Peirce-0
//! space and the stratum-wise checks built on them.

use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{EchelonBuilder, ExactMatrix, ExactScalar, SparseVec};
use crate::ideals::ideal_truncation;
use crate::jordan::{JordanTriple, Subtriple};
use crate::ktype::{ktype_space, Partition};
use crate::poly::{coords_in, Monomial, MonomialBasis, Poly, PolySubspace};
use crate::report::{Check, Status};

/// Rank-`ℓ` stratum with its frame representative `c = e_1 + … + e_ℓ`.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub l: usize,
    pub c: Vec<ExactScalar>,
    pub sub: Arc<Subtriple>,
    /// `λ* = (λ_{ℓ+1}, …, λ_r)`.
    pub lambda_star: Partition,
}

impl Stratum {
    pub fn new(t: &JordanTriple, lambda: &Partition, l: usize) -> Result<Self> {
        if l > t.rank() {
            return Err(Error::InvalidParams(format!("stratum {l} exceeds rank {}", t.rank())));
        }
        let sub = t.subtriple(l)?;
        let tail: Vec<usize> = lambda.parts().iter().skip(l).copied().collect();
        Ok(Stratum { l, c: t.frame_sum(l), sub, lambda_star: Partition::new(&tail)? })
    }

    pub fn w(&self) -> &Arc<JordanTriple> {
        &self.sub.w
    }

    /// `π_c f = f(c + ·)` on `W`.
    pub fn normal_project(&self, f: &Poly) -> Result<Poly> {
        let (c, embed) = self.sub.normal_map();
        f.normal_project(c, embed)
    }

    /// `π_c^{λ*} f`: the `P_W^{λ*}` component of `π_c f`.
    pub fn lowest_type(&self, f: &Poly) -> Result<Poly> {
        let g = self.normal_project(f)?;
        let h = g.homogeneous_part(self.lambda_star.size());
        crate::ktype::ktype_project(self.w(), &h, &self.lambda_star)
    }
}

/// `π_c^{λ*} f` for the frame tripotent of rank `ℓ`.
pub fn lowest_type_projection(t: &JordanTriple, lambda: &Partition, l: usize, f: &Poly) -> Result<Poly> {
    Stratum::new(t, lambda, l)?.lowest_type(f)
}

/// `(M_ζ)_{≤n} = span{ z^γ − ζ^γ : 1 ≤ |γ| ≤ n }`.
pub fn maximal_ideal_truncation(zeta: &[ExactScalar], n: usize) -> Result<PolySubspace> {
    let d = zeta.len();
    let basis = MonomialBasis::up_to(d, n);
    let mut b = EchelonBuilder::new(basis.len());
    for m in basis.monomials() {
        if m.degree() == 0 {
            continue;
        }
        let mut p = Poly::monomial(m.clone(), ExactScalar::one());
        p.add_term(Monomial::one(d), -Poly::monomial(m.clone(), ExactScalar::one()).eval(zeta)?);
        b.insert(&coords_in(&basis, &p)?);
    }
    PolySubspace::from_subspace(basis, b.finish())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberComputation {
    pub partition: Partition,
    pub point: Vec<ExactScalar>,
    pub degree: usize,
    /// `(m, dim J_{≤m} / (M_ζ J)_{≤m})` for `|λ| ≤ m ≤ n`.
    pub dims: Vec<(usize, usize)>,
    pub stabilized: bool,
    pub fiber_dim: Option<usize>,
}

impl FiberComputation {
    pub fn status(&self) -> Status {
        if self.stabilized {
            Status::Pass
        } else {
            Status::NeedsHigherDegree
        }
    }

    pub fn trace(&self) -> Vec<usize> {
        self.dims.iter().map(|d| d.1).collect()
    }
}

/// Fiber dimensions of `J^λ` at `ζ` up to degree `n`.
///
/// Uses `(M_ζ J)_{≤m} = (M_ζ J)_{≤m−1} + Σ_i (z_i − ζ_i)·(J ∩ P^{m−1})`.
pub fn fiber(t: &JordanTriple, lambda: &Partition, zeta: &[ExactScalar], n: usize) -> Result<FiberComputation> {
    if zeta.len() != t.dim() {
        return Err(Error::dims("point length"));
    }
    let trunc = ideal_truncation(t, lambda, n)?;
    let d = t.dim();
    let basis = MonomialBasis::up_to(d, n);
    let mut rel = EchelonBuilder::new(basis.len());
    let mut total = 0usize;
    let mut dims = Vec::new();
    for m in 0..=n {
        total += trunc.pieces()[m].dim();
        if m > 0 {
            for g in trunc.pieces()[m - 1].polys() {
                for i in 0..d {
                    let shifted = &g.mul_monomial(&Monomial::var(d, i)) - &g.scale(&zeta[i]);
                    rel.insert(&coords_in(&basis, &shifted)?);
                }
            }
        }
        if m >= lambda.size() {
            dims.push((m, total - rel.dim()));
        }
    }
    let stable = dims.windows(2).find(|w| w[0].1 == w[1].1).map(|w| w[1].1);
    Ok(FiberComputation {
        partition: lambda.clone(),
        point: zeta.to_vec(),
        degree: n,
        dims,
        stabilized: stable.is_some(),
        fiber_dim: stable,
    })
}

fn fiber_json(f: &FiberComputation) -> serde_json::Value {
    json!({
        "point": f.point.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "trace": f.trace(),
        "fiber_dim": f.fiber_dim,
    })
}

/// Basis of `J^λ_{≤n}` as homogeneous polynomials.
fn truncation_basis(t: &JordanTriple, lambda: &Partition, n: usize) -> Result<Vec<Poly>> {
    let trunc = ideal_truncation(t, lambda, n)?;
    Ok(trunc.pieces().iter().flat_map(|p| p.polys()).collect())
}

/// `π_c f ∈ J_W^{λ*}` for every basis element `f` of `J^λ_{≤n}`.
pub fn theorem_r_check(t: &JordanTriple, lambda: &Partition, l: usize, n: usize) -> Result<Check> {
    let st = Stratum::new(t, lambda, l)?;
    let target = ideal_truncation(st.w(), &st.lambda_star, n)?;
    let basis = truncation_basis(t, lambda, n)?;
    let mut bad = None;
    let mut nonzero = 0usize;
    for f in &basis {
        let g = st.normal_project(f)?;
        if !g.is_zero() {
            nonzero += 1;
        }
        if !target.contains(&g) {
            bad = Some(json!({ "f": f.to_string(), "image": g.to_string() }));
            break;
        }
    }
    Ok(Check::new("theorem_r", Status::from_bool(bad.is_none()))
        .param("triple", t.descriptor())
        .param("lambda", lambda)
        .param("l", l)
        .param("degree", n)
        .details(json!({
            "lambda_star": st.lambda_star.to_string(),
            "basis_size": basis.len(),
            "nonzero_images": nonzero,
            "counterexample": bad,
        })))
}

/// Surjectivity, kernel containment and fiber dimension at `c = e_{[ℓ]}`.
pub fn theorem_w_check(t: &JordanTriple, lambda: &Partition, l: usize, n: usize) -> Result<Check> {
    let st = Stratum::new(t, lambda, l)?;
    let target = ktype_space(st.w(), &st.lambda_star)?;
    let trunc = ideal_truncation(t, lambda, n)?;
    let d = t.dim();

    let wb = MonomialBasis::homogeneous(st.w().dim(), st.lambda_star.size());
    let mut img = EchelonBuilder::new(wb.len());
    let mut kernel_bad = None;
    for (k, piece) in trunc.pieces().iter().enumerate() {
        for f in piece.polys() {
            let p = st.lowest_type(&f)?;
            if !p.is_zero() {
                img.insert(&coords_in(&wb, &p)?);
            }
            if k == n || kernel_bad.is_some() {
                continue;
            }
            for i in 0..d {
                let g = &f.mul_monomial(&Monomial::var(d, i)) - &f.scale(&st.c[i]);
                let p = st.lowest_type(&g)?;
                if !p.is_zero() {
                    kernel_bad = Some(json!({ "generator": g.to_string(), "image": p.to_string() }));
                    break;
                }
            }
        }
    }
    let image = PolySubspace::from_subspace(wb, img.finish())?;
    let surjective = image == target.space;
    let fib = fiber(t, lambda, &st.c, n)?;
    let dim_status = match fib.fiber_dim {
        None => Status::NeedsHigherDegree,
        Some(k) => Status::from_bool(k == target.dim()),
    };
    let status = Status::from_bool(surjective && kernel_bad.is_none()).and(dim_status);
    Ok(Check::new("theorem_w", status)
        .param("triple", t.descriptor())
        .param("lambda", lambda)
        .param("l", l)
        .param("degree", n)
        .details(json!({
            "lambda_star": st.lambda_star.to_string(),
            "target_dim": target.dim(),
            "image_dim": image.dim(),
            "surjective": surjective,
            "kernel_counterexample": kernel_bad,
            "fiber": fiber_json(&fib),
        })))
}

/// Fiber dimension is the same at every given point of rank `ℓ`.
pub fn stratum_homogeneity_check(
    t: &JordanTriple,
    lambda: &Partition,
    l: usize,
    points: &[Vec<ExactScalar>],
    n: usize,
) -> Result<Check> {
    for z in points {
        let rk = t.rank_of(z)?;
        if rk != l {
            return Err(Error::RankMismatch { expected: l, found: rk });
        }
    }
    let fibers: Vec<FiberComputation> = points.iter().map(|z| fiber(t, lambda, z, n)).collect::<Result<_>>()?;
    let status = if fibers.iter().any(|f| !f.stabilized) {
        Status::NeedsHigherDegree
    } else {
        Status::from_bool(fibers.windows(2).all(|w| w[0].fiber_dim == w[1].fiber_dim))
    };
    Ok(Check::new("stratum_homogeneity", status)
        .param("triple", t.descriptor())
        .param("lambda", lambda)
        .param("l", l)
        .param("degree", n)
        .details(json!({ "fibers": fibers.iter().map(fiber_json).collect::<Vec<_>>() })))
}

/// Cross-section `Λ_λ : P_W^{λ*} → P^λ`, realised on sampled Bergman translates.
#[cfg(feature = "cross-section")]
pub struct CrossSection {
    stratum: Stratum,
    lambda: Partition,
    /// `N_W^{λ*} ∘ k_i|_W` coordinates, as columns.
    columns: ExactMatrix,
    w_basis: Arc<MonomialBasis>,
    /// `N^{λ'} · N^{λ̂*} ∘ k_i`.
    lifts: Vec<Poly>,
    pub samples: usize,
}

#[cfg(feature = "cross-section")]
impl CrossSection {
    pub fn new(t: &JordanTriple, lambda: &Partition, l: usize, sampler: &mut crate::sample::Sampler) -> Result<Self> {
        const TRIES: usize = 200;
        let st = Stratum::new(t, lambda, l)?;
        let w = st.w().clone();
        let first = lambda.part(l + 1);
        let star = st.lambda_star.parts().to_vec();
        let hat: Vec<usize> = std::iter::repeat(first).take(l).chain(star.iter().copied()).collect();
        let prime: Vec<usize> = (1..=l).map(|i| lambda.part(i) - first).collect();
        let n_w = w.conical_poly(&star)?;
        let n_hat = t.conical_poly(&hat)?;
        let n_prime = t.conical_poly(&prime)?;
        let target = ktype_space(&w, &st.lambda_star)?.dim();
        let w_basis = MonomialBasis::homogeneous(w.dim(), st.lambda_star.size());

        let mut echelon = EchelonBuilder::new(w_basis.len());
        let mut cols: Vec<Vec<ExactScalar>> = Vec::new();
        let mut lifts = Vec::new();
        let mut add = |kw: &ExactMatrix, ke: &ExactMatrix, cols: &mut Vec<Vec<ExactScalar>>| -> Result<()> {
            let g = n_w.compose_linear(kw)?;
            let v = coords_in(&w_basis, &g)?;
            if echelon.insert(&v) {
                cols.push(crate::exact::dense_from_sparse(&v, w_basis.len()));
                lifts.push(&n_prime * &n_hat.compose_linear(ke)?);
            }
            Ok(())
        };
        add(&ExactMatrix::identity(w.dim()), &ExactMatrix::identity(t.dim()), &mut cols)?;
        let mut samples = 0;
        while cols.len() < target {
            if samples == TRIES {
                return Err(Error::SamplingExhausted(TRIES));
            }
            samples += 1;
            let third = crate::exact::Rat::new(1, 3);
            let xw: Vec<ExactScalar> = sampler.vector(w.dim()).iter().map(|v| v.scale(&third)).collect();
            let yw: Vec<ExactScalar> = sampler.vector(w.dim()).iter().map(|v| v.scale(&third)).collect();
            let kw = w.bergman(&xw, &yw)?;
            if kw.determinant()?.is_zero() {
                continue;
            }
            let ke = t.bergman(&st.sub.from_w(&xw)?, &st.sub.from_w(&yw)?)?;
            add(&kw, &ke, &mut cols)?;
        }
        let columns = ExactMatrix::from_columns(w_basis.len(), &cols)?;
        Ok(CrossSection { stratum: st, lambda: lambda.clone(), columns, w_basis, lifts, samples })
    }

    /// `Λ_λ φ`.
    pub fn lift(&self, phi: &Poly) -> Result<Poly> {
        let v = crate::exact::dense_from_sparse(&coords_in(&self.w_basis, phi)?, self.w_basis.len());
        let coeffs = self.columns.solve(&v).map_err(|_| Error::InvalidParams("φ is not in P_W^{λ*}".into()))?;
        let mut out = Poly::zero(self.lifts.first().map_or(0, Poly::nvars));
        for (c, p) in coeffs.iter().zip(&self.lifts) {
            if !c.is_zero() {
                out = &out + &p.scale(c);
            }
        }
        Ok(out)
    }

    pub fn stratum(&self) -> &Stratum {
        &self.stratum
    }

    pub fn partition(&self) -> &Partition {
        &self.lambda
    }
}

/// `π_c^{λ*}(Λ_λ φ) = φ` and `Λ_λ φ ∈ P^λ` over a basis of `P_W^{λ*}`, plus `Λ_λ N_W^{λ*} = N^λ`.
#[cfg(feature = "cross-section")]
pub fn cross_section_check(t: &JordanTriple, lambda: &Partition, l: usize, seed: u64) -> Result<Check> {
    let check = Check::new("cross_section", Status::Pass)
        .param("triple", t.descriptor())
        .param("lambda", lambda)
        .param("l", l);
    let mut sampler = crate::sample::Sampler::new(seed);
    let cs = match CrossSection::new(t, lambda, l, &mut sampler) {
        Ok(cs) => cs,
        Err(Error::SamplingExhausted(k)) => {
            return Ok(Check { status: Status::Fail, ..check }.details(json!({ "error": format!("sampling exhausted after {k} tries") })))
        }
        Err(e) => return Err(e),
    };
    let st = cs.stratum();
    let ambient = ktype_space(t, lambda)?;
    let mut bad = None;
    for phi in ktype_space(st.w(), &st.lambda_star)?.basis() {
        let lifted = cs.lift(&phi)?;
        if st.lowest_type(&lifted)? != phi || !ambient.space.contains(&lifted) {
            bad = Some(phi.to_string());
            break;
        }
    }
    let n_w = st.w().conical_poly(st.lambda_star.parts())?;
    let normalized = cs.lift(&n_w)? == t.conical_poly(lambda.parts())?;
    Ok(Check { status: Status::from_bool(bad.is_none() && normalized), ..check }.details(json!({
        "lambda_star": st.lambda_star.to_string(),
        "samples": cs.samples,
        "seed": seed,
        "conical_normalized": normalized,
        "counterexample": bad,
    })))
}

#[cfg(not(feature = "cross-section"))]
pub fn cross_section_check(t: &JordanTriple, lambda: &Partition, l: usize, _seed: u64) -> Result<Check> {
    Ok(Check::new("cross_section", Status::Skipped)
        .param("triple", t.descriptor())
        .param("lambda", lambda)
        .param("l", l)
        .details(json!({ "reason": "built without the cross-section feature" })))
}

/// Relations `(z_i − ζ_i)·g` as sparse coordinates (used by external oracles).
pub fn relation_coords(basis: &MonomialBasis, g: &Poly, zeta: &[ExactScalar]) -> Result<Vec<SparseVec>> {
    let d = zeta.len();
    (0..d)
        .map(|i| coords_in(basis, &(&g.mul_monomial(&Monomial::var(d, i)) - &g.scale(&zeta[i]))))
        .collect()
}
