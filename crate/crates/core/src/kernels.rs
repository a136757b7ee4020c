//! The generic kernel `Δ(z,ζ)`, Pochhammer symbols, the binomial expansion of
//! `Δ^{-s}`, Pieri coefficients and the Wallach parameters.

use std::collections::BTreeMap;

use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{unit_vec, ExactScalar, Rat};
use crate::jordan::{Family, JordanTriple};
use crate::ktype::{fock_kernel, ktype_project, spherical, Partition};
use crate::poly::{Poly, SesquiPoly};
use crate::report::{Check, Status};

#[derive(Clone, Debug)]
pub struct DeltaKernel {
    pub descriptor: String,
    pub kernel: SesquiPoly,
}

impl DeltaKernel {
    pub fn eval(&self, z: &[ExactScalar], zeta: &[ExactScalar]) -> Result<ExactScalar> {
        self.kernel.eval(z, zeta)
    }
}

/// `Δ(z,ζ)`: `det(I − zζ*)` for matrix and symmetric families, and
/// `1 − (z|ζ) + N(z)·conj(N(ζ))` in rank 2 (spin factors, `asym:4`).
pub fn delta_kernel(t: &JordanTriple) -> Result<DeltaKernel> {
    let kernel = match t.family() {
        Family::Matrix { .. } | Family::Sym { .. } => matrix_delta(t)?,
        _ if t.rank() == 2 => {
            let n = t.minor_poly(2)?;
            SesquiPoly::one(t.dim())
                .sub(&SesquiPoly::pairing(t.metric()))?
                .add(&SesquiPoly::outer(n, n)?)?
        }
        f => return Err(Error::Unsupported(format!("Δ(z,ζ) for {f} of rank {}", t.rank()))),
    };
    Ok(DeltaKernel { descriptor: t.descriptor(), kernel })
}

fn matrix_delta(t: &JordanTriple) -> Result<SesquiPoly> {
    let fam = t.family();
    let d = t.dim();
    let models: Vec<_> = (0..d).map(|k| fam.to_matrix(&unit_vec(d, k))).collect();
    let (rows, cols) = (models.first().map_or(0, |m| m.rows()), models.first().map_or(0, |m| m.cols()));
    let entry = |i: usize, j: usize| Poly::linear(&models.iter().map(|m| m[(i, j)].clone()).collect::<Vec<_>>());
    // I − zζ*, r × r
    let mut m: Vec<Vec<SesquiPoly>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row = Vec::with_capacity(rows);
        for j in 0..rows {
            let mut e = if i == j { SesquiPoly::one(d) } else { SesquiPoly::zero(d) };
            for k in 0..cols {
                e = e.sub(&SesquiPoly::outer(&entry(i, k), &entry(j, k))?)?;
            }
            row.push(e);
        }
        m.push(row);
    }
    leibniz(&m, d)
}

fn leibniz(m: &[Vec<SesquiPoly>], nvars: usize) -> Result<SesquiPoly> {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = SesquiPoly::zero(nvars);
    permute(&mut perm, 0, &mut |p| {
        let mut term = SesquiPoly::one(nvars);
        for (i, &j) in p.iter().enumerate() {
            term = term.mul(&m[i][j])?;
            if term.is_zero() {
                return Ok(());
            }
        }
        total = if sign(p) { total.add(&term)? } else { total.sub(&term)? };
        Ok(())
    })?;
    Ok(total)
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f)?;
        p.swap(k, i);
    }
    Ok(())
}

fn sign(p: &[usize]) -> bool {
    let mut even = true;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                even = !even;
            }
        }
    }
    even
}

/// `(x)_n = x(x+1)…(x+n−1)`.
fn rising(x: &Rat, n: usize) -> Rat {
    let mut acc = Rat::from_int(1);
    for k in 0..n {
        acc = &acc * &(x + &Rat::from_int(k as i64));
    }
    acc
}

/// `(s)_λ = Π_j (s − (j−1)a/2)_{λ_j}`.
pub fn pochhammer(s: &Rat, lambda: &Partition, a: usize) -> Rat {
    let mut acc = Rat::from_int(1);
    for (j, &part) in lambda.parts().iter().enumerate() {
        let shift = Rat::new((j * a) as i64, 2);
        acc = &acc * &rising(&(s - &shift), part);
    }
    acc
}

/// `(s)_λ` for all `|λ| ≤ n`.
pub fn pochhammer_table(t: &JordanTriple, s: &Rat, n: usize) -> BTreeMap<Partition, Rat> {
    Partition::up_to(n, t.rank()).into_iter().map(|l| (l.clone(), pochhammer(s, &l, t.multiplicities().0))).collect()
}

/// `Δ^{-s} = Σ_k binom(−s, k) (Δ − 1)^k` truncated at `z`-degree `n`.
pub fn delta_power_series(delta: &SesquiPoly, s: &Rat, n: usize) -> Result<SesquiPoly> {
    let d = delta.nvars();
    let u = delta.sub(&SesquiPoly::one(d))?;
    let mut out = SesquiPoly::one(d);
    let mut power = SesquiPoly::one(d);
    let mut coef = Rat::from_int(1);
    let minus_s = -s;
    for k in 1..=n {
        // binom(−s, k) = binom(−s, k−1)·(−s − k + 1)/k
        coef = &(&coef * &(&minus_s - &Rat::from_int(k as i64 - 1))) * &Rat::new(1, k as i64);
        power = power.mul_truncated(&u, n)?;
        out = out.add(&power.scale(&ExactScalar::real(coef.clone())))?;
    }
    Ok(out.truncate(n))
}

/// `Δ(z,ζ)^{-s} = Σ_{|λ| ≤ n} (s)_λ E^λ(z,ζ)` coefficient by coefficient.
pub fn binomial_check(t: &JordanTriple, s: &Rat, n: usize) -> Result<Check> {
    let check = Check::new("binomial", Status::Pass)
        .param("triple", t.descriptor())
        .param("s", s)
        .param("degree", n);
    let delta = match delta_kernel(t) {
        Ok(d) => d,
        Err(Error::Unsupported(msg)) => return Ok(Check { status: Status::Skipped, ..check }.details(json!({ "reason": msg }))),
        Err(e) => return Err(e),
    };
    let lhs = delta_power_series(&delta.kernel, s, n)?;
    let mut rhs = SesquiPoly::zero(t.dim());
    let mut coeffs = Vec::new();
    for (lambda, p) in pochhammer_table(t, s, n) {
        coeffs.push(json!({ "lambda": lambda.to_string(), "pochhammer": p.to_string() }));
        if p.is_zero() {
            continue;
        }
        rhs = rhs.add(&fock_kernel(t, &lambda)?.scale(&ExactScalar::real(p)))?;
    }
    let diff = lhs.sub(&rhs)?;
    let first = diff.terms().iter().next().map(|((a, b), c)| format!("{a:?} {b:?}: {c}"));
    Ok(Check { status: Status::from_bool(diff.is_zero()), ..check }.details(json!({
        "terms": lhs.terms().len(),
        "pochhammer": coeffs,
        "first_mismatch": first,
    })))
}

/// `μ'_i = μ_i − (a/2)(i−1)`, `c_i = Π_{j≠i} (μ'_i − μ'_j + a/2) / (μ'_i − μ'_j)`.
pub fn pieri_coefficient(mu: &Partition, i: usize, r: usize, a: usize) -> Rat {
    let half = Rat::new(a as i64, 2);
    let shifted = |k: usize| &Rat::from_int(mu.part(k) as i64) - &Rat::new((a * (k - 1)) as i64, 2);
    let mut acc = Rat::from_int(1);
    for j in 1..=r {
        if j == i {
            continue;
        }
        let diff = &shifted(i) - &shifted(j);
        acc = &(&acc * &(&diff + &half)) * &diff.recip().expect("shifted parts are distinct");
    }
    acc
}

/// `(z|e)·Φ^μ = Σ_i c_i Φ^{μ+ε_i}` with the predicted, positive `c_i`.
pub fn pieri_check(t: &JordanTriple, mu: &Partition) -> Result<Check> {
    if !t.is_tube() {
        return Err(Error::Unsupported(format!("{} is not of tube type", t.descriptor())));
    }
    let (r, a) = (t.rank(), t.multiplicities().0);
    let e = t.unit();
    let ze = Poly::linear(&t.metric().mul_vec(&e.iter().map(ExactScalar::conj).collect::<Vec<_>>())?);
    let p = &ze * &spherical(t, mu)?;
    let mut rows = Vec::new();
    let mut ok = true;
    let mut rest = p.clone();
    for i in 1..=r {
        let Some(nu) = mu.add_box(i, r) else { continue };
        let proj = ktype_project(t, &p, &nu)?;
        rest = &rest - &proj;
        let c = proj.eval(&e)?;
        let phi = spherical(t, &nu)?;
        let expected = pieri_coefficient(mu, i, r, a);
        let proportional = proj == phi.scale(&c);
        let good = proportional && c == ExactScalar::real(expected.clone()) && expected > Rat::from_int(0);
        ok &= good;
        rows.push(json!({
            "i": i,
            "nu": nu.to_string(),
            "coefficient": c.to_string(),
            "expected": expected.to_string(),
            "proportional": proportional,
        }));
    }
    ok &= rest.is_zero();
    Ok(Check::new("pieri", Status::from_bool(ok))
        .param("triple", t.descriptor())
        .param("mu", mu)
        .details(json!({ "terms": rows, "residual_zero": rest.is_zero() })))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallachData {
    pub continuous_bound: Rat,
    pub discrete: Vec<Rat>,
    pub bergman: Rat,
    /// `(ℓ, d/r + (r−ℓ)a/2)` for `1 ≤ ℓ ≤ r`.
    pub hardy: Vec<(usize, Rat)>,
}

pub fn wallach_data(t: &JordanTriple) -> WallachData {
    let (r, (a, b), d) = (t.rank() as i64, t.multiplicities(), t.dim() as i64);
    let (a, b) = (a as i64, b as i64);
    WallachData {
        continuous_bound: Rat::new(a * (r - 1), 2),
        discrete: (0..r).map(|l| Rat::new(l * a, 2)).collect(),
        bergman: Rat::from_int(2 + a * (r - 1) + b),
        hardy: (1..=r).map(|l| (l as usize, &Rat::new(d, r) + &Rat::new((r - l) * a, 2))).collect(),
    }
}

pub fn wallach_report(t: &JordanTriple) -> Check {
    let w = wallach_data(t);
    Check::new("wallach", Status::Pass).param("triple", t.descriptor()).details(json!({
        "continuous_bound": w.continuous_bound.to_string(),
        "discrete": w.discrete.iter().map(Rat::to_string).collect::<Vec<_>>(),
        "bergman": w.bergman.to_string(),
        "hardy": w.hardy.iter().map(|(l, s)| json!({ "l": l, "s": s.to_string() })).collect::<Vec<_>>(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::parse_triple;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn delta_matrix_2x2() {
        let t = parse_triple("matrix:2x2").unwrap();
        let dk = delta_kernel(&t).unwrap();
        let det = t.minor_poly(2).unwrap();
        let expect = SesquiPoly::one(4)
            .sub(&SesquiPoly::pairing(t.metric()))
            .unwrap()
            .add(&SesquiPoly::outer(det, det).unwrap())
            .unwrap();
        assert_eq!(dk.kernel, expect);
        assert!(dk.kernel.is_hermitian());
        let zeta = t.frame_point(&[ExactScalar::frac(1, 2), ExactScalar::frac(1, 3)]);
        assert_eq!(dk.eval(&zeta, &zeta).unwrap(), ExactScalar::frac(2, 3));
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&Rat::from_int(2), &p("1,1"), 2), Rat::from_int(2));
        assert_eq!(pochhammer(&Rat::new(1, 2), &p("1"), 2), Rat::new(1, 2));
        assert_eq!(pochhammer(&Rat::from_int(0), &p("1"), 2), Rat::from_int(0));
        assert_eq!(pochhammer(&Rat::from_int(3), &Partition::empty(), 1), Rat::from_int(1));
    }

    #[test]
    fn pieri_coefficients() {
        assert_eq!(pieri_coefficient(&p("1"), 1, 2, 2), Rat::new(3, 2));
        assert_eq!(pieri_coefficient(&p("1"), 2, 2, 2), Rat::new(1, 2));
        assert_eq!(pieri_coefficient(&p("1,1"), 1, 2, 2), Rat::from_int(2));
        assert_eq!(pieri_coefficient(&p("2"), 1, 2, 2), Rat::new(4, 3));
    }

    #[test]
    fn wallach_matrix_2x3() {
        let t = parse_triple("matrix:2x3").unwrap();
        let w = wallach_data(&t);
        assert_eq!(w.continuous_bound, Rat::from_int(1));
        assert_eq!(w.bergman, Rat::from_int(5));
        assert_eq!(w.hardy.last().unwrap().1, Rat::from_int(3));
        let t = parse_triple("matrix:2x2").unwrap();
        assert_eq!(wallach_data(&t).discrete, vec![Rat::from_int(0), Rat::from_int(1)]);
    }

    #[test]
    fn binomial_small() {
        let t = parse_triple("matrix:2x2").unwrap();
        assert!(binomial_check(&t, &Rat::from_int(2), 2).unwrap().passed());
    }
}
