#![allow(dead_code)]

use kepler_core::exact::{ExactScalar, Rat};
use kepler_core::ktype::Partition;
use kepler_core::{Family, Monomial, Poly};
use proptest::prelude::*;

pub const REFERENCE: [&str; 6] = ["matrix:2x2", "matrix:2x3", "sym:2", "asym:4", "spin:3", "spin:4"];

pub fn gauss() -> impl Strategy<Value = ExactScalar> {
    (-5i64..=5, 1i64..=3, -5i64..=5, 1i64..=3).prop_map(|(a, b, c, d)| ExactScalar::new(Rat::new(a, b), Rat::new(c, d)))
}

pub fn real() -> impl Strategy<Value = ExactScalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| ExactScalar::frac(a, b))
}

pub fn vector(n: usize) -> impl Strategy<Value = Vec<ExactScalar>> {
    prop::collection::vec(gauss(), n)
}

/// Random polynomial in `nvars` variables with at most `terms` terms of degree ≤ `maxdeg`.
pub fn poly(nvars: usize, maxdeg: usize, terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u8..=maxdeg as u8, nvars), gauss()), 0..=terms).prop_map(move |ts| {
        let mut p = Poly::zero(nvars);
        for (mut e, c) in ts {
            // clamp the total degree
            while e.iter().map(|&x| x as usize).sum::<usize>() > maxdeg {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            p.add_term(Monomial(e), c);
        }
        p
    })
}

/// Random homogeneous polynomial of degree `n`.
pub fn homogeneous(nvars: usize, n: usize, terms: usize) -> impl Strategy<Value = Poly> {
    poly(nvars, n, terms).prop_map(move |p| {
        let mut q = Poly::zero(nvars);
        for (m, c) in p.terms() {
            let mut e = m.exps().to_vec();
            let mut deg: usize = e.iter().map(|&x| x as usize).sum();
            let mut i = 0;
            while deg < n {
                e[i % nvars] += 1;
                deg += 1;
                i += 1;
            }
            q.add_term(Monomial(e), c.clone());
        }
        q
    })
}

/// Weyl dimension of the GL_n module with highest weight `l` (padded with zeros).
fn weyl(n: usize, l: &[usize]) -> usize {
    let l: Vec<i64> = (0..n).map(|i| l.get(i).copied().unwrap_or(0) as i64).collect();
    let (mut num, mut den) = (1i64, 1i64);
    for i in 0..n {
        for j in i + 1..n {
            num *= l[i] - l[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    (num / den) as usize
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn expected_dim(f: Family, l: &Partition) -> usize {
    let p = l.parts();
    match f {
        Family::Matrix { r, s } => weyl(r, p) * weyl(s, p),
        Family::Sym { n } => weyl(n, &p.iter().map(|x| 2 * x).collect::<Vec<_>>()),
        Family::Asym { n } => weyl(n, &p.iter().flat_map(|&x| [x, x]).collect::<Vec<_>>()),
        Family::Spin { d } => {
            let q = l.padded(2);
            let k = (q[0] - q[1]) as i64;
            let d = d as i64;
            (binom(k + d - 1, d - 1) - binom(k + d - 3, d - 1)) as usize
        }
    }
}
