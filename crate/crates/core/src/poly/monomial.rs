use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Exponent vector `α ∈ ℕ^nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn exps(&self) -> &[u8] {
        &self.0
    }
}

/// All exponent vectors of total degree exactly `n`, in descending lex order.
pub fn monomials_of_degree(nvars: usize, n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; nvars];
    fn rec(i: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        let nvars = cur.len();
        if i + 1 == nvars {
            cur[i] = left as u8;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u8;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if n == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(0, n, &mut cur, &mut out);
    out
}

/// Number of monomials of degree `n` in `nvars` variables.
pub fn count_homogeneous(nvars: usize, n: usize) -> usize {
    if nvars == 0 {
        return usize::from(n == 0);
    }
    // C(n + nvars - 1, nvars - 1)
    let (top, k) = (n + nvars - 1, nvars - 1);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// A fixed enumeration of monomials used as coordinates for polynomial subspaces.
#[derive(Debug)]
pub struct MonomialBasis {
    nvars: usize,
    min_degree: usize,
    max_degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

type BasisKey = (usize, usize, usize);

fn cache() -> &'static Mutex<HashMap<BasisKey, Arc<MonomialBasis>>> {
    static CACHE: OnceLock<Mutex<HashMap<BasisKey, Arc<MonomialBasis>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl MonomialBasis {
    /// Monomials of degree `lo..=hi`, highest degree first.
    pub fn range(nvars: usize, lo: usize, hi: usize) -> Arc<Self> {
        let key = (nvars, lo, hi);
        if let Some(b) = cache().lock().expect("basis cache").get(&key) {
            return b.clone();
        }
        let monomials: Vec<Monomial> = (lo..=hi).rev().flat_map(|n| monomials_of_degree(nvars, n)).collect();
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let b = Arc::new(MonomialBasis { nvars, min_degree: lo, max_degree: hi, monomials, index });
        cache().lock().expect("basis cache").entry(key).or_insert(b).clone()
    }

    pub fn homogeneous(nvars: usize, n: usize) -> Arc<Self> {
        Self::range(nvars, n, n)
    }

    pub fn up_to(nvars: usize, n: usize) -> Arc<Self> {
        Self::range(nvars, 0, n)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree_range(&self) -> (usize, usize) {
        (self.min_degree, self.max_degree)
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_enumeration() {
        for nvars in 0..5 {
            for n in 0..6 {
                assert_eq!(monomials_of_degree(nvars, n).len(), count_homogeneous(nvars, n));
            }
        }
        assert_eq!(count_homogeneous(6, 6), 462);
        assert_eq!(MonomialBasis::up_to(4, 2).len(), 15);
    }
}
