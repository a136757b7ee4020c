//! Seeded generation of rational sample points and structure-group elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, ExactScalar, Rat};
use crate::jordan::JordanTriple;

/// Deterministic source of small Gaussian rationals.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rat(&mut self) -> Rat {
        Rat::new(self.rng.gen_range(-6..=6), self.rng.gen_range(1..=4))
    }

    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.rat();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn scalar(&mut self) -> ExactScalar {
        let re = self.rat();
        let im = if self.rng.gen_bool(0.5) { self.rat() } else { Rat::zero() };
        ExactScalar::new(re, im)
    }

    pub fn vector(&mut self, d: usize) -> Vec<ExactScalar> {
        (0..d).map(|_| self.scalar()).collect()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// `Σ_{j≤ℓ} q_j e_j` with nonzero rational `q_j`.
    pub fn frame_point(&mut self, t: &JordanTriple, l: usize) -> Vec<ExactScalar> {
        let q: Vec<ExactScalar> = (0..l).map(|_| ExactScalar::real(self.nonzero_rat())).collect();
        t.frame_point(&q)
    }

    /// A random product of the triple's rational K-generators.
    pub fn k_element(&mut self, t: &JordanTriple) -> ExactMatrix {
        let gens = t.k_generators();
        let mut k = ExactMatrix::identity(t.dim());
        if gens.is_empty() {
            return k;
        }
        for _ in 0..4 {
            let g = &gens[self.index(gens.len())];
            k = &k * g;
        }
        k
    }

    /// `B(x,y)` with small random `x, y`, rejected until invertible.
    pub fn bergman_element(&mut self, t: &JordanTriple) -> Result<ExactMatrix> {
        for _ in 0..64 {
            let x = self.vector(t.dim()).iter().map(|v| v.scale(&Rat::new(1, 3))).collect::<Vec<_>>();
            let y = self.vector(t.dim()).iter().map(|v| v.scale(&Rat::new(1, 3))).collect::<Vec<_>>();
            let b = t.bergman(&x, &y)?;
            if !b.determinant()?.is_zero() {
                return Ok(b);
            }
        }
        Err(Error::SamplingExhausted(64))
    }

    /// A rank-`ℓ` point that is not a frame combination: `B(x,y)` applied to a frame point.
    pub fn rank_point(&mut self, t: &JordanTriple, l: usize) -> Result<Vec<ExactScalar>> {
        for _ in 0..64 {
            let z = self.frame_point(t, l);
            let b = self.bergman_element(t)?;
            let p = b.mul_vec(&z)?;
            if t.rank_of(&p)? == l {
                return Ok(p);
            }
        }
        Err(Error::SamplingExhausted(64))
    }
}
