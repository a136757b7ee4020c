use std::any::Any;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::family::Family;
use crate::error::{Error, Result};
use crate::exact::{sparse_from_dense, unit_vec, vec_add, vec_scale, vec_sub, ExactMatrix, ExactScalar, Rat, SparseVec};
use crate::poly::{FockProduct, Poly};

type CacheKey = (&'static str, Vec<usize>);

/// Write-once-per-key memo table for derived data (K-type spaces, truncations, subtriples).
#[derive(Default)]
pub(crate) struct Cache {
    map: Mutex<HashMap<CacheKey, Arc<dyn Any + Send + Sync>>>,
}

impl Cache {
    /// Returns the cached value, computing it outside the lock on a miss.
    pub(crate) fn get_or_try<T, F>(&self, kind: &'static str, key: Vec<usize>, f: F) -> Result<Arc<T>>
    where
        T: Any + Send + Sync,
        F: FnOnce() -> Result<T>,
    {
        let k = (kind, key);
        if let Some(v) = self.map.lock().expect("cache lock").get(&k) {
            return Ok(v.clone().downcast::<T>().expect("cache entry type"));
        }
        let v: Arc<dyn Any + Send + Sync> = Arc::new(f()?);
        let stored = self.map.lock().expect("cache lock").entry(k).or_insert(v).clone();
        Ok(stored.downcast::<T>().expect("cache entry type"))
    }
}

/// A concrete hermitian Jordan triple in coordinates.
pub struct JordanTriple {
    family: Family,
    dim: usize,
    rank: usize,
    a: usize,
    b: usize,
    tensor: Vec<SparseVec>,
    metric: ExactMatrix,
    frame: Vec<Vec<ExactScalar>>,
    minors: Vec<Poly>,
    fock: FockProduct,
    pub(crate) cache: Cache,
}

impl fmt::Debug for JordanTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JordanTriple")
            .field("family", &self.family)
            .field("dim", &self.dim)
            .field("rank", &self.rank)
            .field("a", &self.a)
            .field("b", &self.b)
            .finish()
    }
}

/// Builds a triple from the public descriptor, checking all structural identities.
pub fn make_triple(family: Family) -> Result<Arc<JordanTriple>> {
    family.validate()?;
    JordanTriple::build(family)
}

impl JordanTriple {
    /// Builds without the public parameter restrictions (used for Peirce-0 subtriples,
    /// which may be degenerate).
    pub(crate) fn build(family: Family) -> Result<Arc<JordanTriple>> {
        let dim = family.dim();
        let (a, b) = family.multiplicities();
        let minors = (0..=family.rank()).map(|m| family.minor_poly(m)).collect::<Result<Vec<_>>>()?;
        let metric = family.metric();
        let t = JordanTriple {
            family,
            dim,
            rank: family.rank(),
            a,
            b,
            tensor: family.structure_tensor(),
            fock: FockProduct::new(metric.clone())?,
            metric,
            frame: family.frame(),
            minors,
            cache: Cache::default(),
        };
        t.verify()?;
        Ok(Arc::new(t))
    }

    fn violated(identity: &str, location: String) -> Error {
        Error::IdentityViolated { identity: identity.to_string(), location }
    }

    /// Checks the triple-product symmetry, the Jordan identity on basis quintuples,
    /// hermitian metric, frame and the dimension formula.
    pub fn verify(&self) -> Result<()> {
        let d = self.dim;
        let basis: Vec<SparseVec> = (0..d).map(|i| vec![(i, ExactScalar::one())]).collect();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if self.t(i, j, k) != self.t(k, j, i) {
                        return Err(Self::violated("{uv*w} = {wv*u}", format!("basis ({i},{j},{k})")));
                    }
                }
            }
        }
        // [u□v*, z□w*] x = {{uv*z} w* x} − {z {wu*v}* x} on basis quintuples
        for u in 0..d {
            for v in 0..d {
                for z in 0..d {
                    let uvz = self.t(u, v, z);
                    for w in 0..d {
                        let wuv = self.t(w, u, v);
                        let zwx: Vec<SparseVec> = (0..d).map(|x| self.t(z, w, x).clone()).collect();
                        for x in 0..d {
                            let lhs = sp_sub(
                                &self.tp_sparse(&basis[u], &basis[v], &zwx[x]),
                                &self.tp_sparse(&basis[z], &basis[w], self.t(u, v, x)),
                            );
                            let rhs = sp_sub(
                                &self.tp_sparse(uvz, &basis[w], &basis[x]),
                                &self.tp_sparse(&basis[z], wuv, &basis[x]),
                            );
                            if lhs != rhs {
                                return Err(Self::violated(
                                    "Jordan triple identity",
                                    format!("basis (u,v,z,w,x) = ({u},{v},{z},{w},{x})"),
                                ));
                            }
                        }
                    }
                }
            }
        }
        if self.metric.adjoint() != self.metric {
            return Err(Self::violated("metric hermitian", "metric".into()));
        }
        for (p, e) in self.frame.iter().enumerate() {
            if self.triple_unchecked(e, e, e) != vec_scale(e, &ExactScalar::int(2)) {
                return Err(Self::violated("{cc*c} = 2c", format!("frame element {}", p + 1)));
            }
            for (q, f) in self.frame.iter().enumerate() {
                let ip = self.inner_unchecked(e, f);
                let want = if p == q { ExactScalar::one() } else { ExactScalar::zero() };
                if ip != want {
                    return Err(Self::violated("(e_i|e_j) = δ_ij", format!("frame pair ({},{})", p + 1, q + 1)));
                }
            }
        }
        if self.rank > 0 {
            // d/r = 1 + (a/2)(r−1) + b
            let lhs = Rat::new(self.dim as i64, self.rank as i64);
            let rhs = &(&Rat::one() + &Rat::new((self.a * (self.rank - 1)) as i64, 2)) + &Rat::from_int(self.b as i64);
            if lhs != rhs {
                return Err(Self::violated("d/r = 1 + (a/2)(r−1) + b", self.family.to_string()));
            }
        }
        Ok(())
    }

    fn t(&self, i: usize, j: usize, k: usize) -> &SparseVec {
        &self.tensor[(i * self.dim + j) * self.dim + k]
    }

    fn tp_sparse(&self, u: &SparseVec, v: &SparseVec, w: &SparseVec) -> SparseVec {
        let mut acc = vec![ExactScalar::zero(); self.dim];
        for (i, ui) in u {
            for (j, vj) in v {
                let c = ui * &vj.conj();
                for (k, wk) in w {
                    let ck = &c * wk;
                    for (l, x) in self.t(*i, *j, *k) {
                        acc[*l] += &(&ck * x);
                    }
                }
            }
        }
        sparse_from_dense(&acc)
    }

    fn check_vec(&self, v: &[ExactScalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::dims(format!("vector of length {} in a triple of dimension {}", v.len(), self.dim)));
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn descriptor(&self) -> String {
        self.family.to_string()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Characteristic multiplicities `(a, b)`.
    pub fn multiplicities(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    /// Genus `2 + a(r−1) + b` (the Bergman parameter).
    pub fn genus(&self) -> usize {
        2 + self.a * self.rank.saturating_sub(1) + self.b
    }

    pub fn is_tube(&self) -> bool {
        self.b == 0
    }

    pub fn metric(&self) -> &ExactMatrix {
        &self.metric
    }

    pub fn fock(&self) -> &FockProduct {
        &self.fock
    }

    pub fn labels(&self) -> Vec<String> {
        self.family.labels()
    }

    /// Standard frame `e_1, …, e_r`.
    pub fn frame_vectors(&self) -> &[Vec<ExactScalar>] {
        &self.frame
    }

    /// `e_1 + … + e_ℓ`.
    pub fn frame_sum(&self, l: usize) -> Vec<ExactScalar> {
        let mut c = vec![ExactScalar::zero(); self.dim];
        for e in self.frame.iter().take(l) {
            c = vec_add(&c, e);
        }
        c
    }

    /// Maximal tripotent `e = e_1 + … + e_r`.
    pub fn unit(&self) -> Vec<ExactScalar> {
        self.frame_sum(self.rank)
    }

    /// `Σ q_j e_j`.
    pub fn frame_point(&self, q: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut c = vec![ExactScalar::zero(); self.dim];
        for (e, qj) in self.frame.iter().zip(q) {
            c = vec_add(&c, &vec_scale(e, qj));
        }
        c
    }

    /// Invariant inner product `(u|v)`, linear in `u`.
    pub fn inner(&self, u: &[ExactScalar], v: &[ExactScalar]) -> Result<ExactScalar> {
        self.check_vec(u)?;
        self.check_vec(v)?;
        Ok(self.inner_unchecked(u, v))
    }

    fn inner_unchecked(&self, u: &[ExactScalar], v: &[ExactScalar]) -> ExactScalar {
        // Σ u_i g_ij conj(v_j)
        let mut acc = ExactScalar::zero();
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                acc += &(&(ui * &self.metric[(i, j)]) * &vj.conj());
            }
        }
        acc
    }

    /// `{u v* w}`.
    pub fn triple(&self, u: &[ExactScalar], v: &[ExactScalar], w: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        self.check_vec(u)?;
        self.check_vec(v)?;
        self.check_vec(w)?;
        Ok(self.triple_unchecked(u, v, w))
    }

    pub(crate) fn triple_unchecked(&self, u: &[ExactScalar], v: &[ExactScalar], w: &[ExactScalar]) -> Vec<ExactScalar> {
        let r = self.tp_sparse(&sparse_from_dense(u), &sparse_from_dense(v), &sparse_from_dense(w));
        crate::exact::dense_from_sparse(&r, self.dim)
    }

    /// Matrix of `u□v*: z ↦ {u v* z}`.
    pub fn box_op(&self, u: &[ExactScalar], v: &[ExactScalar]) -> Result<ExactMatrix> {
        self.check_vec(u)?;
        self.check_vec(v)?;
        let cols: Vec<Vec<ExactScalar>> =
            (0..self.dim).map(|k| self.triple_unchecked(u, v, &unit_vec(self.dim, k))).collect();
        ExactMatrix::from_columns(self.dim, &cols)
    }

    /// `Q_x y = ½{x y* x}` (conjugate-linear in `y`).
    pub fn quad(&self, x: &[ExactScalar], y: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        Ok(vec_scale(&self.triple(x, y, x)?, &ExactScalar::frac(1, 2)))
    }

    /// Quadratic representation `P_z = Q_z Q_e` as a linear map.
    pub fn quadratic_rep(&self, z: &[ExactScalar]) -> Result<ExactMatrix> {
        self.check_vec(z)?;
        let e = self.unit();
        let cols: Vec<Vec<ExactScalar>> = (0..self.dim)
            .map(|k| {
                let qe = self.quad(&e, &unit_vec(self.dim, k))?;
                self.quad(z, &qe)
            })
            .collect::<Result<_>>()?;
        ExactMatrix::from_columns(self.dim, &cols)
    }

    /// Bergman endomorphism `B(x,y) z = z − {x y* z} + Q_x Q_y z`.
    pub fn bergman(&self, x: &[ExactScalar], y: &[ExactScalar]) -> Result<ExactMatrix> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        let cols: Vec<Vec<ExactScalar>> = (0..self.dim)
            .map(|k| {
                let z = unit_vec(self.dim, k);
                let t = self.triple_unchecked(x, y, &z);
                let qq = self.quad(x, &self.quad(y, &z)?)?;
                Ok(vec_add(&vec_sub(&z, &t), &qq))
            })
            .collect::<Result<_>>()?;
        ExactMatrix::from_columns(self.dim, &cols)
    }

    pub fn rank_of(&self, z: &[ExactScalar]) -> Result<usize> {
        self.check_vec(z)?;
        Ok(self.family.rank_of(z))
    }

    /// Jordan minor `N_m` as a polynomial.
    pub fn minor_poly(&self, m: usize) -> Result<&Poly> {
        self.minors
            .get(m)
            .ok_or_else(|| Error::InvalidParams(format!("minor index {m} exceeds rank {}", self.rank)))
    }

    /// Rational linear maps preserving product and metric (K-elements) used for invariance tests.
    pub fn k_generators(&self) -> Vec<ExactMatrix> {
        self.family.k_generators()
    }
}

fn sp_sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut m: std::collections::BTreeMap<usize, ExactScalar> = a.iter().cloned().collect();
    for (i, x) in b {
        let e = m.entry(*i).or_default();
        *e -= x;
        if e.is_zero() {
            m.remove(i);
        }
    }
    m.into_iter().collect()
}
