use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, ExactScalar, SparseVec};
use crate::poly::Poly;

/// The classical families of hermitian Jordan triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `r × s` complex matrices.
    Matrix { r: usize, s: usize },
    /// Symmetric `n × n` matrices.
    Sym { n: usize },
    /// Antisymmetric `n × n` matrices.
    Asym { n: usize },
    /// Spin factor of dimension `d`.
    Spin { d: usize },
}

impl Family {
    /// Checks the public construction preconditions.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::Matrix { r, s } if r == 0 || r > s => {
                Err(Error::InvalidParams(format!("matrix family needs 1 ≤ r ≤ s, got {r}x{s}")))
            }
            Family::Sym { n } if n == 0 => Err(Error::InvalidParams("symmetric family needs n ≥ 1".into())),
            Family::Asym { n } if n < 4 || n % 2 == 1 => {
                Err(Error::InvalidParams(format!("antisymmetric family needs even n ≥ 4, got {n}")))
            }
            Family::Spin { d } if d < 3 => Err(Error::InvalidParams(format!("spin factor needs d ≥ 3, got {d}"))),
            _ => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Family::Matrix { r, s } => r * s,
            Family::Sym { n } => n * (n + 1) / 2,
            Family::Asym { n } => n * n.saturating_sub(1) / 2,
            Family::Spin { d } => d,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            Family::Matrix { r, s } => r.min(s),
            Family::Sym { n } => n,
            Family::Asym { n } => n / 2,
            Family::Spin { d } => {
                if d == 0 {
                    0
                } else {
                    2
                }
            }
        }
    }

    /// Characteristic multiplicities `(a, b)`.
    pub fn multiplicities(&self) -> (usize, usize) {
        match *self {
            Family::Matrix { r, s } => (2, s - r),
            Family::Sym { .. } => (1, 0),
            Family::Asym { n } => (4, 2 * (n % 2)),
            Family::Spin { d } => (d.saturating_sub(2), 0),
        }
    }

    pub fn is_tube(&self) -> bool {
        self.multiplicities().1 == 0
    }

    pub fn descriptor(&self) -> String {
        self.to_string()
    }

    /// Shape of the matrix model (not used for the spin factor).
    fn shape(&self) -> (usize, usize) {
        match *self {
            Family::Matrix { r, s } => (r, s),
            Family::Sym { n } | Family::Asym { n } => (n, n),
            Family::Spin { d } => (d, 1),
        }
    }

    /// Coordinate index and sign of matrix entry `(i, j)`.
    fn coord(&self, i: usize, j: usize) -> Option<(usize, bool)> {
        match *self {
            Family::Matrix { s, .. } => Some((i * s + j, true)),
            Family::Sym { n } => {
                let (a, b) = (i.min(j), i.max(j));
                Some((upper_index(n, a, b, true), true))
            }
            Family::Asym { n } => {
                if i == j {
                    None
                } else {
                    let (a, b) = (i.min(j), i.max(j));
                    Some((upper_index(n, a, b, false), i < j))
                }
            }
            Family::Spin { .. } => Some((i, true)),
        }
    }

    /// Coordinate labels, e.g. `z11, z12, …`.
    pub fn labels(&self) -> Vec<String> {
        match *self {
            Family::Spin { d } => (1..=d).map(|i| format!("z{i}")).collect(),
            _ => {
                let (rows, cols) = self.shape();
                let mut out = vec![String::new(); self.dim()];
                for i in 0..rows {
                    for j in 0..cols {
                        if let Some((k, true)) = self.coord(i, j) {
                            if out[k].is_empty() {
                                out[k] = format!("z{}{}", i + 1, j + 1);
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// Matrix model of a coordinate vector.
    pub fn to_matrix(&self, v: &[ExactScalar]) -> ExactMatrix {
        let (rows, cols) = self.shape();
        ExactMatrix::from_fn(rows, cols, |i, j| match self.coord(i, j) {
            Some((k, true)) => v[k].clone(),
            Some((k, false)) => -&v[k],
            None => ExactScalar::zero(),
        })
    }

    /// Coordinates of a matrix in the model (entries off the model are ignored).
    pub fn from_matrix(&self, m: &ExactMatrix) -> Vec<ExactScalar> {
        let (rows, cols) = self.shape();
        let mut v = vec![ExactScalar::zero(); self.dim()];
        for i in 0..rows {
            for j in 0..cols {
                if let Some((k, true)) = self.coord(i, j) {
                    v[k] = m[(i, j)].clone();
                }
            }
        }
        v
    }

    /// `{b_i b_j* b_k}` for all basis triples, flattened as `(i·d + j)·d + k`.
    pub fn structure_tensor(&self) -> Vec<SparseVec> {
        let d = self.dim();
        let mut out = Vec::with_capacity(d * d * d);
        match *self {
            Family::Spin { .. } => {
                let two = ExactScalar::int(2);
                for i in 0..d {
                    for j in 0..d {
                        for k in 0..d {
                            let mut v = vec![ExactScalar::zero(); d];
                            if i == j {
                                v[k] += &two;
                            }
                            if k == j {
                                v[i] += &two;
                            }
                            if i == k {
                                v[j] -= &two;
                            }
                            out.push(crate::exact::sparse_from_dense(&v));
                        }
                    }
                }
            }
            _ => {
                let basis: Vec<ExactMatrix> = (0..d).map(|i| self.to_matrix(&crate::exact::unit_vec(d, i))).collect();
                let adj: Vec<ExactMatrix> = basis.iter().map(ExactMatrix::adjoint).collect();
                for i in 0..d {
                    for j in 0..d {
                        let uv = &basis[i] * &adj[j];
                        for k in 0..d {
                            let wv = &basis[k] * &adj[j];
                            let m = &(&uv * &basis[k]) + &(&wv * &basis[i]);
                            out.push(crate::exact::sparse_from_dense(&self.from_matrix(&m)));
                        }
                    }
                }
            }
        }
        out
    }

    /// Gram matrix `(b_i|b_j)` of the invariant inner product, normalized so frame tripotents are unit vectors.
    pub fn metric(&self) -> ExactMatrix {
        let d = self.dim();
        match *self {
            Family::Spin { .. } => ExactMatrix::identity(d).scale(&ExactScalar::int(2)),
            Family::Sym { n } => {
                let mut g = ExactMatrix::identity(d);
                for i in 0..n {
                    for j in i + 1..n {
                        let k = upper_index(n, i, j, true);
                        g[(k, k)] = ExactScalar::int(2);
                    }
                }
                g
            }
            _ => ExactMatrix::identity(d),
        }
    }

    /// Standard frame of minimal orthogonal tripotents.
    pub fn frame(&self) -> Vec<Vec<ExactScalar>> {
        let d = self.dim();
        match *self {
            Family::Matrix { r, .. } => (0..r).map(|k| unit(d, self.coord(k, k).unwrap().0)).collect(),
            Family::Sym { n } => (0..n).map(|k| unit(d, self.coord(k, k).unwrap().0)).collect(),
            Family::Asym { n } => (0..n / 2).map(|k| unit(d, self.coord(2 * k, 2 * k + 1).unwrap().0)).collect(),
            Family::Spin { d } => {
                let half = ExactScalar::frac(1, 2);
                let mut c = vec![ExactScalar::zero(); d];
                c[0] = half.clone();
                c[1] = ExactScalar::gauss(0, 1, 1, 2);
                let cb = c.iter().map(ExactScalar::conj).collect();
                vec![c, cb]
            }
        }
    }

    /// Jordan minor `N_m` as a polynomial in the coordinates (`0 ≤ m ≤ rank`).
    pub fn minor_poly(&self, m: usize) -> Result<Poly> {
        let d = self.dim();
        if m > self.rank() {
            return Err(Error::InvalidParams(format!("minor index {m} exceeds rank {}", self.rank())));
        }
        if m == 0 {
            return Ok(Poly::one(d));
        }
        Ok(match *self {
            Family::Spin { .. } => {
                if m == 1 {
                    let mut c = vec![ExactScalar::zero(); d];
                    c[0] = ExactScalar::one();
                    c[1] = -ExactScalar::i();
                    Poly::linear(&c)
                } else {
                    let mut p = Poly::zero(d);
                    for i in 0..d {
                        p = &p + &Poly::var(d, i).pow(2);
                    }
                    p
                }
            }
            Family::Asym { .. } => {
                let idx: Vec<usize> = (0..2 * m).collect();
                self.pfaffian(&idx)
            }
            _ => {
                let entries: Vec<Vec<Poly>> =
                    (0..m).map(|i| (0..m).map(|j| self.entry_poly(i, j)).collect()).collect();
                poly_det(&entries, d)
            }
        })
    }

    fn entry_poly(&self, i: usize, j: usize) -> Poly {
        let d = self.dim();
        match self.coord(i, j) {
            Some((k, true)) => Poly::var(d, k),
            Some((k, false)) => -&Poly::var(d, k),
            None => Poly::zero(d),
        }
    }

    fn pfaffian(&self, idx: &[usize]) -> Poly {
        let d = self.dim();
        if idx.is_empty() {
            return Poly::one(d);
        }
        let mut acc = Poly::zero(d);
        for t in 1..idx.len() {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|&(k, _)| k != 0 && k != t).map(|(_, &x)| x).collect();
            let term = &self.entry_poly(idx[0], idx[t]) * &self.pfaffian(&rest);
            acc = if t % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Rank by closed form.
    pub fn rank_of(&self, z: &[ExactScalar]) -> usize {
        match *self {
            Family::Spin { .. } => {
                if z.iter().all(ExactScalar::is_zero) {
                    0
                } else {
                    let mut q = ExactScalar::zero();
                    for x in z {
                        q += &(x * x);
                    }
                    if q.is_zero() {
                        1
                    } else {
                        2
                    }
                }
            }
            Family::Asym { .. } => self.to_matrix(z).rank() / 2,
            _ => self.to_matrix(z).rank(),
        }
    }

    /// Peirce-0 subtriple of `e_1 + … + e_ℓ`: its family and the embedding `W → E` (columns).
    pub fn peirce_zero(&self, l: usize) -> Result<(Family, ExactMatrix)> {
        if l > self.rank() {
            return Err(Error::InvalidParams(format!("stratum {l} exceeds rank {}", self.rank())));
        }
        let d = self.dim();
        let (w, shift) = match *self {
            Family::Matrix { r, s } => (Family::Matrix { r: r - l, s: s - l }, l),
            Family::Sym { n } => (Family::Sym { n: n - l }, l),
            Family::Asym { n } => (Family::Asym { n: n - 2 * l }, 2 * l),
            Family::Spin { .. } => {
                return Ok(match l {
                    0 => (*self, ExactMatrix::identity(d)),
                    1 => {
                        let cb = self.frame()[1].clone();
                        (Family::Matrix { r: 1, s: 1 }, ExactMatrix::from_columns(d, &[cb])?)
                    }
                    _ => (Family::Matrix { r: 0, s: 0 }, ExactMatrix::zeros(d, 0)),
                });
            }
        };
        let w = w.normalized();
        let dw = w.dim();
        let mut emb = ExactMatrix::zeros(d, dw);
        if dw > 0 {
            let (rows, cols) = w.shape();
            for i in 0..rows {
                for j in 0..cols {
                    if let Some((k, true)) = w.coord(i, j) {
                        let (kk, _) = self.coord(i + shift, j + shift).expect("inside the model");
                        emb[(kk, k)] = ExactScalar::one();
                    }
                }
            }
        }
        Ok((w, emb))
    }

    fn normalized(self) -> Family {
        match self {
            f if f.dim() == 0 => Family::Matrix { r: 0, s: 0 },
            Family::Matrix { r, s } if r > s => Family::Matrix { r: s, s: r },
            f => f,
        }
    }

    /// Generators of a group of rational linear maps preserving the triple product and metric
    /// (signed permutations, 3/5–4/5 rotations and the phase (3+4i)/5), as coordinate matrices.
    pub fn k_generators(&self) -> Vec<ExactMatrix> {
        let d = self.dim();
        if d == 0 {
            return Vec::new();
        }
        let phase = ExactScalar::gauss(3, 5, 4, 5);
        let mut out = vec![ExactMatrix::identity(d).scale(&phase)];
        match *self {
            Family::Spin { d } => {
                for o in orthogonal_generators(d) {
                    out.push(o);
                }
            }
            Family::Matrix { r, s } => {
                for u in unitary_generators(r) {
                    out.push(self.coordinate_map(|z| &u * z));
                }
                for v in unitary_generators(s) {
                    out.push(self.coordinate_map(|z| z * &v));
                }
            }
            Family::Sym { n } | Family::Asym { n } => {
                for u in unitary_generators(n) {
                    let ut = u.transpose();
                    out.push(self.coordinate_map(|z| &(&u * z) * &ut));
                }
            }
        }
        out
    }

    fn coordinate_map(&self, f: impl Fn(&ExactMatrix) -> ExactMatrix) -> ExactMatrix {
        let d = self.dim();
        let cols: Vec<Vec<ExactScalar>> =
            (0..d).map(|k| self.from_matrix(&f(&self.to_matrix(&crate::exact::unit_vec(d, k))))).collect();
        ExactMatrix::from_columns(d, &cols).expect("square")
    }
}

fn unit(d: usize, i: usize) -> Vec<ExactScalar> {
    crate::exact::unit_vec(d, i)
}

/// Index of `(i, j)`, `i ≤ j` (or `i < j` when `diag` is false), in row-major upper-triangular order.
fn upper_index(n: usize, i: usize, j: usize, diag: bool) -> usize {
    if diag {
        i * n - i * i.saturating_sub(1) / 2 + (j - i)
    } else {
        // rows 0..i contribute (n-1) + (n-2) + … + (n-i)
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }
}

fn poly_det(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][j] * &poly_det(&minor, nvars);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Rational unitary `n × n` generators: adjacent transpositions, a sign flip, a diagonal phase
/// and a 3/5–4/5 rotation.
fn unitary_generators(n: usize) -> Vec<ExactMatrix> {
    let mut out = orthogonal_generators(n);
    if n >= 1 {
        let mut ph = ExactMatrix::identity(n);
        ph[(n - 1, n - 1)] = ExactScalar::gauss(3, 5, 4, 5);
        out.push(ph);
    }
    out
}

fn orthogonal_generators(n: usize) -> Vec<ExactMatrix> {
    let mut out = Vec::new();
    for k in 0..n.saturating_sub(1) {
        let mut p = ExactMatrix::identity(n);
        p[(k, k)] = ExactScalar::zero();
        p[(k + 1, k + 1)] = ExactScalar::zero();
        p[(k, k + 1)] = ExactScalar::one();
        p[(k + 1, k)] = ExactScalar::one();
        out.push(p);
    }
    if n >= 1 {
        let mut f = ExactMatrix::identity(n);
        f[(0, 0)] = ExactScalar::int(-1);
        out.push(f);
    }
    if n >= 2 {
        let mut r = ExactMatrix::identity(n);
        r[(0, 0)] = ExactScalar::frac(3, 5);
        r[(1, 1)] = ExactScalar::frac(3, 5);
        r[(0, 1)] = ExactScalar::frac(-4, 5);
        r[(1, 0)] = ExactScalar::frac(4, 5);
        out.push(r);
    }
    out
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Matrix { r, s } => write!(f, "matrix:{r}x{s}"),
            Family::Sym { n } => write!(f, "sym:{n}"),
            Family::Asym { n } => write!(f, "asym:{n}"),
            Family::Spin { d } => write!(f, "spin:{d}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses descriptors such as `matrix:2x3`, `sym:3`, `asym:4`, `spin:4`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("unrecognized triple descriptor `{s}`"));
        let (kind, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let fam = match kind.trim() {
            "matrix" => {
                let (r, c) = rest.split_once(['x', 'X']).ok_or_else(bad)?;
                Family::Matrix { r: num(r)?, s: num(c)? }
            }
            "sym" => Family::Sym { n: num(rest)? },
            "asym" => Family::Asym { n: num(rest)? },
            "spin" => Family::Spin { d: num(rest)? },
            _ => return Err(bad()),
        };
        fam.validate()?;
        Ok(fam)
    }
}
