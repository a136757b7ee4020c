use std::collections::BTreeMap;

use super::triple::JordanTriple;
use crate::error::{Error, Result};
use crate::exact::{vec_add, vec_is_zero, vec_scale, ExactMatrix, ExactScalar, Subspace};

/// Element `c` with `{cc*c} = 2c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tripotent {
    c: Vec<ExactScalar>,
    rank: usize,
}

impl Tripotent {
    pub fn new(t: &JordanTriple, c: Vec<ExactScalar>) -> Result<Self> {
        let ccc = t.triple(&c, &c, &c)?;
        if ccc != vec_scale(&c, &ExactScalar::int(2)) {
            return Err(Error::NotTripotent("{cc*c} ≠ 2c".into()));
        }
        let rank = t.rank_of(&c)?;
        Ok(Tripotent { c, rank })
    }

    pub fn vector(&self) -> &[ExactScalar] {
        &self.c
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// `E = E²_c ⊕ E¹_c ⊕ E⁰_c`, eigenspaces of `D = c□c*` for eigenvalues 2, 1, 0.
#[derive(Clone, Debug)]
pub struct PeirceDecomposition {
    pub c: Tripotent,
    pub p2: ExactMatrix,
    pub p1: ExactMatrix,
    pub p0: ExactMatrix,
}

fn column_space(m: &ExactMatrix) -> Subspace {
    Subspace::span(&m.transpose().row_vecs(), m.rows()).expect("consistent sizes")
}

impl PeirceDecomposition {
    pub fn new(t: &JordanTriple, c: &Tripotent) -> Result<Self> {
        let n = t.dim();
        let d = t.box_op(c.vector(), c.vector())?;
        let id = ExactMatrix::identity(n);
        let two = id.scale(&ExactScalar::int(2));
        let d_minus_1 = &d - &id;
        let d_minus_2 = &d - &two;
        if !(&(&d * &d_minus_1) * &d_minus_2).is_zero() {
            return Err(Error::NotTripotent("c□c* has eigenvalues outside {0,1,2}".into()));
        }
        let half = ExactScalar::frac(1, 2);
        let p2 = (&d * &d_minus_1).scale(&half);
        let p1 = &d * &(&two - &d);
        let p0 = (&d_minus_1 * &d_minus_2).scale(&half);
        Ok(PeirceDecomposition { c: c.clone(), p2, p1, p0 })
    }

    pub fn projection(&self, k: usize) -> &ExactMatrix {
        match k {
            2 => &self.p2,
            1 => &self.p1,
            _ => &self.p0,
        }
    }

    /// `E^k_c` as a subspace of coordinates.
    pub fn space(&self, k: usize) -> Subspace {
        column_space(self.projection(k))
    }

    /// Basis of the Peirce-0 space `W = E⁰_c`.
    pub fn w_basis(&self) -> Vec<Vec<ExactScalar>> {
        self.space(0).basis_dense()
    }

    /// Checks `Σ P_k = I`, `P_k² = P_k`, `P_k P_m = 0` and the multiplication rules
    /// `{E^α E^β* E^γ} ⊆ E^{α−β+γ}` on basis samples.
    pub fn verify(&self, t: &JordanTriple) -> Result<()> {
        let n = t.dim();
        let ps = [&self.p0, &self.p1, &self.p2];
        if &(&self.p0 + &self.p1) + &self.p2 != ExactMatrix::identity(n) {
            return Err(Error::IdentityViolated { identity: "P2 + P1 + P0 = I".into(), location: "peirce".into() });
        }
        for (k, pk) in ps.iter().enumerate() {
            for (m, pm) in ps.iter().enumerate() {
                let prod = *pk * *pm;
                let ok = if k == m { prod == **pk } else { prod.is_zero() };
                if !ok {
                    return Err(Error::IdentityViolated {
                        identity: "P_k P_m = δ_km P_k".into(),
                        location: format!("(k,m) = ({k},{m})"),
                    });
                }
            }
        }
        let bases: Vec<Vec<Vec<ExactScalar>>> = (0..3).map(|k| self.space(k).basis_dense()).collect();
        for (al, ba) in bases.iter().enumerate() {
            for (be, bb) in bases.iter().enumerate() {
                for (ga, bc) in bases.iter().enumerate() {
                    let target = al as i64 - be as i64 + ga as i64;
                    for x in ba {
                        for y in bb {
                            for z in bc {
                                let p = t.triple(x, y, z)?;
                                let ok = if (0..=2).contains(&target) {
                                    ps[target as usize].mul_vec(&p)? == p
                                } else {
                                    vec_is_zero(&p)
                                };
                                if !ok {
                                    return Err(Error::IdentityViolated {
                                        identity: "Peirce multiplication rule".into(),
                                        location: format!("(α,β,γ) = ({al},{be},{ga})"),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Pairwise orthogonal minimal tripotents.
#[derive(Clone, Debug)]
pub struct Frame {
    pub elements: Vec<Tripotent>,
}

impl Frame {
    pub fn standard(t: &JordanTriple) -> Result<Self> {
        let elements = t.frame_vectors().iter().map(|e| Tripotent::new(t, e.clone())).collect::<Result<Vec<_>>>()?;
        Ok(Frame { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Orthogonality `e_i□e_j* = 0`, `{e_i e_i* e_j} = 0` (i ≠ j), minimality, and maximality of the sum.
    pub fn verify(&self, t: &JordanTriple) -> Result<()> {
        for (i, a) in self.elements.iter().enumerate() {
            if a.rank() != 1 {
                return Err(Error::NotTripotent(format!("frame element {} has rank {}", i + 1, a.rank())));
            }
            for (j, b) in self.elements.iter().enumerate() {
                if i == j {
                    continue;
                }
                if !t.box_op(a.vector(), b.vector())?.is_zero() || !vec_is_zero(&t.triple(a.vector(), a.vector(), b.vector())?) {
                    return Err(Error::IdentityViolated {
                        identity: "frame orthogonality".into(),
                        location: format!("({}, {})", i + 1, j + 1),
                    });
                }
            }
        }
        let mut sum = vec![ExactScalar::zero(); t.dim()];
        for e in &self.elements {
            sum = vec_add(&sum, e.vector());
        }
        let e = Tripotent::new(t, sum)?;
        // maximal: the Peirce-0 space of the sum is trivial
        if !PeirceDecomposition::new(t, &e)?.p0.is_zero() {
            return Err(Error::IdentityViolated { identity: "frame sum is maximal".into(), location: "E⁰_e ≠ 0".into() });
        }
        Ok(())
    }
}

/// Simultaneous eigenspaces `E_ij` (0 ≤ i ≤ j ≤ r) of the operators `e_k□e_k*`.
#[derive(Clone, Debug)]
pub struct JointPeirce {
    pub blocks: BTreeMap<(usize, usize), Subspace>,
}

impl JointPeirce {
    pub fn new(t: &JordanTriple, frame: &Frame) -> Result<Self> {
        let n = t.dim();
        let r = frame.len();
        let ops: Vec<ExactMatrix> =
            frame.elements.iter().map(|e| t.box_op(e.vector(), e.vector())).collect::<Result<_>>()?;
        let id = ExactMatrix::identity(n);
        let mut blocks = BTreeMap::new();
        for i in 0..=r {
            for j in i..=r {
                // eigenvalue of e_k□e_k* on E_ij is [k = i] + [k = j] (with index 0 meaning none)
                let mut stack: Vec<Vec<ExactScalar>> = Vec::new();
                for (k, op) in ops.iter().enumerate() {
                    let kk = k + 1;
                    let ev = (kk == i) as i64 + (kk == j) as i64;
                    let m = op - &id.scale(&ExactScalar::int(ev));
                    stack.extend(m.row_vecs());
                }
                let space = if stack.is_empty() {
                    Subspace::full(n)
                } else {
                    let big = ExactMatrix::from_rows(&stack)?;
                    Subspace::span(&big.nullspace(), n)?
                };
                blocks.insert((i, j), space);
            }
        }
        Ok(JointPeirce { blocks })
    }

    pub fn block(&self, i: usize, j: usize) -> Option<&Subspace> {
        self.blocks.get(&(i.min(j), i.max(j)))
    }

    /// Total dimension of the blocks (equals `dim E` when they form a direct sum decomposition).
    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(Subspace::dim).sum()
    }
}
