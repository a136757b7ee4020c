use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::exact::{parse_rat, parse_scalar, ExactMatrix, ExactScalar};

/// Polynomial in `nvars` variables over Gaussian rationals; canonical term map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: ExactScalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, ExactScalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), ExactScalar::one());
        p
    }

    /// Linear form `Σ coeffs[i]·z_i`.
    pub fn linear(coeffs: &[ExactScalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn monomial(m: Monomial, c: ExactScalar) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, ExactScalar)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::dims("monomial arity"));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        self.add_term_ref(&m, &c);
    }

    fn add_term_ref(&mut self, m: &Monomial, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, ExactScalar> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn homogeneous_part(&self, n: usize) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn constant_term(&self) -> ExactScalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::dims(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term_ref(m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term_ref(m, &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term_ref(&m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &ExactScalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by a monomial (shifts exponents).
    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// Coefficientwise conjugate, i.e. `z ↦ conj(p(conj z))`.
    pub fn conj_coeffs(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    pub fn eval(&self, z: &[ExactScalar]) -> Result<ExactScalar> {
        if z.len() != self.nvars {
            return Err(Error::dims(format!("point of length {} for {} variables", z.len(), self.nvars)));
        }
        let maxdeg = self.degree().unwrap_or(0);
        let powers: Vec<Vec<ExactScalar>> = z
            .iter()
            .map(|x| {
                let mut v = vec![ExactScalar::one()];
                for k in 1..=maxdeg {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// `w ↦ p(M w + t)`; `M` is `nvars × k`, `t` has length `nvars` (or is `None`).
    pub fn compose_affine(&self, m: &ExactMatrix, t: Option<&[ExactScalar]>) -> Result<Poly> {
        if m.rows() != self.nvars || t.is_some_and(|t| t.len() != self.nvars) {
            return Err(Error::dims("substitution size"));
        }
        let k = m.cols();
        let subs: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                let mut p = Poly::linear(m.row(i));
                if p.nvars != k {
                    p = Poly::zero(k);
                }
                if let Some(t) = t {
                    p.add_term(Monomial::one(k), t[i].clone());
                }
                p
            })
            .collect();
        let maxdeg = self.degree().unwrap_or(0);
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(k), s.clone()]).collect();
        for (i, pw) in powers.iter_mut().enumerate() {
            for e in 2..=maxdeg {
                let next = &pw[e - 1] * &subs[i];
                pw.push(next);
            }
        }
        let mut out = Poly::zero(k);
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(k, c.clone());
            for (i, &e) in mono.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
                if t.is_zero() {
                    break;
                }
            }
            for (mm, cc) in &t.terms {
                out.add_term_ref(mm, cc);
            }
        }
        Ok(out)
    }

    /// `z ↦ p(M z)` for square `M`.
    pub fn compose_linear(&self, m: &ExactMatrix) -> Result<Poly> {
        if !m.is_square() || m.rows() != self.nvars {
            return Err(Error::dims("compose_linear needs a square matrix of size nvars"));
        }
        self.compose_affine(m, None)
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[i] -= 1;
            out.add_term_ref(&d, &c.scale(&crate::exact::Rat::from_int(e as i64)));
        }
        out
    }

    /// Derivation along a linear vector field: `(A^δ p)(z) = p'(z)·Az = Σ_i ∂_i p(z)·(Az)_i`.
    ///
    /// With this convention `A^δ B^δ − B^δ A^δ = (BA − AB)^δ`.
    pub fn derive(&self, a: &ExactMatrix) -> Result<Poly> {
        if !a.is_square() || a.rows() != self.nvars {
            return Err(Error::dims("derive needs a square matrix of size nvars"));
        }
        let n = self.nvars;
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            for i in 0..n {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let base = c.scale(&crate::exact::Rat::from_int(e as i64));
                let mut d = m.clone();
                d.0[i] -= 1;
                for j in 0..n {
                    let aij = &a[(i, j)];
                    if aij.is_zero() {
                        continue;
                    }
                    let mut mm = d.clone();
                    mm.0[j] += 1;
                    out.add_term_ref(&mm, &(&base * aij));
                }
            }
        }
        Ok(out)
    }

    /// Normal projection `w ↦ p(c + Σ_k w_k b_k)` where the `b_k` are the columns of `w_basis`.
    pub fn normal_project(&self, c: &[ExactScalar], w_basis: &ExactMatrix) -> Result<Poly> {
        self.compose_affine(w_basis, Some(c))
    }

    /// Parses the text format, e.g. `(3/2+1/2i)*z0^2*z3 - z1`.
    pub fn parse(text: &str, nvars: usize) -> Result<Poly> {
        Parser { s: text.as_bytes(), pos: 0, nvars, text }.poly()
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("same number of variables")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("same number of variables")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("same number of variables")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-ExactScalar::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("z{i}") } else { format!("z{i}^{e}") })
                .collect();
            let (neg, mag) = if c.is_real() && c.re().is_negative() { (true, -c) } else { (false, c.clone()) };
            let coef = if mag.is_real() { mag.to_string() } else { format!("({mag})") };
            let sign = match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sign}")?;
            if vars.is_empty() {
                write!(f, "{coef}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{coef}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut out = Poly::zero(self.nvars);
        let mut first = true;
        loop {
            let mut sign = ExactScalar::one();
            match self.peek() {
                None if first => return Err(self.err("empty polynomial")),
                None => break,
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(_) => return Err(self.err("expected '+' or '-' between terms")),
            }
            first = false;
            let t = self.term()?;
            out = &out + &t.scale(&sign);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut coef = ExactScalar::one();
        let mut mono = Monomial::one(self.nvars);
        loop {
            self.factor(&mut coef, &mut mono)?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(Poly::monomial(mono, coef))
    }

    fn factor(&mut self, coef: &mut ExactScalar, mono: &mut Monomial) -> Result<()> {
        match self.peek() {
            Some(b'(') => {
                let start = self.pos;
                let close = self.text[start..].find(')').ok_or_else(|| self.err("unbalanced parenthesis"))? + start;
                let v = parse_scalar(&self.text[start..=close], start)?;
                self.pos = close + 1;
                *coef = &*coef * &v;
            }
            Some(b'z') => {
                self.pos += 1;
                let at = self.pos;
                let idx: usize = self
                    .digits()
                    .ok_or_else(|| self.err("expected variable index after 'z'"))?
                    .parse()
                    .map_err(|_| self.err("variable index"))?;
                if idx >= self.nvars {
                    return Err(Error::Parse { pos: at, msg: format!("variable z{idx} out of range (nvars = {})", self.nvars) });
                }
                let mut e = 1usize;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    e = self.digits().ok_or_else(|| self.err("expected exponent"))?.parse().map_err(|_| self.err("exponent"))?;
                }
                let total = mono.0[idx] as usize + e;
                if total > u8::MAX as usize {
                    return Err(self.err("exponent too large"));
                }
                mono.0[idx] = total as u8;
            }
            Some(b'i') => {
                self.pos += 1;
                *coef = &*coef * &ExactScalar::i();
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                self.digits();
                if self.s.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    if self.digits().is_none() {
                        return Err(self.err("expected denominator"));
                    }
                }
                let r = parse_rat(&self.text[start..self.pos])
                    .ok_or(Error::Parse { pos: start, msg: "malformed rational".into() })?;
                let mut v = ExactScalar::real(r);
                if self.s.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    v = &v * &ExactScalar::i();
                }
                *coef = &*coef * &v;
            }
            Some(_) => return Err(self.err("unexpected character")),
            None => return Err(self.err("unexpected end of input")),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn square_of_sum() {
        let s = &z(2, 0) + &z(2, 1);
        let sq = s.pow(2);
        let expect = Poly::parse("z0^2 + 2*z0*z1 + z1^2", 2).unwrap();
        assert_eq!(sq, expect);
        assert!((&sq * &Poly::zero(2)).is_zero());
    }

    #[test]
    fn determinant_at_identity() {
        let det = Poly::parse("z0*z3 - z1*z2", 4).unwrap();
        let e = [1, 0, 0, 1].map(ExactScalar::int);
        assert_eq!(det.eval(&e).unwrap(), ExactScalar::one());
    }

    #[test]
    fn compose_examples() {
        let p = z(2, 0);
        let two = ExactMatrix::identity(2).scale(&ExactScalar::int(2));
        assert_eq!(p.compose_linear(&two).unwrap(), p.scale(&ExactScalar::int(2)));
        let det = Poly::parse("z0*z3 - z1*z2", 4).unwrap();
        assert_eq!(det.compose_linear(&ExactMatrix::identity(4)).unwrap(), det);
        // transpose map swaps z1 and z2
        let mut t = ExactMatrix::zeros(4, 4);
        for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            t[(i, j)] = ExactScalar::one();
        }
        assert_eq!(det.compose_linear(&t).unwrap(), det);
        assert!(det.compose_linear(&ExactMatrix::identity(3)).is_err());
    }

    #[test]
    fn euler_identity() {
        let p = Poly::parse("z0^2*z1 + 3*z2^3 - (1/2+i)*z0*z1*z2", 3).unwrap();
        let d = p.derive(&ExactMatrix::identity(3)).unwrap();
        assert_eq!(d, p.scale(&ExactScalar::int(3)));
    }

    #[test]
    fn derivation_along_left_multiplication() {
        // matrix(2,2) coordinates z11,z12,z21,z22; A z = E11 z + z E11
        let mut a = ExactMatrix::zeros(4, 4);
        a[(0, 0)] = ExactScalar::int(2);
        a[(1, 1)] = ExactScalar::one();
        a[(2, 2)] = ExactScalar::one();
        let p = z(4, 0);
        assert_eq!(p.derive(&a).unwrap(), p.scale(&ExactScalar::int(2)));
    }

    #[test]
    fn normal_projection_of_minor() {
        // matrix(2,3): z11 z12 z13 z21 z22 z23; c = E11; W = span{z22, z23}
        let minor = Poly::parse("z0*z4 - z1*z3", 6).unwrap();
        let mut c = vec![ExactScalar::zero(); 6];
        c[0] = ExactScalar::one();
        let mut w = ExactMatrix::zeros(6, 2);
        w[(4, 0)] = ExactScalar::one();
        w[(5, 1)] = ExactScalar::one();
        assert_eq!(minor.normal_project(&c, &w).unwrap(), Poly::var(2, 0));
        let one = Poly::one(6);
        assert_eq!(one.normal_project(&c, &w).unwrap(), Poly::one(2));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["(3/2+1/2*i)*z0^2*z3 - z1 + 7", "-z2^3 + (i)*z1", "0", "-1/2*z0*z1"] {
            let p = Poly::parse(s, 4).unwrap();
            assert_eq!(Poly::parse(&p.to_string(), 4).unwrap(), p, "{s} -> {p}");
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        match Poly::parse("z0 + z9", 4) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Poly::parse("z0 +", 4), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse("z0 $ z1", 4), Err(Error::Parse { .. })));
    }
}
