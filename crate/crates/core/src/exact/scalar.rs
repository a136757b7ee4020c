use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;

use super::rat::{parse_rat, Rat};
use crate::error::{Error, Result};

/// Gaussian rational `re + im·i` with exact rational parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    re: Rat,
    im: Rat,
}

impl ExactScalar {
    pub fn new(re: Rat, im: Rat) -> Self {
        ExactScalar { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(Rat::one())
    }

    pub fn i() -> Self {
        ExactScalar { re: Rat::zero(), im: Rat::one() }
    }

    pub fn real(re: Rat) -> Self {
        ExactScalar { re, im: Rat::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::real(Rat::from_int(n))
    }

    /// `num/den` as a real scalar. Panics on `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::real(Rat::new(num, den))
    }

    /// `(a/b) + (c/d)·i`.
    pub fn gauss(a: i64, b: i64, c: i64, d: i64) -> Self {
        ExactScalar { re: Rat::new(a, b), im: Rat::new(c, d) }
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn im(&self) -> &Rat {
        &self.im
    }

    pub fn re_num(&self) -> BigInt {
        self.re.numer()
    }
    pub fn re_den(&self) -> BigInt {
        self.re.denom()
    }
    pub fn im_num(&self) -> BigInt {
        self.im.numer()
    }
    pub fn im_den(&self) -> BigInt {
        self.im.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactScalar { re: self.re.clone(), im: -&self.im }
    }

    /// `|x|² = x·conj(x)`, always real.
    pub fn norm_sqr(&self) -> Rat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        ExactScalar { re: &self.re * r, im: &self.im * r }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.im.is_zero() {
            return self.re.recip().map(Self::real).ok_or(Error::DivisionByZero);
        }
        let n = self.norm_sqr().recip().ok_or(Error::DivisionByZero)?;
        Ok(ExactScalar { re: &self.re * &n, im: -(&self.im * &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Parses the scalar text format `a/b+c/d*i` (either part optional,
    /// `i` alone allowed, optional surrounding parentheses).
    pub fn parse(s: &str) -> Result<Self> {
        parse_scalar(s, 0)
    }
}

impl From<Rat> for ExactScalar {
    fn from(r: Rat) -> Self {
        Self::real(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.im.is_zero() {
            return ExactScalar { re: &self.re * &rhs.re, im: &self.re * &rhs.im };
        }
        if rhs.im.is_zero() {
            return ExactScalar { re: &self.re * &rhs.re, im: &self.im * &rhs.re };
        }
        ExactScalar {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &'a ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        if !rhs.re.is_zero() {
            self.re = &self.re + &rhs.re;
        }
        if !rhs.im.is_zero() {
            self.im = &self.im + &rhs.im;
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        if !rhs.re.is_zero() {
            self.re = &self.re - &rhs.re;
        }
        if !rhs.im.is_zero() {
            self.im = &self.im - &rhs.im;
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, im: &Rat, leading: bool| -> fmt::Result {
            let neg = im.is_negative();
            let mag = im.abs();
            let sign = match (neg, leading) {
                (true, _) => "-",
                (false, true) => "",
                (false, false) => "+",
            };
            if mag.is_one() {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{mag}*i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => imag(f, &self.im, true),
            (false, false) => {
                write!(f, "{}", self.re)?;
                imag(f, &self.im, false)
            }
        }
    }
}

/// Parses a scalar; `offset` is added to reported error positions.
pub(crate) fn parse_scalar(text: &str, offset: usize) -> Result<ExactScalar> {
    let err = |pos: usize, msg: &str| Error::Parse { pos: offset + pos, msg: msg.to_string() };
    let mut s = text.trim();
    let lead = text.len() - text.trim_start().len();
    let mut base = lead;
    if s.starts_with('(') {
        if !s.ends_with(')') {
            return Err(err(lead, "unbalanced parenthesis"));
        }
        s = &s[1..s.len() - 1];
        base += 1;
    }
    let compact: Vec<(usize, char)> =
        s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err(base, "empty scalar"));
    }
    // split into signed terms at '+'/'-' that do not follow '/' or '*'
    let mut terms: Vec<(usize, String)> = Vec::new();
    let mut cur = String::new();
    let mut cur_pos = compact[0].0;
    for (k, &(pos, c)) in compact.iter().enumerate() {
        let prev = if k > 0 { Some(compact[k - 1].1) } else { None };
        if (c == '+' || c == '-') && k > 0 && !matches!(prev, Some('/') | Some('*')) {
            terms.push((cur_pos, std::mem::take(&mut cur)));
            cur_pos = pos;
        }
        cur.push(c);
    }
    terms.push((cur_pos, cur));
    if terms.len() > 2 {
        return Err(err(base + terms[2].0, "too many terms in scalar"));
    }
    let mut re: Option<Rat> = None;
    let mut im: Option<Rat> = None;
    for (pos, t) in terms {
        if let Some(body) = t.strip_suffix('i') {
            let body = body.strip_suffix('*').unwrap_or(body);
            let coef = match body {
                "" | "+" => Rat::one(),
                "-" => -Rat::one(),
                b => parse_rat(b).ok_or_else(|| err(base + pos, "malformed imaginary part"))?,
            };
            if im.replace(coef).is_some() {
                return Err(err(base + pos, "duplicate imaginary part"));
            }
        } else {
            let v = parse_rat(&t).ok_or_else(|| err(base + pos, "malformed rational"))?;
            if re.replace(v).is_some() {
                return Err(err(base + pos, "duplicate real part"));
            }
        }
    }
    Ok(ExactScalar { re: re.unwrap_or_default(), im: im.unwrap_or_default() })
}
