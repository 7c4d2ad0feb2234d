//! Exact scalars: complex rationals and first-order ε-jets over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, Complex, One, Signed, Zero};

/// Exact rational number.
pub type Rational = BigRational;

/// Complex number with exact rational parts.
pub type Cq = Complex<Rational>;

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn cq(re: Rational, im: Rational) -> Cq {
    Complex::new(re, im)
}

pub fn cq_int(re: i64, im: i64) -> Cq {
    Complex::new(rational(re, 1), rational(im, 1))
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).ok()?;
    let q = BigInt::from_str(q).ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}

fn fmt_cq(c: &Cq, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => write!(f, "{}", c.re),
        (true, false) => write!(f, "{}i", c.im),
        (false, false) => {
            if c.im.is_negative() {
                write!(f, "({} - {}i)", c.re, -c.im.clone())
            } else {
                write!(f, "({} + {}i)", c.re, c.im)
            }
        }
    }
}

/// Identifier of an infinitesimal mixing parameter ε_{lower}^{upper}.
///
/// Written `e_<upper>_<lower>`, so ε_3^1 is `e_1_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpsId {
    pub upper: u8,
    pub lower: u8,
}

impl EpsId {
    pub fn new(upper: u8, lower: u8) -> Self {
        EpsId { upper, lower }
    }
}

impl fmt::Display for EpsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_{}_{}", self.upper, self.lower)
    }
}

impl FromStr for EpsId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rest = s
            .strip_prefix("e_")
            .ok_or_else(|| format!("bad ε identifier `{s}`"))?;
        let (a, b) = rest
            .split_once('_')
            .ok_or_else(|| format!("bad ε identifier `{s}`"))?;
        let upper = a.parse().map_err(|_| format!("bad ε identifier `{s}`"))?;
        let lower = b.parse().map_err(|_| format!("bad ε identifier `{s}`"))?;
        Ok(EpsId { upper, lower })
    }
}

/// A complex rational extended by first-order infinitesimals.
///
/// `body + Σ c_k ε_k` with `ε_j ε_k = 0` for all `j, k`. Zero ε coefficients
/// are never stored, so derived equality is exact equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JetScalar {
    body: Cq,
    eps: BTreeMap<EpsId, Cq>,
}

impl Default for JetScalar {
    fn default() -> Self {
        JetScalar::zero()
    }
}

impl JetScalar {
    pub fn zero() -> Self {
        JetScalar {
            body: Cq::zero(),
            eps: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_cq(Cq::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_cq(Cq::i())
    }

    pub fn from_cq(body: Cq) -> Self {
        JetScalar {
            body,
            eps: BTreeMap::new(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_cq(Cq::new(r, Rational::zero()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_cq(cq_int(n, 0))
    }

    pub fn from_parts(re: Rational, im: Rational) -> Self {
        Self::from_cq(Cq::new(re, im))
    }

    /// The bare infinitesimal unit `ε_id`.
    pub fn eps(id: EpsId) -> Self {
        Self::eps_scaled(id, Cq::one())
    }

    /// `c · ε_id`.
    pub fn eps_scaled(id: EpsId, c: Cq) -> Self {
        let mut eps = BTreeMap::new();
        if !c.is_zero() {
            eps.insert(id, c);
        }
        JetScalar {
            body: Cq::zero(),
            eps,
        }
    }

    /// Builds a jet from a body and ε coefficients, dropping zeros and
    /// merging repeated identifiers.
    pub fn from_terms(body: Cq, terms: impl IntoIterator<Item = (EpsId, Cq)>) -> Self {
        let mut out = Self::from_cq(body);
        for (id, c) in terms {
            out.add_eps(id, c);
        }
        out
    }

    fn add_eps(&mut self, id: EpsId, c: Cq) {
        if c.is_zero() {
            return;
        }
        let entry = self.eps.entry(id).or_insert_with(Cq::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.eps.remove(&id);
        }
    }

    pub fn body(&self) -> &Cq {
        &self.body
    }

    pub fn eps_terms(&self) -> &BTreeMap<EpsId, Cq> {
        &self.eps
    }

    /// Coefficient of `ε_id` (zero when absent).
    pub fn eps_coeff(&self, id: &EpsId) -> Cq {
        self.eps.get(id).cloned().unwrap_or_else(Cq::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero() && self.eps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.body.is_one() && self.eps.is_empty()
    }

    /// True when no infinitesimal part is present.
    pub fn is_plain(&self) -> bool {
        self.eps.is_empty()
    }

    /// Complex conjugation of the body and of every ε coefficient.
    pub fn conj(&self) -> Self {
        JetScalar {
            body: self.body.conj(),
            eps: self.eps.iter().map(|(k, v)| (*k, v.conj())).collect(),
        }
    }

    pub fn scale_cq(&self, c: &Cq) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        JetScalar {
            body: &self.body * c,
            eps: self.eps.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }
}

impl fmt::Display for JetScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps.is_empty() {
            return fmt_cq(&self.body, f);
        }
        let mut first = true;
        if !self.body.is_zero() {
            fmt_cq(&self.body, f)?;
            first = false;
        }
        for (id, c) in &self.eps {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{id}")?;
            } else {
                fmt_cq(c, f)?;
                write!(f, "*{id}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a JetScalar> for &'a JetScalar {
    type Output = JetScalar;

    fn add(self, rhs: &JetScalar) -> JetScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&JetScalar> for JetScalar {
    fn add_assign(&mut self, rhs: &JetScalar) {
        self.body = &self.body + &rhs.body;
        for (id, c) in &rhs.eps {
            self.add_eps(*id, c.clone());
        }
    }
}

impl<'a> Sub<&'a JetScalar> for &'a JetScalar {
    type Output = JetScalar;

    fn sub(self, rhs: &JetScalar) -> JetScalar {
        let mut out = self.clone();
        out += &(-rhs);
        out
    }
}

impl Neg for &JetScalar {
    type Output = JetScalar;

    fn neg(self) -> JetScalar {
        JetScalar {
            body: -self.body.clone(),
            eps: self.eps.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }
}

impl<'a> Mul<&'a JetScalar> for &'a JetScalar {
    type Output = JetScalar;

    /// First-order product: ε·ε contributions vanish.
    fn mul(self, rhs: &JetScalar) -> JetScalar {
        let mut out = JetScalar::from_cq(&self.body * &rhs.body);
        if !self.body.is_zero() {
            for (id, c) in &rhs.eps {
                out.add_eps(*id, &self.body * c);
            }
        }
        if !rhs.body.is_zero() {
            for (id, c) in &self.eps {
                out.add_eps(*id, c * &rhs.body);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<JetScalar> for JetScalar {
            type Output = JetScalar;
            fn $m(self, rhs: JetScalar) -> JetScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a JetScalar> for JetScalar {
            type Output = JetScalar;
            fn $m(self, rhs: &JetScalar) -> JetScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for JetScalar {
    type Output = JetScalar;
    fn neg(self) -> JetScalar {
        -&self
    }
}

impl From<i64> for JetScalar {
    fn from(n: i64) -> Self {
        JetScalar::from_int(n)
    }
}

impl From<Rational> for JetScalar {
    fn from(r: Rational) -> Self {
        JetScalar::from_rational(r)
    }
}

impl From<Cq> for JetScalar {
    fn from(c: Cq) -> Self {
        JetScalar::from_cq(c)
    }
}

/// Commutative scalar ring used by the bilinear coordinate formulas, so the
/// same code runs on numeric jets and on symbolic polynomials.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_jet(j: &JetScalar) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for JetScalar {
    fn zero() -> Self {
        JetScalar::zero()
    }
    fn one() -> Self {
        JetScalar::one()
    }
    fn from_jet(j: &JetScalar) -> Self {
        j.clone()
    }
    fn is_zero(&self) -> bool {
        JetScalar::is_zero(self)
    }
}
