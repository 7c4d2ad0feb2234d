//! Commutative polynomials in spinor coefficients and ε parameters, with
//! complex rational coefficients and first-order truncation in ε.
//!
//! Used to check bilinear coordinate formulas with fully symbolic inputs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::scalar::{Cq, EpsId, JetScalar, Ring};

/// A polynomial variable. The declaration order is the canonical print
/// order inside a monomial: ε first, then primed spinor components, then
/// unprimed ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Eps(EpsId),
    /// ξ'_α.
    XiPrime(u8),
    /// ξ_α.
    Xi(u8),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Eps(id) => write!(f, "{id}"),
            Sym::XiPrime(a) => write!(f, "xi'{a}"),
            Sym::Xi(a) => write!(f, "xi{a}"),
        }
    }
}

/// Sorted `(variable, exponent)` list.
type SymMono = Vec<(Sym, u32)>;

fn eps_degree(m: &SymMono) -> u32 {
    m.iter()
        .filter(|(s, _)| matches!(s, Sym::Eps(_)))
        .map(|(_, e)| e)
        .sum()
}

fn mono_mul(a: &SymMono, b: &SymMono) -> SymMono {
    let mut map: BTreeMap<Sym, u32> = a.iter().copied().collect();
    for (s, e) in b {
        *map.entry(*s).or_default() += e;
    }
    map.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<SymMono, Cq>,
}

impl SymPoly {
    pub fn constant(c: Cq) -> Self {
        let mut p = SymPoly::default();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(s: Sym) -> Self {
        let mut p = SymPoly::default();
        p.add_term(vec![(s, 1)], Cq::one());
        p
    }

    pub fn xi(a: u8) -> Self {
        Self::var(Sym::Xi(a))
    }

    pub fn xi_prime(a: u8) -> Self {
        Self::var(Sym::XiPrime(a))
    }

    pub fn eps(id: EpsId) -> Self {
        Self::var(Sym::Eps(id))
    }

    pub fn i() -> Self {
        Self::constant(Cq::i())
    }

    fn add_term(&mut self, m: SymMono, c: Cq) {
        if c.is_zero() || eps_degree(&m) > 1 {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Cq::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Substitutes numeric jets for every variable.
    pub fn eval(&self, value: impl Fn(Sym) -> JetScalar) -> JetScalar {
        let mut total = JetScalar::zero();
        for (m, c) in &self.terms {
            let mut t = JetScalar::from_cq(c.clone());
            for (s, e) in m {
                let v = value(*s);
                for _ in 0..*e {
                    t = &t * &v;
                }
            }
            total += &t;
        }
        total
    }
}

impl Add for SymPoly {
    type Output = SymPoly;
    fn add(mut self, rhs: SymPoly) -> SymPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: SymPoly) -> SymPoly {
        self + (-rhs)
    }
}

impl Mul for SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: SymPoly) -> SymPoly {
        let mut out = SymPoly::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(mono_mul(a, b), ca * cb);
            }
        }
        out
    }
}

impl Ring for SymPoly {
    fn zero() -> Self {
        SymPoly::default()
    }
    fn one() -> Self {
        SymPoly::constant(Cq::one())
    }
    fn from_jet(j: &JetScalar) -> Self {
        let mut p = SymPoly::constant(j.body().clone());
        for (id, c) in j.eps_terms() {
            p.add_term(vec![(Sym::Eps(*id), 1)], c.clone());
        }
        p
    }
    fn is_zero(&self) -> bool {
        SymPoly::is_zero(self)
    }
}

/// Canonical text: terms in monomial order, `-` for negative real
/// coefficients, `i*` for imaginary units, `*` between factors.
impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (negative, mag) = coeff_text(c);
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .iter()
                .map(|(s, e)| {
                    if *e == 1 {
                        s.to_string()
                    } else {
                        format!("{s}^{e}")
                    }
                })
                .collect();
            match (mag.as_str(), factors.is_empty()) {
                ("1", true) => write!(f, "1")?,
                ("1", false) => write!(f, "{}", factors.join("*"))?,
                (_, true) => write!(f, "{mag}")?,
                (_, false) => write!(f, "{mag}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Sign and magnitude text for a coefficient: real `r`, imaginary `r i`
/// (written `i` or `r*i`), or a general `(a + bi)`.
fn coeff_text(c: &Cq) -> (bool, String) {
    if c.im.is_zero() {
        return (c.re.is_negative(), c.re.abs().to_string());
    }
    if c.re.is_zero() {
        let mag = c.im.abs();
        let text = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{mag}*i")
        };
        return (c.im.is_negative(), text);
    }
    (false, format!("({} + {}i)", c.re, c.im))
}
