//! The Grassmann algebra Λ_n: monomials, states and the elementary
//! multiplication and derivative maps.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::JetScalar;

/// Largest supported generator count.
pub const MAX_GENERATORS: u8 = 16;

/// Generator counts of an algebra: `n_total` generators, the first `n_d` of
/// which are the primed (spinor) generators; the remaining `n_add` are the
/// additional odd coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSignature {
    n_total: u8,
    n_d: u8,
}

impl AlgebraSignature {
    pub fn new(n_total: usize, n_d: usize) -> Result<Self> {
        if n_total == 0 || n_total > MAX_GENERATORS as usize || n_d > n_total {
            return Err(Error::InvalidSignature { n_total, n_d });
        }
        Ok(AlgebraSignature {
            n_total: n_total as u8,
            n_d: n_d as u8,
        })
    }

    /// Signature whose generators are all primed.
    pub fn full(n_total: usize) -> Result<Self> {
        Self::new(n_total, n_total)
    }

    pub fn n_total(&self) -> u8 {
        self.n_total
    }

    pub fn n_d(&self) -> u8 {
        self.n_d
    }

    pub fn n_add(&self) -> u8 {
        self.n_total - self.n_d
    }

    /// Number of basis monomials, `2^n_total`.
    pub fn dim(&self) -> usize {
        1usize << self.n_total
    }

    pub fn is_primed(&self, alpha: u8) -> bool {
        (1..=self.n_d).contains(&alpha)
    }

    pub fn is_additional(&self, alpha: u8) -> bool {
        alpha > self.n_d && alpha <= self.n_total
    }

    pub fn primed(&self) -> impl Iterator<Item = u8> {
        1..=self.n_d
    }

    pub fn additional(&self) -> impl Iterator<Item = u8> {
        self.n_d + 1..=self.n_total
    }

    pub fn generators(&self) -> impl Iterator<Item = u8> {
        1..=self.n_total
    }

    pub fn check_index(&self, alpha: usize) -> Result<u8> {
        if alpha == 0 || alpha > self.n_total as usize {
            return Err(Error::IndexOutOfRange {
                index: alpha,
                n_total: self.n_total,
            });
        }
        Ok(alpha as u8)
    }

    pub fn check_rank(&self, k: usize) -> Result<u8> {
        if k > self.n_total as usize {
            return Err(Error::RankOutOfRange {
                rank: k,
                n_total: self.n_total,
            });
        }
        Ok(k as u8)
    }

    pub fn check_monomial(&self, m: Monomial) -> Result<Monomial> {
        if (m.0 as u64) >> self.n_total != 0 {
            return Err(Error::MonomialOutOfRange {
                bits: m.0,
                n_total: self.n_total,
            });
        }
        Ok(m)
    }

    /// All basis monomials in bitmask order.
    pub fn basis(&self) -> impl Iterator<Item = Monomial> {
        (0..self.dim() as u32).map(Monomial)
    }

    pub(crate) fn ensure_same(&self, other: &AlgebraSignature) -> Result<()> {
        if self != other {
            return Err(Error::SignatureMismatch {
                left: *self,
                right: *other,
            });
        }
        Ok(())
    }
}

impl fmt::Display for AlgebraSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ(n={}, n_D={})", self.n_total, self.n_d)
    }
}

/// Product of distinct generators in increasing index order. Bit `α − 1`
/// marks generator θ^α; the empty set is the unit monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u32);

impl Monomial {
    pub const UNIT: Monomial = Monomial(0);

    pub fn from_bits(bits: u32) -> Self {
        Monomial(bits)
    }

    /// The single generator θ^α (α is 1-based).
    pub fn generator(alpha: u8) -> Self {
        debug_assert!((1..=32).contains(&alpha));
        Monomial(1 << (alpha - 1))
    }

    /// Builds a monomial from distinct indices; order is irrelevant since
    /// the result is the canonical-order set.
    pub fn from_indices(indices: &[u8]) -> Result<Self> {
        let mut bits = 0u32;
        for &a in indices {
            if a == 0 || a > MAX_GENERATORS {
                return Err(Error::IndexOutOfRange {
                    index: a as usize,
                    n_total: MAX_GENERATORS,
                });
            }
            let b = 1u32 << (a - 1);
            if bits & b != 0 {
                return Err(Error::MalformedMultiIndex(format!(
                    "repeated generator {a} in {indices:?}"
                )));
            }
            bits |= b;
        }
        Ok(Monomial(bits))
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn rank(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(&self, alpha: u8) -> bool {
        self.0 & (1 << (alpha - 1)) != 0
    }

    pub fn is_unit(&self) -> bool {
        self.0 == 0
    }

    /// Generator indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = u8> + '_ {
        let bits = self.0;
        (0..32u8)
            .filter(move |i| bits & (1 << i) != 0)
            .map(|i| i + 1)
    }

    /// Number of generators in `self` with index below `alpha`.
    pub fn count_below(&self, alpha: u8) -> u32 {
        (self.0 & ((1u32 << (alpha - 1)) - 1)).count_ones()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        for a in self.indices() {
            write!(f, "θ{a}")?;
        }
        Ok(())
    }
}

/// Grassmann product of two monomials: `None` when they share a generator,
/// otherwise the merge sign and the canonical union.
pub fn mono_mul(a: Monomial, b: Monomial) -> Option<(i8, Monomial)> {
    if a.0 & b.0 != 0 {
        return None;
    }
    // every (i in a, j in b) with i > j is one transposition
    let mut swaps = 0u32;
    let mut rest = b.0;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a.0 >> (j + 1)).count_ones();
    }
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, Monomial(a.0 | b.0)))
}

/// θ^α · m on a single monomial.
pub(crate) fn theta_on_monomial(alpha: u8, m: Monomial) -> Option<(i8, Monomial)> {
    if m.contains(alpha) {
        return None;
    }
    let sign = if m.count_below(alpha).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Some((sign, Monomial(m.0 | (1 << (alpha - 1)))))
}

/// Left derivative ∂/∂θ^α on a single monomial.
pub(crate) fn deriv_on_monomial(alpha: u8, m: Monomial) -> Option<(i8, Monomial)> {
    if !m.contains(alpha) {
        return None;
    }
    let sign = if m.count_below(alpha).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Some((sign, Monomial(m.0 & !(1 << (alpha - 1)))))
}

pub(crate) type SparseVec = BTreeMap<Monomial, JetScalar>;

pub(crate) fn add_into(v: &mut SparseVec, m: Monomial, c: JetScalar) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&m) {
        Some(slot) => {
            *slot += &c;
            if slot.is_zero() {
                v.remove(&m);
            }
        }
        None => {
            v.insert(m, c);
        }
    }
}

pub(crate) fn add_signed(v: &mut SparseVec, m: Monomial, sign: i8, c: &JetScalar) {
    if sign > 0 {
        add_into(v, m, c.clone());
    } else {
        add_into(v, m, -c);
    }
}

/// An element Ψ of Λ_n: a sparse combination of basis monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    sig: AlgebraSignature,
    coeffs: SparseVec,
}

impl State {
    pub fn zero(sig: AlgebraSignature) -> Self {
        State {
            sig,
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit state `1`.
    pub fn one(sig: AlgebraSignature) -> Self {
        Self::monomial(sig, Monomial::UNIT, JetScalar::one())
    }

    pub fn monomial(sig: AlgebraSignature, m: Monomial, c: JetScalar) -> Self {
        let mut s = Self::zero(sig);
        add_into(&mut s.coeffs, m, c);
        s
    }

    /// `c · θ^α`.
    pub fn generator(sig: AlgebraSignature, alpha: usize, c: JetScalar) -> Result<Self> {
        let a = sig.check_index(alpha)?;
        Ok(Self::monomial(sig, Monomial::generator(a), c))
    }

    /// Σ c_α θ^α from a coefficient vector over all generators.
    pub fn linear(sig: AlgebraSignature, coeffs: &[JetScalar]) -> Result<Self> {
        if coeffs.len() != sig.n_total() as usize {
            return Err(Error::DimensionMismatch {
                expected: format!("{} coefficients", sig.n_total()),
                found: coeffs.len().to_string(),
            });
        }
        let mut s = Self::zero(sig);
        for (i, c) in coeffs.iter().enumerate() {
            add_into(&mut s.coeffs, Monomial::generator(i as u8 + 1), c.clone());
        }
        Ok(s)
    }

    pub fn from_terms(
        sig: AlgebraSignature,
        terms: impl IntoIterator<Item = (Monomial, JetScalar)>,
    ) -> Result<Self> {
        let mut s = Self::zero(sig);
        for (m, c) in terms {
            sig.check_monomial(m)?;
            add_into(&mut s.coeffs, m, c);
        }
        Ok(s)
    }

    pub(crate) fn from_sparse(sig: AlgebraSignature, coeffs: SparseVec) -> Self {
        State { sig, coeffs }
    }

    pub(crate) fn into_sparse(self) -> SparseVec {
        self.coeffs
    }

    pub fn sig(&self) -> AlgebraSignature {
        self.sig
    }

    pub fn coeff(&self, m: Monomial) -> JetScalar {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &JetScalar)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &State) -> Result<State> {
        self.sig.ensure_same(&other.sig)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            add_into(&mut out.coeffs, *m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &State) -> Result<State> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> State {
        State {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, lambda: &JetScalar) -> State {
        let mut out = State::zero(self.sig);
        for (m, c) in &self.coeffs {
            add_into(&mut out.coeffs, *m, lambda * c);
        }
        out
    }

    /// Grassmann product `self ∧ other`.
    pub fn wedge(&self, other: &State) -> Result<State> {
        self.sig.ensure_same(&other.sig)?;
        let mut out = State::zero(self.sig);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if let Some((sign, m)) = mono_mul(*a, *b) {
                    add_signed(&mut out.coeffs, m, sign, &(ca * cb));
                }
            }
        }
        Ok(out)
    }

    /// Highest rank present, or `None` for the zero state.
    pub fn max_rank(&self) -> Option<u32> {
        self.coeffs.keys().map(Monomial::rank).max()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match (m.is_unit(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) if c.is_plain() => write!(f, "{c}*{m}")?,
                (false, false) => write!(f, "({c})*{m}")?,
            }
        }
        Ok(())
    }
}

/// θ̂^α Ψ.
pub fn left_mult_theta(alpha: usize, psi: &State) -> Result<State> {
    let a = psi.sig.check_index(alpha)?;
    let mut out = State::zero(psi.sig);
    for (m, c) in &psi.coeffs {
        if let Some((sign, p)) = theta_on_monomial(a, *m) {
            add_signed(&mut out.coeffs, p, sign, c);
        }
    }
    Ok(out)
}

/// ∂/∂θ^α Ψ, acting from the left.
pub fn derivative(alpha: usize, psi: &State) -> Result<State> {
    let a = psi.sig.check_index(alpha)?;
    let mut out = State::zero(psi.sig);
    for (m, c) in &psi.coeffs {
        if let Some((sign, p)) = deriv_on_monomial(a, *m) {
            add_signed(&mut out.coeffs, p, sign, c);
        }
    }
    Ok(out)
}

/// Keeps only the rank-`k` part of Ψ. Reference implementation for the
/// projector operators.
pub fn rank_project_oracle(k: usize, psi: &State) -> Result<State> {
    let k = psi.sig.check_rank(k)? as u32;
    Ok(State {
        sig: psi.sig,
        coeffs: psi
            .coeffs
            .iter()
            .filter(|(m, _)| m.rank() == k)
            .map(|(m, c)| (*m, c.clone()))
            .collect(),
    })
}

pub fn conjugate_state(psi: &State) -> State {
    State {
        sig: psi.sig,
        coeffs: psi.coeffs.iter().map(|(m, c)| (*m, c.conj())).collect(),
    }
}
