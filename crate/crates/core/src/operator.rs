//! The generalized matrix algebra GM(Λ_n): linear operators on Λ_n generated
//! by θ̂^α and ∂/∂θ^α, stored extensionally in the monomial basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::exec::Exec;
use crate::grassmann::{
    add_into, add_signed, deriv_on_monomial, theta_on_monomial, AlgebraSignature, Monomial,
    SparseVec, State,
};
use crate::scalar::JetScalar;

/// Below this many columns composition stays on the calling thread.
const PAR_MIN_COLUMNS: usize = 64;

/// One generator of GM(Λ_n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// Left multiplication θ̂^α.
    Theta(u8),
    /// Left derivative ∂/∂θ^α.
    Deriv(u8),
}

impl Letter {
    pub fn index(&self) -> u8 {
        match *self {
            Letter::Theta(a) | Letter::Deriv(a) => a,
        }
    }

    /// Transpose of a single generator: θ̂^α ↔ ∂/∂θ^α.
    pub fn transpose(&self) -> Letter {
        match *self {
            Letter::Theta(a) => Letter::Deriv(a),
            Letter::Deriv(a) => Letter::Theta(a),
        }
    }

    fn act(&self, m: Monomial) -> Option<(i8, Monomial)> {
        match *self {
            Letter::Theta(a) => theta_on_monomial(a, m),
            Letter::Deriv(a) => deriv_on_monomial(a, m),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Theta(a) => write!(f, "th({a})"),
            Letter::Deriv(a) => write!(f, "d({a})"),
        }
    }
}

/// A scalar times a product of generators, read left to right as operator
/// composition (the rightmost letter acts first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub coeff: JetScalar,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(coeff: JetScalar, letters: Vec<Letter>) -> Self {
        Word { coeff, letters }
    }

    pub fn unit(letters: Vec<Letter>) -> Self {
        Word::new(JetScalar::one(), letters)
    }

    /// Symbolic transpose: reverse the word and swap θ̂ ↔ ∂ in every letter;
    /// the scalar is unchanged.
    pub fn transpose(&self) -> Word {
        Word {
            coeff: self.coeff.clone(),
            letters: self.letters.iter().rev().map(Letter::transpose).collect(),
        }
    }

    /// Action of the bare letters on one basis monomial.
    pub fn act(&self, m: Monomial) -> Option<(i8, Monomial)> {
        act_letters(&self.letters, m)
    }

    /// The word applied to a state, without building its matrix.
    pub fn apply(&self, psi: &State) -> Result<State> {
        let sig = psi.sig();
        for l in &self.letters {
            sig.check_index(l.index() as usize)?;
        }
        let mut out = SparseVec::new();
        for (m, c) in psi.terms() {
            if let Some((sign, image)) = self.act(*m) {
                add_signed(&mut out, image, sign, &(&self.coeff * c));
            }
        }
        Ok(State::from_sparse(sig, out))
    }

    pub fn to_operator(&self, sig: AlgebraSignature) -> Result<Operator> {
        for l in &self.letters {
            sig.check_index(l.index() as usize)?;
        }
        let mut op = Operator::zero(sig);
        if self.coeff.is_zero() {
            return Ok(op);
        }
        for_each_action(sig, &self.letters, |m, sign, out| {
            let col = op.cols.entry(m).or_default();
            add_signed(col, out, sign, &self.coeff);
        });
        Ok(op)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "{}*I", self.coeff);
        }
        if !self.coeff.is_one() {
            write!(f, "({})*", self.coeff)?;
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn act_letters(letters: &[Letter], m: Monomial) -> Option<(i8, Monomial)> {
    let mut sign = 1i8;
    let mut cur = m;
    for l in letters.iter().rev() {
        let (s, next) = l.act(cur)?;
        sign *= s;
        cur = next;
    }
    Some((sign, cur))
}

/// Calls `f(input, sign, output)` for every basis monomial the word does not
/// annihilate. Monomials lacking a generator differentiated by the trailing
/// run of derivatives are skipped without evaluation.
fn for_each_action(
    sig: AlgebraSignature,
    letters: &[Letter],
    mut f: impl FnMut(Monomial, i8, Monomial),
) {
    let mut required = 0u32;
    for l in letters.iter().rev() {
        match *l {
            Letter::Deriv(a) if required & (1 << (a - 1)) == 0 => required |= 1 << (a - 1),
            _ => break,
        }
    }
    let full = (sig.dim() - 1) as u32;
    let free = full & !required;
    // walk all submasks of `free`
    let mut sub = free;
    loop {
        let m = Monomial::from_bits(sub | required);
        if let Some((sign, out)) = act_letters(letters, m) {
            f(m, sign, out);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
}

/// A linear operator on Λ_n in the canonical monomial basis.
///
/// Stored column-major (input monomial → output monomial → coefficient) with
/// no zero entries, so structural equality is equality of action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operator {
    sig: AlgebraSignature,
    cols: BTreeMap<Monomial, SparseVec>,
}

impl Operator {
    pub fn zero(sig: AlgebraSignature) -> Self {
        Operator {
            sig,
            cols: BTreeMap::new(),
        }
    }

    /// 1̂.
    pub fn identity(sig: AlgebraSignature) -> Self {
        Operator {
            sig,
            cols: sig
                .basis()
                .map(|m| (m, BTreeMap::from([(m, JetScalar::one())])))
                .collect(),
        }
    }

    /// θ̂^α.
    pub fn theta(sig: AlgebraSignature, alpha: usize) -> Result<Self> {
        let a = sig.check_index(alpha)?;
        Word::unit(vec![Letter::Theta(a)]).to_operator(sig)
    }

    /// ∂/∂θ^α.
    pub fn deriv(sig: AlgebraSignature, alpha: usize) -> Result<Self> {
        let a = sig.check_index(alpha)?;
        Word::unit(vec![Letter::Deriv(a)]).to_operator(sig)
    }

    /// Builds the operator whose action on each basis monomial is `f(m)`.
    pub fn from_action(sig: AlgebraSignature, f: impl Fn(&State) -> Result<State>) -> Result<Self> {
        let mut cols = BTreeMap::new();
        for m in sig.basis() {
            let image = f(&State::monomial(sig, m, JetScalar::one()))?;
            sig.ensure_same(&image.sig())?;
            if !image.is_zero() {
                cols.insert(m, image.into_sparse());
            }
        }
        Ok(Operator { sig, cols })
    }

    /// Builds an operator from `(output, input, coefficient)` triples;
    /// repeated positions are summed.
    pub fn from_entries(
        sig: AlgebraSignature,
        entries: impl IntoIterator<Item = (Monomial, Monomial, JetScalar)>,
    ) -> Result<Self> {
        let mut op = Operator::zero(sig);
        for (out, inp, c) in entries {
            sig.check_monomial(out)?;
            sig.check_monomial(inp)?;
            op.add_entry(out, inp, c);
        }
        Ok(op)
    }

    fn add_entry(&mut self, out: Monomial, inp: Monomial, c: JetScalar) {
        let col = self.cols.entry(inp).or_default();
        add_into(col, out, c);
        if col.is_empty() {
            self.cols.remove(&inp);
        }
    }

    pub fn sig(&self) -> AlgebraSignature {
        self.sig
    }

    /// Matrix element ⟨out| A |in⟩.
    pub fn get(&self, out: Monomial, inp: Monomial) -> JetScalar {
        self.cols
            .get(&inp)
            .and_then(|c| c.get(&out))
            .cloned()
            .unwrap_or_default()
    }

    /// Non-zero entries as `(output, input, coefficient)`, ordered by input.
    pub fn entries(&self) -> impl Iterator<Item = (Monomial, Monomial, &JetScalar)> {
        self.cols
            .iter()
            .flat_map(|(inp, col)| col.iter().map(move |(out, c)| (*out, *inp, c)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.values().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (m, c) in v {
            if let Some(col) = self.cols.get(m) {
                for (o, a) in col {
                    add_into(&mut out, *o, a * c);
                }
            }
        }
        out
    }

    pub fn apply(&self, psi: &State) -> Result<State> {
        self.sig.ensure_same(&psi.sig())?;
        let v: SparseVec = psi.terms().map(|(m, c)| (*m, c.clone())).collect();
        Ok(State::from_sparse(self.sig, self.apply_sparse(&v)))
    }

    /// `self ∘ rhs`: apply `rhs` first.
    pub fn compose(&self, rhs: &Operator) -> Result<Operator> {
        self.compose_with(rhs, Exec::default())
    }

    pub fn compose_with(&self, rhs: &Operator, exec: Exec) -> Result<Operator> {
        self.sig.ensure_same(&rhs.sig)?;
        let exec = if rhs.cols.len() < PAR_MIN_COLUMNS {
            Exec::Sequential
        } else {
            exec
        };
        let cols: Vec<(&Monomial, &SparseVec)> = rhs.cols.iter().collect();
        let images = exec.map_slice(&cols, |(inp, col)| (**inp, self.apply_sparse(col)));
        Ok(Operator {
            sig: self.sig,
            cols: images.into_iter().filter(|(_, c)| !c.is_empty()).collect(),
        })
    }

    pub fn add(&self, rhs: &Operator) -> Result<Operator> {
        self.sig.ensure_same(&rhs.sig)?;
        let mut out = self.clone();
        for (o, i, c) in rhs.entries() {
            out.add_entry(o, i, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Operator) -> Result<Operator> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Operator {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, lambda: &JetScalar) -> Operator {
        self.map_coeffs(|c| lambda * c)
    }

    fn map_coeffs(&self, f: impl Fn(&JetScalar) -> JetScalar) -> Operator {
        let mut out = Operator::zero(self.sig);
        for (o, i, c) in self.entries() {
            out.add_entry(o, i, f(c));
        }
        out
    }

    /// Transpose in GM(Λ_n). With left derivatives the matrix of ∂/∂θ^α is
    /// exactly the transpose of the matrix of θ̂^α, so the generator rules
    /// extend to the plain matrix transpose (no conjugation).
    pub fn transpose(&self) -> Operator {
        let mut out = Operator::zero(self.sig);
        for (o, i, c) in self.entries() {
            out.cols.entry(o).or_default().insert(i, c.clone());
        }
        out
    }

    /// Conjugates the numeric coefficients only.
    pub fn conjugate(&self) -> Operator {
        self.map_coeffs(JetScalar::conj)
    }

    /// `{self, rhs} = self∘rhs + rhs∘self`.
    pub fn anticommutator(&self, rhs: &Operator) -> Result<Operator> {
        self.compose(rhs)?.add(&rhs.compose(self)?)
    }

    /// Equality by action on every basis monomial, independent of the
    /// stored representation.
    pub fn agrees_by_action(&self, other: &Operator) -> bool {
        if self.sig != other.sig {
            return false;
        }
        self.sig.basis().all(|m| {
            let psi = State::monomial(self.sig, m, JetScalar::one());
            self.apply(&psi).ok() == other.apply(&psi).ok()
        })
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (o, i, c) in self.entries() {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "{o} <- {i} : {c}")?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a Operator> for &'a Operator {
    type Output = Operator;

    /// Composition; panics on signature mismatch (see [`Operator::compose`]).
    fn mul(self, rhs: &Operator) -> Operator {
        self.compose(rhs).expect("operator signature mismatch")
    }
}

impl<'a> Add<&'a Operator> for &'a Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        Operator::add(self, rhs).expect("operator signature mismatch")
    }
}

impl<'a> Sub<&'a Operator> for &'a Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        Operator::sub(self, rhs).expect("operator signature mismatch")
    }
}

impl Neg for &Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        Operator::neg(self)
    }
}

/// Σ over the given letter sequences, each with coefficient 1, accumulated
/// in machine integers.
fn integer_word_sum(
    sig: AlgebraSignature,
    words: impl IntoIterator<Item = Vec<Letter>>,
) -> Operator {
    let mut acc: HashMap<(Monomial, Monomial), i64> = HashMap::new();
    for letters in words {
        for_each_action(sig, &letters, |inp, sign, out| {
            *acc.entry((out, inp)).or_default() += sign as i64;
        });
    }
    let mut op = Operator::zero(sig);
    for ((out, inp), v) in acc {
        if v != 0 {
            op.add_entry(out, inp, JetScalar::from_int(v));
        }
    }
    op
}

/// Strictly increasing `k`-subsets of `1..=n`, as index vectors.
pub(crate) fn increasing_multi_indices(n: u8, k: u8) -> Vec<Vec<u8>> {
    fn rec(start: u8, n: u8, k: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k as usize {
            out.push(cur.clone());
            return;
        }
        for a in start..=n {
            cur.push(a);
            rec(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// θ̂^{α_1}…θ̂^{α_k} ∂/∂θ^{α_k}…∂/∂θ^{α_1} for an increasing multi-index.
pub fn number_word(indices: &[u8]) -> Vec<Letter> {
    indices
        .iter()
        .map(|&a| Letter::Theta(a))
        .chain(indices.iter().rev().map(|&a| Letter::Deriv(a)))
        .collect()
}

fn build_projectors(sig: AlgebraSignature) -> Vec<Operator> {
    let n = sig.n_total();
    let mut family: Vec<Option<Operator>> = vec![None; n as usize + 1];
    // running 1̂ − P̂_n − … − P̂_{k+1}
    let mut complement = Operator::identity(sig);
    for k in (0..=n).rev() {
        let words = increasing_multi_indices(n, k)
            .into_iter()
            .map(|ix| number_word(&ix));
        let sum = integer_word_sum(sig, words);
        let pk = sum.compose(&complement).expect("same signature");
        complement = complement.sub(&pk).expect("same signature");
        family[k as usize] = Some(pk);
    }
    family.into_iter().map(Option::unwrap).collect()
}

type ProjectorCache = Mutex<HashMap<AlgebraSignature, Arc<Vec<Operator>>>>;

/// The family P̂_0 … P̂_n, built by the descending word construction:
/// P̂_n = θ̂^1…θ̂^n ∂_n…∂_1 and
/// P̂_k = [Σ_{α_1<…<α_k} θ̂^{α_1}…θ̂^{α_k} ∂_{α_k}…∂_{α_1}] (1̂ − Σ_{j>k} P̂_j).
///
/// Cached per signature.
pub fn projectors(sig: AlgebraSignature) -> Arc<Vec<Operator>> {
    static CACHE: OnceLock<ProjectorCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&sig) {
        return Arc::clone(p);
    }
    let built = Arc::new(build_projectors(sig));
    cache.lock().unwrap().entry(sig).or_insert(built).clone()
}

/// P̂_k, the projector onto rank-`k` monomials.
pub fn projector(sig: AlgebraSignature, k: usize) -> Result<Operator> {
    let k = sig.check_rank(k)?;
    Ok(projectors(sig)[k as usize].clone())
}

/// The rank filter of [`crate::grassmann::rank_project_oracle`] as an operator.
pub fn rank_oracle_operator(sig: AlgebraSignature, k: usize) -> Result<Operator> {
    sig.check_rank(k)?;
    Operator::from_action(sig, |psi| crate::grassmann::rank_project_oracle(k, psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::grassmann::{derivative, left_mult_theta};
    use crate::scalar::cq_int;

    fn sig(n: usize) -> AlgebraSignature {
        AlgebraSignature::full(n).unwrap()
    }

    fn mono(ix: &[u8]) -> Monomial {
        Monomial::from_indices(ix).unwrap()
    }

    #[test]
    fn generators_match_state_maps() {
        let s = sig(3);
        for a in 1..=3 {
            let th = Operator::theta(s, a).unwrap();
            let d = Operator::deriv(s, a).unwrap();
            let th_ref = Operator::from_action(s, |p| left_mult_theta(a, p)).unwrap();
            let d_ref = Operator::from_action(s, |p| derivative(a, p)).unwrap();
            assert_eq!(th, th_ref);
            assert_eq!(d, d_ref);
        }
        assert!(Operator::theta(s, 4).is_err());
        assert!(Operator::deriv(s, 0).is_err());
    }

    #[test]
    fn generator_examples() {
        let s = sig(2);
        let one = State::one(s);
        let t1 = State::generator(s, 1, JetScalar::one()).unwrap();
        assert_eq!(Operator::theta(s, 1).unwrap().apply(&one).unwrap(), t1);
        assert_eq!(Operator::identity(s).apply(&t1).unwrap(), t1);
        let t12 = State::monomial(s, mono(&[1, 2]), JetScalar::one());
        assert_eq!(
            Operator::deriv(s, 2).unwrap().apply(&t12).unwrap(),
            t1.neg()
        );
    }

    #[test]
    fn compose_examples() {
        let s = sig(2);
        let th1 = Operator::theta(s, 1).unwrap();
        let d1 = Operator::deriv(s, 1).unwrap();
        assert_eq!(th1.anticommutator(&d1).unwrap(), Operator::identity(s));
        assert!(th1.scale(&JetScalar::zero()).is_zero());
        assert!((&th1 * &th1).is_zero());
        let other = Operator::identity(sig(3));
        assert!(matches!(
            th1.compose(&other),
            Err(Error::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn apply_example_theta2_d1() {
        let s = sig(2);
        let op = &Operator::theta(s, 2).unwrap() * &Operator::deriv(s, 1).unwrap();
        let xi1 = JetScalar::from_int(3);
        let xi2 = JetScalar::from_int(7);
        let psi = State::linear(s, &[xi1.clone(), xi2]).unwrap();
        // direct evaluation through the state maps
        let expected = left_mult_theta(2, &derivative(1, &psi).unwrap()).unwrap();
        assert_eq!(op.apply(&psi).unwrap(), expected);
        assert_eq!(expected, State::generator(s, 2, xi1).unwrap());
        assert!(Operator::zero(s).apply(&psi).unwrap().is_zero());
    }

    #[test]
    fn transpose_examples() {
        let s = sig(2);
        let th1 = Operator::theta(s, 1).unwrap();
        assert_eq!(th1.transpose(), Operator::deriv(s, 1).unwrap());
        let w = Word::unit(vec![Letter::Theta(1), Letter::Deriv(2)]);
        assert_eq!(
            w.transpose(),
            Word::unit(vec![Letter::Theta(2), Letter::Deriv(1)])
        );
        assert_eq!(
            w.to_operator(s).unwrap().transpose(),
            w.transpose().to_operator(s).unwrap()
        );
        assert_eq!(Operator::identity(s).transpose(), Operator::identity(s));
    }

    #[test]
    fn conjugate_examples() {
        let s = sig(2);
        let th1 = Operator::theta(s, 1).unwrap();
        let a = th1.scale(&JetScalar::i());
        assert_eq!(
            a.conjugate(),
            th1.scale(&JetScalar::from_int(-1)).scale(&JetScalar::i())
        );
        assert_eq!(th1.conjugate(), th1);
        let b = th1.scale(&JetScalar::from_cq(cq_int(2, 5)));
        assert_eq!(b.conjugate().conjugate(), b);
    }

    #[test]
    fn projector_examples() {
        let s = sig(2);
        let p2 = projector(s, 2).unwrap();
        let t12 = State::monomial(s, mono(&[1, 2]), JetScalar::one());
        let t1 = State::generator(s, 1, JetScalar::one()).unwrap();
        assert_eq!(p2.apply(&t12).unwrap(), t12);
        assert!(p2.apply(&t1).unwrap().is_zero());
        let total = (0..=2).fold(Operator::zero(s), |acc, k| &acc + &projector(s, k).unwrap());
        assert_eq!(total, Operator::identity(s));
        for a in 1..=2 {
            let th = Operator::theta(s, a).unwrap();
            assert_eq!(
                &projector(s, 1).unwrap() * &th,
                &th * &projector(s, 0).unwrap()
            );
        }
        assert!(projector(s, 3).is_err());
    }

    #[test]
    fn top_projector_is_the_single_word() {
        for n in 1..=5u8 {
            let s = sig(n as usize);
            let all: Vec<u8> = (1..=n).collect();
            let word = Word::unit(number_word(&all)).to_operator(s).unwrap();
            assert_eq!(word, projector(s, n as usize).unwrap());
        }
    }

    #[test]
    fn projectors_match_rank_oracle() {
        for n in 1..=6 {
            let s = sig(n);
            for k in 0..=n {
                assert_eq!(
                    projector(s, k).unwrap(),
                    rank_oracle_operator(s, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn parallel_and_sequential_composition_agree() {
        let s = sig(7);
        let a = &Operator::theta(s, 3).unwrap() * &Operator::deriv(s, 5).unwrap();
        let b = &projector(s, 2).unwrap() + &Operator::theta(s, 1).unwrap();
        assert_eq!(
            a.compose_with(&b, Exec::Sequential).unwrap(),
            a.compose_with(&b, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn multi_indices_are_increasing() {
        let ix = increasing_multi_indices(4, 2);
        assert_eq!(ix.len(), 6);
        assert!(ix.iter().all(|v| v[0] < v[1]));
        assert_eq!(increasing_multi_indices(3, 0), vec![Vec::<u8>::new()]);
    }
}
