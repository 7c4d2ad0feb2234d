//! Seeded generators for exact random test data.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{Expr, Literal};
use crate::grassmann::{AlgebraSignature, Monomial, State};
use crate::matrix_iso::MatrixDense;
use crate::operator::{Letter, Operator, Word};
use crate::scalar::{cq, rational, EpsId, JetScalar, Rational};
use crate::susy::{make_params, MixEntry, MixParams, Superfield};

pub type TrialRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` within `stream`, derived from the master seed.
pub fn trial_seed(master: u64, stream: u64, index: u64) -> u64 {
    splitmix(splitmix(master ^ splitmix(stream)).wrapping_add(index))
}

/// p/q with |p| ≤ 9 and 1 ≤ q ≤ 6.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    rational(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

fn maybe_zero(rng: &mut impl Rng) -> Rational {
    if rng.gen_ratio(1, 3) {
        rational(0, 1)
    } else {
        small_rational(rng)
    }
}

/// A complex rational whose parts are each zero a third of the time.
pub fn complex_scalar(rng: &mut impl Rng) -> JetScalar {
    let re = maybe_zero(rng);
    let im = maybe_zero(rng);
    JetScalar::from_cq(cq(re, im))
}

/// A complex scalar plus, sometimes, first-order terms in the given units.
pub fn jet_scalar(rng: &mut impl Rng, units: &[EpsId]) -> JetScalar {
    let mut s = complex_scalar(rng);
    for id in units {
        if rng.gen_ratio(1, 3) {
            s += &JetScalar::eps_scaled(*id, complex_scalar(rng).body().clone());
        }
    }
    s
}

/// Every (primed, additional) unit of the signature.
pub fn mixing_units(sig: AlgebraSignature) -> Vec<EpsId> {
    sig.primed()
        .flat_map(|a| sig.additional().map(move |b| EpsId::new(a, b)))
        .collect()
}

pub fn matrix(rng: &mut impl Rng, n: usize) -> MatrixDense {
    let entries: Vec<Vec<JetScalar>> = (0..n)
        .map(|_| (0..n).map(|_| complex_scalar(rng)).collect())
        .collect();
    MatrixDense::from_rows(entries).expect("square")
}

pub fn state(rng: &mut impl Rng, sig: AlgebraSignature, max_terms: usize) -> State {
    let units = mixing_units(sig);
    let terms: Vec<_> = (0..rng.gen_range(0..=max_terms))
        .map(|_| {
            let m = Monomial::from_bits(rng.gen_range(0..sig.dim() as u32));
            (m, jet_scalar(rng, &units))
        })
        .collect();
    State::from_terms(sig, terms).expect("in range")
}

pub fn operator(rng: &mut impl Rng, sig: AlgebraSignature, max_terms: usize) -> Operator {
    let units = mixing_units(sig);
    let d = sig.dim() as u32;
    let entries: Vec<_> = (0..rng.gen_range(0..=max_terms))
        .map(|_| {
            let out = Monomial::from_bits(rng.gen_range(0..d));
            let inp = Monomial::from_bits(rng.gen_range(0..d));
            (out, inp, jet_scalar(rng, &units))
        })
        .collect();
    Operator::from_entries(sig, entries).expect("in range")
}

/// A word of 1..=max_len letters over generators 1..=n with a random
/// coefficient.
pub fn word(rng: &mut impl Rng, n: u8, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    let letters = (0..len)
        .map(|_| {
            let a = rng.gen_range(1..=n);
            if rng.gen_bool(0.5) {
                Letter::Theta(a)
            } else {
                Letter::Deriv(a)
            }
        })
        .collect();
    Word::new(complex_scalar(rng), letters)
}

/// Mixing parameters where each pair is absent, a unit, or a scaled unit.
pub fn mix_params(rng: &mut impl Rng, sig: AlgebraSignature) -> MixParams {
    let mut entries = Vec::new();
    for id in mixing_units(sig) {
        let (upper, lower) = if rng.gen_bool(0.5) {
            (id.upper, id.lower)
        } else {
            (id.lower, id.upper)
        };
        match rng.gen_range(0..4) {
            0 => {}
            1 => entries.push(MixEntry::symbol(upper, lower)),
            _ => {
                let mut r = small_rational(rng);
                if r == rational(0, 1) {
                    r = rational(1, 1);
                }
                entries.push(MixEntry::scaled(upper, lower, r));
            }
        }
    }
    make_params(sig, &entries).expect("generated entries are valid")
}

/// A superfield over `n_x` even coordinates and the primed generators, with
/// every term of total degree at most `max_degree`.
pub fn superfield(
    rng: &mut impl Rng,
    sig: AlgebraSignature,
    n_x: usize,
    max_degree: u32,
) -> Superfield {
    let primed: Vec<u8> = sig.primed().collect();
    let mut f = Superfield::zero(sig, n_x);
    for _ in 0..rng.gen_range(1..=5) {
        let degree = rng.gen_range(0..=max_degree);
        let rank = rng.gen_range(0..=degree.min(primed.len() as u32));
        let mut gens = primed.clone();
        gens.shuffle(rng);
        let mono = Monomial::from_indices(&gens[..rank as usize]).expect("distinct");
        let mut exps = vec![0u32; n_x];
        for _ in 0..degree - rank {
            exps[rng.gen_range(0..n_x)] += 1;
        }
        let t = Superfield::term(sig, &exps, mono, complex_scalar(rng)).expect("in range");
        f = f.add(&t).expect("same shape");
    }
    f
}

fn literal(rng: &mut impl Rng) -> Literal {
    let value = rational(rng.gen_range(0..=12), rng.gen_range(1..=5));
    Literal {
        value,
        imaginary: rng.gen_ratio(1, 4),
    }
}

/// A random expression tree in the shape the parser produces. Operator,
/// state and scalar nodes are mixed freely, so the result need not
/// evaluate.
pub fn expression(rng: &mut impl Rng, sig: AlgebraSignature, depth: u32) -> Expr {
    let n = sig.n_total();
    if depth == 0 || rng.gen_ratio(1, 3) {
        return match rng.gen_range(0..8) {
            0 => Expr::Scalar(literal(rng)),
            1 => Expr::Theta(rng.gen_range(1..=n)),
            2 => Expr::Deriv(rng.gen_range(1..=n)),
            3 => Expr::Projector(rng.gen_range(0..=n)),
            4 => Expr::Identity,
            5 => Expr::Vacuum,
            6 => Expr::Eps(rng.gen_range(1..=n), rng.gen_range(1..=n)),
            _ => Expr::Scalar(Literal::imag(rational(1, 1))),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..9) {
        0 => {
            let k = rng.gen_range(1..=3);
            let mut terms: Vec<_> = (0..k)
                .map(|_| (rng.gen_bool(0.4), expression(rng, sig, d)))
                .collect();
            if k == 1 {
                terms[0].0 = true;
            }
            Expr::Sum(terms)
        }
        1 | 2 => Expr::Product(
            (0..rng.gen_range(2..=3))
                .map(|_| expression(rng, sig, d))
                .collect(),
        ),
        3 => Expr::Scale(literal(rng), Box::new(expression(rng, sig, d))),
        4 => Expr::Transpose(Box::new(expression(rng, sig, d))),
        5 => Expr::Conjugate(Box::new(expression(rng, sig, d))),
        6 => Expr::Apply(
            Box::new(expression(rng, sig, d)),
            Box::new(expression(rng, sig, d)),
        ),
        7 => {
            let len = rng.gen_range(1..=n as usize);
            let items = (0..len).map(|_| expression(rng, sig, d.min(1))).collect();
            if rng.gen_bool(0.5) {
                Expr::Column(items)
            } else {
                Expr::Row(items)
            }
        }
        _ => {
            let k = rng.gen_range(1..=n.min(3) as usize);
            Expr::Matrix(
                (0..k)
                    .map(|_| (0..k).map(|_| expression(rng, sig, d.min(1))).collect())
                    .collect(),
            )
        }
    }
}
