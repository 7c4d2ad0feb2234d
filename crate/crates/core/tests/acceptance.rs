//! Acceptance checks, one PASS/FAIL line per criterion. Oracles here are
//! written independently of the library code paths they check.

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use supermat::clifford::{check_anticommutation, embed_gamma, pauli_rep, vector_coords, GammaRep};
use supermat::expr::parse;
use supermat::grassmann::{AlgebraSignature, Monomial, State};
use supermat::json::{from_json, to_json, AlgebraObject};
use supermat::matrix_iso::{embed_matrix, extract_matrix, MatrixDense};
use supermat::operator::{projector, Letter, Operator};
use supermat::random;
use supermat::scalar::{EpsId, JetScalar, Ring};
use supermat::susy::{
    check_duality, delta_coords, make_params, supertranslate_superfield, transform_coefficients,
    transform_derivatives, transform_generators, MixEntry, MixParams, DEFAULT_MAX_DEGREE,
};
use supermat::symbolic::SymPoly;

struct Outcome {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }
}

fn sig(n: usize, nd: usize) -> AlgebraSignature {
    AlgebraSignature::new(n, nd).unwrap()
}

// ---- oracles -------------------------------------------------------------

/// θ^β ↦ Σ_α m[α][β] θ^α on rank one, zero elsewhere.
fn embed_oracle(s: AlgebraSignature, m: &[Vec<JetScalar>]) -> Operator {
    let mut entries = Vec::new();
    for (a, row) in m.iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            entries.push((
                Monomial::generator(a as u8 + 1),
                Monomial::generator(b as u8 + 1),
                c.clone(),
            ));
        }
    }
    Operator::from_entries(s, entries).unwrap()
}

fn dense(m: &MatrixDense) -> Vec<Vec<JetScalar>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).clone()).collect())
        .collect()
}

fn dense_mul(a: &[Vec<JetScalar>], b: &[Vec<JetScalar>]) -> Vec<Vec<JetScalar>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = JetScalar::zero();
                    for (k, row) in b.iter().enumerate() {
                        acc += &(&a[i][k] * &row[j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn rank_oracle(s: AlgebraSignature, k: u32) -> Operator {
    let entries = (0..s.dim() as u32)
        .filter(|b| b.count_ones() == k)
        .map(|b| {
            (
                Monomial::from_bits(b),
                Monomial::from_bits(b),
                JetScalar::one(),
            )
        });
    Operator::from_entries(s, entries).unwrap()
}

/// Σ_{a ≤ n_D} θ^a∂_a restricted to rank one: identity on span{θ^a'}.
fn primed_unit_oracle(s: AlgebraSignature) -> Operator {
    let entries = (1..=s.n_d()).map(|a| {
        (
            Monomial::generator(a),
            Monomial::generator(a),
            JetScalar::one(),
        )
    });
    Operator::from_entries(s, entries).unwrap()
}

/// Grassmann monomials as sorted index lists; signs by counting.
fn letter_on(letter: &Letter, m: &[u8]) -> Option<(i64, Vec<u8>)> {
    let (a, insert) = match *letter {
        Letter::Theta(a) => (a, true),
        Letter::Deriv(a) => (a, false),
    };
    let below = m.iter().filter(|&&x| x < a).count();
    let sign = if below % 2 == 0 { 1 } else { -1 };
    let present = m.contains(&a);
    if insert == present {
        return None;
    }
    let mut out: Vec<u8> = m.iter().copied().filter(|&x| x != a).collect();
    if insert {
        out.insert(below, a);
    }
    Some((sign, out))
}

fn bits(m: &[u8]) -> u32 {
    m.iter().fold(0, |acc, a| acc | 1 << (a - 1))
}

/// Dense matrix of a word built letter by letter on every basis monomial.
fn word_matrix(letters: &[Letter], coeff: &JetScalar, n: u8) -> Vec<Vec<JetScalar>> {
    let dim = 1usize << n;
    let mut m = vec![vec![JetScalar::zero(); dim]; dim];
    for col in 0..dim as u32 {
        let mut mono: Vec<u8> = (1..=n).filter(|a| col & (1 << (a - 1)) != 0).collect();
        let mut sign = 1;
        let mut alive = true;
        for l in letters.iter().rev() {
            match letter_on(l, &mono) {
                Some((s, next)) => {
                    sign *= s;
                    mono = next;
                }
                None => {
                    alive = false;
                    break;
                }
            }
        }
        if alive {
            m[bits(&mono) as usize][col as usize] = coeff * &JetScalar::from_int(sign);
        }
    }
    m
}

fn operator_from_dense(s: AlgebraSignature, m: &[Vec<JetScalar>]) -> Operator {
    let mut entries = Vec::new();
    for (r, row) in m.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            entries.push((
                Monomial::from_bits(r as u32),
                Monomial::from_bits(c as u32),
                v.clone(),
            ));
        }
    }
    Operator::from_entries(s, entries).unwrap()
}

fn transpose_dense(m: &[Vec<JetScalar>]) -> Vec<Vec<JetScalar>> {
    let n = m.len();
    (0..n)
        .map(|i| (0..n).map(|j| m[j][i].clone()).collect())
        .collect()
}

fn dirac_matrices() -> Vec<MatrixDense> {
    let (z, o, i) = (JetScalar::zero(), JetScalar::one(), JetScalar::i());
    let m = |rows: [[&JetScalar; 4]; 4]| {
        MatrixDense::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| (*x).clone()).collect())
                .collect(),
        )
        .unwrap()
    };
    let (no, ni) = (-o.clone(), -i.clone());
    vec![
        m([
            [&o, &z, &z, &z],
            [&z, &o, &z, &z],
            [&z, &z, &no, &z],
            [&z, &z, &z, &no],
        ]),
        m([
            [&z, &z, &z, &o],
            [&z, &z, &o, &z],
            [&z, &no, &z, &z],
            [&no, &z, &z, &z],
        ]),
        m([
            [&z, &z, &z, &ni],
            [&z, &z, &i, &z],
            [&z, &i, &z, &z],
            [&ni, &z, &z, &z],
        ]),
        m([
            [&z, &z, &o, &z],
            [&z, &z, &z, &no],
            [&no, &z, &z, &z],
            [&z, &o, &z, &z],
        ]),
    ]
}

/// Closed forms for δx_1..δx_3, transcribed independently of the library.
fn closed_form<R: Ring>(xp: &[R], x: &[R], e31: R, e32: R) -> Vec<R> {
    let i = R::from_jet(&JetScalar::i());
    let s = |a: usize, b: usize| {
        xp[a - 1].clone() * x[b - 1].clone() + xp[b - 1].clone() * x[a - 1].clone()
    };
    vec![
        e31.clone() * s(1, 3) - e32.clone() * s(2, 3),
        i.clone() * e31.clone() * s(1, 3) + i * e32.clone() * s(2, 3),
        R::zero() - e31 * s(2, 3) - e32 * s(1, 3),
    ]
}

// ---- criteria ------------------------------------------------------------

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    for n in [2usize, 3, 4, 6, 8] {
        let s = sig(n, n);
        let mut rng = random::rng(1000 + n as u64);
        for _ in 0..100 {
            let a = random::matrix(&mut rng, n);
            let b = random::matrix(&mut rng, n);
            let lambda = random::complex_scalar(&mut rng);
            let (da, db) = (dense(&a), dense(&b));
            let ea = embed_matrix(s, &a).unwrap();
            let eb = embed_matrix(s, &b).unwrap();
            out.check(ea == embed_oracle(s, &da), || {
                format!("n={n}: embed(A) vs oracle")
            });
            let ab = dense_mul(&da, &db);
            let e_ab = embed_matrix(s, &MatrixDense::from_rows(ab.clone()).unwrap()).unwrap();
            out.check(e_ab == ea.compose(&eb).unwrap(), || {
                format!("n={n}: embed(AB)")
            });
            out.check(e_ab == embed_oracle(s, &ab), || {
                format!("n={n}: embed(AB) vs oracle")
            });
            let sum: Vec<Vec<JetScalar>> = da
                .iter()
                .zip(&db)
                .map(|(r, q)| r.iter().zip(q).map(|(x, y)| x + y).collect())
                .collect();
            let e_sum = embed_matrix(s, &MatrixDense::from_rows(sum).unwrap()).unwrap();
            out.check(e_sum == ea.add(&eb).unwrap(), || {
                format!("n={n}: embed(A+B)")
            });
            let scaled: Vec<Vec<JetScalar>> = da
                .iter()
                .map(|r| r.iter().map(|x| &lambda * x).collect())
                .collect();
            let e_scaled = embed_matrix(s, &MatrixDense::from_rows(scaled).unwrap()).unwrap();
            out.check(e_scaled == ea.scale(&lambda), || {
                format!("n={n}: embed(λA)")
            });
            let e_t =
                embed_matrix(s, &MatrixDense::from_rows(transpose_dense(&da)).unwrap()).unwrap();
            out.check(e_t == ea.transpose(), || format!("n={n}: embed(Aᵀ)"));
            let conj: Vec<Vec<JetScalar>> = da
                .iter()
                .map(|r| r.iter().map(JetScalar::conj).collect())
                .collect();
            let e_c = embed_matrix(s, &MatrixDense::from_rows(conj).unwrap()).unwrap();
            out.check(e_c == ea.conjugate(), || format!("n={n}: embed(conj A)"));
            out.check(extract_matrix(&ea).unwrap() == a, || {
                format!("n={n}: extract∘embed")
            });
        }
    }
    let secs = start.elapsed().as_secs_f64();
    out.check(secs < 60.0, || format!("took {secs:.1}s"));
    out.notes.push(format!("{secs:.1}s"));
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    for n in 1..=6usize {
        let s = sig(n, n);
        let ps: Vec<Operator> = (0..=n).map(|k| projector(s, k).unwrap()).collect();
        let mut total = Operator::zero(s);
        for (k, p) in ps.iter().enumerate() {
            out.check(*p == rank_oracle(s, k as u32), || {
                format!("n={n}: P{k} vs rank oracle")
            });
            out.check(p.transpose() == *p, || format!("n={n}: P{k} symmetric"));
            for (j, q) in ps.iter().enumerate() {
                let expected = if j == k { p.clone() } else { Operator::zero(s) };
                out.check(p.compose(q).unwrap() == expected, || {
                    format!("n={n}: P{k}P{j}")
                });
            }
            total = total.add(p).unwrap();
        }
        out.check(total == Operator::identity(s), || {
            format!("n={n}: completeness")
        });
        for a in 1..=n {
            let th = Operator::theta(s, a).unwrap();
            out.check(
                ps[1].compose(&th).unwrap() == th.compose(&ps[0]).unwrap(),
                || format!("n={n}: P1 θ{a} = θ{a} P0"),
            );
        }
    }
    out
}

fn clifford_case(out: &mut Outcome, rep: &GammaRep, n: usize) {
    let nd = rep.dim();
    let s = sig(n, nd);
    let gammas = embed_gamma(rep, s).unwrap();
    let unit = primed_unit_oracle(s);
    let p1 = projector(s, 1).unwrap();
    let mut full_agree = 0;
    let mut pairs = 0;
    for m in 0..gammas.len() {
        // action on the primed rank-1 sector reproduces the matrix
        for b in 1..=nd as u8 {
            let image = gammas[m]
                .apply(&State::monomial(
                    s,
                    Monomial::generator(b),
                    JetScalar::one(),
                ))
                .unwrap();
            let expected = State::from_terms(
                s,
                (1..=nd as u8).map(|a| {
                    (
                        Monomial::generator(a),
                        rep.gammas()[m].get(a as usize - 1, b as usize - 1).clone(),
                    )
                }),
            )
            .unwrap();
            out.check(image == expected, || format!("n={n}: Γ{} on θ{b}", m + 1));
        }
        for k in m..gammas.len() {
            let lhs = gammas[m].anticommutator(&gammas[k]).unwrap();
            let eta = if m == k {
                2 * rep.metric()[m] as i64
            } else {
                0
            };
            let eta = JetScalar::from_int(eta);
            out.check(lhs == unit.scale(&eta), || {
                format!("n={n}: {{Γ{}, Γ{}}}", m + 1, k + 1)
            });
            pairs += 1;
            if lhs == p1.scale(&eta) {
                full_agree += 1;
            }
        }
        for bits in 0..s.dim() as u32 {
            let mono = Monomial::from_bits(bits);
            let outside = mono.rank() != 1 || (nd as u8 + 1..=n as u8).any(|b| mono.contains(b));
            if outside {
                let image = gammas[m]
                    .apply(&State::monomial(s, mono, JetScalar::one()))
                    .unwrap();
                out.check(image.is_zero(), || {
                    format!("n={n}: Γ{} kills {mono}", m + 1)
                });
            }
        }
    }
    let report = check_anticommutation(&gammas, rep.metric(), s).unwrap();
    out.check(report.passed(), || {
        format!("n={n}: library anticommutation report")
    });
    if n > nd {
        out.notes.push(format!(
            "n={n}, n_D={nd}: RHS is the primed-sector unit; {full_agree}/{pairs} pairs also match 2η·P1 of the full algebra"
        ));
    }
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let pauli = pauli_rep();
    for n in [2, 3, 4] {
        clifford_case(&mut out, &pauli, n);
    }
    let dirac = GammaRep::new(dirac_matrices(), None, vec![1, -1, -1, -1]).unwrap();
    for n in [4, 5] {
        clifford_case(&mut out, &dirac, n);
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    // reference expansions written in the canonical ASCII ordering:
    // ξ'_1ξ_1 − ξ'_2ξ_2,  i(ξ'_1ξ_1 + ξ'_2ξ_2),  −(ξ'_1ξ_2 + ξ'_2ξ_1)
    let reference = [
        "xi'1*xi1 - xi'2*xi2",
        "i*xi'1*xi1 + i*xi'2*xi2",
        "-xi'1*xi2 - xi'2*xi1",
    ];
    let xp = [SymPoly::xi_prime(1), SymPoly::xi_prime(2)];
    let x = [SymPoly::xi(1), SymPoly::xi(2)];
    let coords = vector_coords(&xp, &x, &pauli_rep()).unwrap();
    for (m, (c, p)) in coords.iter().zip(reference).enumerate() {
        let text = c.to_string();
        out.check(text == p, || {
            format!("x{}: got `{text}`, expected `{p}`", m + 1)
        });
    }
    out
}

fn two_unit_params() -> MixParams {
    make_params(sig(3, 2), &[MixEntry::symbol(1, 3), MixEntry::symbol(2, 3)]).unwrap()
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let s = sig(3, 2);
    let rep = pauli_rep();
    let params = two_unit_params();
    let (e31, e32) = (EpsId::new(1, 3), EpsId::new(2, 3));

    // (a) symbolic
    let xp: Vec<SymPoly> = (1..=3).map(SymPoly::xi_prime).collect();
    let x: Vec<SymPoly> = (1..=3).map(SymPoly::xi).collect();
    let lhs = delta_coords(&xp, &x, &params, &rep).unwrap();
    let rhs = closed_form(&xp, &x, SymPoly::eps(e31), SymPoly::eps(e32));
    out.check(lhs == rhs, || "symbolic δx".into());

    // (a) numeric
    let mut rng = random::rng(5);
    for _ in 0..1000 {
        let p = random::mix_params(&mut rng, s);
        let xp: Vec<JetScalar> = (0..3).map(|_| random::complex_scalar(&mut rng)).collect();
        let x: Vec<JetScalar> = (0..3).map(|_| random::complex_scalar(&mut rng)).collect();
        let lhs = delta_coords(&xp, &x, &p, &rep).unwrap();
        let rhs = closed_form(&xp, &x, p.eps(1, 3), p.eps(2, 3));
        out.check(lhs == rhs, || format!("numeric δx for {xp:?} {x:?}"));
    }

    // (b) duality, then the negative case
    let gens = transform_generators(&params);
    let derivs = transform_derivatives(&params);
    for a in 1..=3u8 {
        for b in 1..=3u8 {
            let v = derivs[&a].apply(&gens[&b]).unwrap();
            let expected = if a == b {
                State::one(s)
            } else {
                State::zero(s)
            };
            out.check(v == expected, || format!("∂̃{a} θ̃{b} = {v}"));
        }
    }
    out.check(check_duality(&params).holds(), || {
        "library duality report".into()
    });
    let bad = MixParams::unconstrained_for_negative_check(s, &[(1, 3), (2, 3)]).unwrap();
    let bad_gens = transform_generators(&bad);
    let bad_derivs = transform_derivatives(&bad);
    for (a, g) in [(1u8, 3u8), (3, 1), (2, 3), (3, 2)] {
        let v = bad_derivs[&a].apply(&bad_gens[&g]).unwrap();
        let (p, q) = if a < g { (a, g) } else { (g, a) };
        let cross = JetScalar::eps(EpsId::new(p, q)) + JetScalar::eps(EpsId::new(q, p));
        out.check(v == State::monomial(s, Monomial::UNIT, cross), || {
            format!("unconstrained ∂̃{a} θ̃{g} = {v}")
        });
    }
    out.check(!check_duality(&bad).holds(), || {
        "negative case passed".into()
    });

    // (c) invariance of Σ ξ θ
    let mut rng = random::rng(6);
    for _ in 0..200 {
        let p = random::mix_params(&mut rng, s);
        let xi: Vec<JetScalar> = (0..3).map(|_| random::complex_scalar(&mut rng)).collect();
        let (new, _) = transform_coefficients(&xi, &p).unwrap();
        let g = transform_generators(&p);
        let mut lhs = State::zero(s);
        for a in 1..=3u8 {
            lhs = lhs.add(&g[&a].scale(&new[a as usize - 1])).unwrap();
        }
        let rhs = State::from_terms(
            s,
            (1..=3u8).map(|a| (Monomial::generator(a), xi[a as usize - 1].clone())),
        )
        .unwrap();
        out.check(lhs == rhs, || format!("invariance for {xi:?}"));
    }

    // (d) supertranslation, two paths
    let mut rng = random::rng(7);
    for _ in 0..100 {
        let p = random::mix_params(&mut rng, s);
        let xp: Vec<JetScalar> = (0..3).map(|_| random::complex_scalar(&mut rng)).collect();
        let x: Vec<JetScalar> = (0..3).map(|_| random::complex_scalar(&mut rng)).collect();
        let degree = rng.gen_range(0..=DEFAULT_MAX_DEGREE);
        let f = random::superfield(&mut rng, s, 3, degree);
        let (_, report) =
            supertranslate_superfield(&f, &xp, &x, &p, &rep, DEFAULT_MAX_DEGREE).unwrap();
        out.check(report.consistent(), || format!("supertranslation of {f}"));
    }
    let secs = start.elapsed().as_secs_f64();
    out.check(secs < 30.0, || format!("took {secs:.1}s"));
    out.notes.push(format!("{secs:.1}s"));
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = random::rng(8);
    for _ in 0..500 {
        let n: u8 = rng.gen_range(1..=5);
        let s = sig(n as usize, n as usize);
        let w = random::word(&mut rng, n, 6);
        let matrix_t = transpose_dense(&word_matrix(&w.letters, &w.coeff, n));
        let symbolic = w.transpose().to_operator(s).unwrap();
        out.check(symbolic == operator_from_dense(s, &matrix_t), || {
            format!("n={n}: {w}")
        });
        out.check(w.to_operator(s).unwrap().transpose() == symbolic, || {
            format!("n={n}: operator transpose of {w}")
        });
    }
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = random::rng(9);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6usize);
        let s = sig(n, rng.gen_range(0..=n));
        let e = random::expression(&mut rng, s, 4);
        let text = e.to_string();
        match parse(&text, s) {
            Ok(back) => {
                out.check(back == e, || format!("AST changed for `{text}`"));
                out.check(back.to_string() == text, || {
                    format!("print changed for `{text}`")
                });
            }
            Err(err) => out.check(false, || format!("`{text}` failed to parse: {err}")),
        }
    }
    for k in 0..100 {
        let n = rng.gen_range(1..=6usize);
        let s = sig(n, rng.gen_range(0..=n));
        let obj = if k % 2 == 0 {
            AlgebraObject::Operator(random::operator(&mut rng, s, 12))
        } else {
            AlgebraObject::State(random::state(&mut rng, s, 12))
        };
        let text = to_json(&obj);
        let back = from_json(&text);
        out.check(back.as_ref().ok() == Some(&obj), || {
            format!("JSON round trip: {text}")
        });
        out.check(back.map(|b| to_json(&b) == text).unwrap_or(false), || {
            "JSON text not stable".into()
        });
    }
    out
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "matrix isomorphism, n ∈ {2,3,4,6,8}, 100 pairs each, < 60 s",
            criterion_1,
        ),
        ("rank projectors, n = 1..6, exhaustive", criterion_2),
        (
            "Clifford embedding, Pauli n ∈ {2,3,4}, Dirac n ∈ {4,5}",
            criterion_3,
        ),
        (
            "bilinear coordinate expansions match the reference expansions",
            criterion_4,
        ),
        (
            "mixing transformation: δx, duality, invariance, supertranslation, < 30 s",
            criterion_5,
        ),
        ("transpose coherence on 500 random words", criterion_6),
        ("parser and JSON round trips", criterion_7),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let pass = o.failures.is_empty();
        all &= pass;
        let notes = if o.notes.is_empty() {
            String::new()
        } else {
            format!("; {}", o.notes.join("; "))
        };
        println!(
            "criterion {} {}: {name} ({} checks, {} failures{notes})",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            o.checks,
            o.failures.len()
        );
        for f in o.failures.iter().filter(|f| !f.is_empty()) {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
