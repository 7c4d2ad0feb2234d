//! Randomized and exhaustive verification suites.
//!
//! Every trial draws its data from a seed derived from the master seed, so a
//! reported failure can be replayed from its own record with [`replay`].

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::clifford::{check_anticommutation, embed_gamma, pauli_rep, GammaRep};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::expr::Expr;
use crate::grassmann::{AlgebraSignature, State};
use crate::matrix_iso::{embed_matrix, extract_matrix, MatrixDense};
use crate::operator::{projector, projectors, rank_oracle_operator, Operator};
use crate::random;
use crate::scalar::JetScalar;
use crate::susy::{
    check_duality, delta_coords, delta_coords_closed_form, expand_in_transformed_basis,
    linear_state, supertranslate_superfield, transform_coefficients, MixParams, DEFAULT_MAX_DEGREE,
};
use crate::symbolic::SymPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Iso,
    Projectors,
    Clifford,
    Susy,
    Transpose,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Iso => "iso",
            Suite::Projectors => "projectors",
            Suite::Clifford => "clifford",
            Suite::Susy => "susy",
            Suite::Transpose => "transpose",
            Suite::All => "all",
        }
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "iso" => Suite::Iso,
            "projectors" => Suite::Projectors,
            "clifford" => Suite::Clifford,
            "susy" => Suite::Susy,
            "transpose" => Suite::Transpose,
            "all" => Suite::All,
            other => return Err(Error::UnknownSuite(other.to_string())),
        })
    }
}

/// Which gamma representation the Clifford suite embeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepChoice {
    #[default]
    Pauli,
    /// 4×4 Dirac matrices with metric (+, −, −, −).
    Dirac,
}

impl FromStr for RepChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pauli" => Ok(RepChoice::Pauli),
            "dirac" => Ok(RepChoice::Dirac),
            other => Err(Error::NotARepresentation(format!(
                "unknown representation `{other}`"
            ))),
        }
    }
}

impl RepChoice {
    pub fn rep(self) -> GammaRep {
        match self {
            RepChoice::Pauli => pauli_rep(),
            RepChoice::Dirac => dirac_rep(),
        }
    }
}

/// The Dirac representation γ^0 = diag(1, 1, −1, −1),
/// γ^k = [[0, σ_k], [−σ_k, 0]], metric (+, −, −, −). It carries no
/// conjugation matrix.
pub fn dirac_rep() -> GammaRep {
    let z = JetScalar::zero;
    let one = JetScalar::one;
    let i = JetScalar::i;
    let sigma: [[[JetScalar; 2]; 2]; 3] = [
        [[z(), one()], [one(), z()]],
        [[z(), -i()], [i(), z()]],
        [[one(), z()], [z(), -one()]],
    ];
    let g0 =
        MatrixDense::from_ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]])
            .expect("square");
    let mut gammas = vec![g0];
    for s in &sigma {
        let m = MatrixDense::from_fn(4, 4, |r, c| match (r < 2, c < 2) {
            (true, false) => s[r][c - 2].clone(),
            (false, true) => -s[r - 2][c].clone(),
            _ => JetScalar::zero(),
        })
        .expect("square");
        gammas.push(m);
    }
    GammaRep::new(gammas, None, vec![1, -1, -1, -1])
        .expect("Dirac matrices satisfy the Clifford relation")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Trials per signature; `None` picks the suite default.
    pub trials: Option<usize>,
    pub seed: u64,
    /// Restricts the suite to one `n_total` (ignored by `all`).
    pub n: Option<usize>,
    pub n_d: Option<usize>,
    pub rep: RepChoice,
    #[serde(skip, default)]
    pub exec: Exec,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            trials: None,
            seed: 0,
            n: None,
            n_d: None,
            rep: RepChoice::Pauli,
            exec: Exec::default(),
        }
    }
}

/// One failed check with everything needed to rerun its trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub suite: Suite,
    pub check: String,
    pub n_total: usize,
    pub n_d: usize,
    pub rep: RepChoice,
    pub seed: u64,
    pub counterexample: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub trials: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub wall_time_secs: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: VerificationReport) {
        self.trials += other.trials;
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} trials, {} checks, {} failures, {:.3}s",
            self.suite,
            self.trials,
            self.checks,
            self.failures.len(),
            self.wall_time_secs
        )?;
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        for x in &self.failures {
            writeln!(
                f,
                "  FAIL {} [{} n={} n_D={} seed={}]: {}",
                x.check, x.suite, x.n_total, x.n_d, x.seed, x.counterexample
            )?;
        }
        Ok(())
    }
}

/// Collects the checks of one trial.
struct Trial {
    suite: Suite,
    sig: AlgebraSignature,
    rep: RepChoice,
    seed: u64,
    checks: usize,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl Trial {
    fn new(suite: Suite, sig: AlgebraSignature, rep: RepChoice, seed: u64) -> Self {
        Trial {
            suite,
            sig,
            rep,
            seed,
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool, counterexample: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                suite: self.suite,
                check: name.to_string(),
                n_total: self.sig.n_total() as usize,
                n_d: self.sig.n_d() as usize,
                rep: self.rep,
                seed: self.seed,
                counterexample: counterexample(),
            });
        }
    }

    fn check_result<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(name, false, || format!("error: {e}"));
                None
            }
        }
    }
}

fn matrix_expr(m: &MatrixDense) -> String {
    let rows: Vec<Vec<Expr>> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| Expr::from_scalar(m.get(r, c)))
                .collect()
        })
        .collect();
    Expr::Matrix(rows).to_string()
}

fn iso_trial(t: &mut Trial) {
    let sig = t.sig;
    let n = sig.n_total() as usize;
    let mut rng = random::rng(t.seed);
    let a = random::matrix(&mut rng, n);
    let b = random::matrix(&mut rng, n);
    let lambda = random::complex_scalar(&mut rng);
    let cx = || {
        format!(
            "A = {}; B = {}; lambda = {}",
            matrix_expr(&a),
            matrix_expr(&b),
            Expr::from_scalar(&lambda)
        )
    };
    let embed = |m: &MatrixDense| embed_matrix(sig, m);
    let (Some(ea), Some(eb)) = (
        t.check_result("embed A", embed(&a)),
        t.check_result("embed B", embed(&b)),
    ) else {
        return;
    };
    let ab = a.mul(&b).expect("square");
    let sum = a.add(&b).expect("square");
    let rows = [
        (
            "embed(AB) = embed(A)embed(B)",
            embed(&ab).ok() == ea.compose(&eb).ok(),
        ),
        (
            "embed(A+B) = embed(A)+embed(B)",
            embed(&sum).ok() == ea.add(&eb).ok(),
        ),
        (
            "embed(λA) = λ embed(A)",
            embed(&a.scale(&lambda)).ok() == Some(ea.scale(&lambda)),
        ),
        (
            "embed(Aᵀ) = embed(A)ᵀ",
            embed(&a.transpose()).ok() == Some(ea.transpose()),
        ),
        (
            "embed(conj A) = conj embed(A)",
            embed(&a.conj()).ok() == Some(ea.conjugate()),
        ),
        (
            "extract(embed(A)) = A",
            extract_matrix(&ea).ok().as_ref() == Some(&a),
        ),
    ];
    for (name, ok) in rows {
        t.check(name, ok, cx);
    }
}

fn projector_trial(t: &mut Trial) {
    let sig = t.sig;
    let n = sig.n_total() as usize;
    let ps = projectors(sig);
    let mut total = Operator::zero(sig);
    for k in 0..=n {
        let oracle = rank_oracle_operator(sig, k).expect("rank in range");
        t.check("P_k equals the rank oracle", ps[k] == oracle, || {
            format!("P({k})")
        });
        t.check("P_k symmetric", ps[k].transpose() == ps[k], || {
            format!("P({k})")
        });
        for j in 0..=n {
            let prod = ps[k].compose(&ps[j]).expect("same signature");
            let expected = if j == k {
                ps[k].clone()
            } else {
                Operator::zero(sig)
            };
            t.check("P_k P_j = δ_kj P_k", prod == expected, || {
                format!("P({k})*P({j})")
            });
        }
        total = total.add(&ps[k]).expect("same signature");
    }
    t.check("Σ P_k = 1", total == Operator::identity(sig), || {
        format!("sum of P(0)..P({n})")
    });
    let p0 = projector(sig, 0).expect("rank 0");
    let p1 = projector(sig, 1).expect("rank 1");
    for a in sig.generators() {
        let th = Operator::theta(sig, a as usize).expect("in range");
        let ok = p1.compose(&th).ok() == th.compose(&p0).ok();
        t.check("P_1 θ^α = θ^α P_0", ok, || {
            format!("P(1)*th({a}) - th({a})*P(0)")
        });
    }
}

fn clifford_trial(t: &mut Trial) {
    let sig = t.sig;
    let rep = t.rep.rep();
    let Some(gammas) = t.check_result("embed gammas", embed_gamma(&rep, sig)) else {
        return;
    };
    let Some(report) = t.check_result(
        "anticommutators",
        check_anticommutation(&gammas, rep.metric(), sig),
    ) else {
        return;
    };
    for &(m, k) in &report.pairs_checked {
        let ok = !report.failures.contains(&(m, k));
        t.check("{Γ^m, Γ^k} = 2η^mk P_1", ok, || {
            format!("pair ({m}, {k})")
        });
    }
    if sig.n_add() > 0 {
        t.notes.push(format!(
            "{sig}: anticommutators compared with the primed-sector unit Σ th(a')*d(a')*P(1); \
             {} of {} pairs also equal 2η times the full P(1)",
            report.full_projector_pairs.len(),
            report.pairs_checked.len()
        ));
    }
    for (m, g) in gammas.iter().enumerate() {
        for mono in sig.basis() {
            let outside = mono.rank() != 1 || sig.additional().any(|b| mono.contains(b));
            if !outside {
                continue;
            }
            let image = g.apply(&State::monomial(sig, mono, JetScalar::one()));
            let ok = image.map(|s| s.is_zero()).unwrap_or(false);
            t.check(
                "Γ^m annihilates monomials outside the primed rank-1 sector",
                ok,
                || format!("Γ^{} on {mono}", m + 1),
            );
        }
    }
}

fn susy_symbolic(t: &mut Trial) {
    let sig = t.sig;
    if (sig.n_total(), sig.n_d()) != (3, 2) {
        return;
    }
    let params = crate::susy::make_params(
        sig,
        &[
            crate::susy::MixEntry::symbol(1, 3),
            crate::susy::MixEntry::symbol(2, 3),
        ],
    )
    .expect("valid");
    let xp: Vec<SymPoly> = (1..=3).map(SymPoly::xi_prime).collect();
    let x: Vec<SymPoly> = (1..=3).map(SymPoly::xi).collect();
    let lhs = delta_coords(&xp, &x, &params, &pauli_rep());
    let rhs = delta_coords_closed_form(&xp, &x, &params);
    let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
    t.check("δx bilinears = closed form (symbolic)", ok, || {
        format!("{lhs:?} vs {rhs:?}")
    });
    let bad = MixParams::unconstrained_for_negative_check(sig, &[(1, 3), (2, 3)]).expect("pairs");
    t.check(
        "duality fails without antisymmetric ε",
        !check_duality(&bad).holds(),
        || "unconstrained eps(1,3), eps(3,1), eps(2,3), eps(3,2)".into(),
    );
}

fn susy_trial(t: &mut Trial) {
    let sig = t.sig;
    let n = sig.n_total() as usize;
    let rep = t.rep.rep();
    let mut rng = random::rng(t.seed);
    let params = random::mix_params(&mut rng, sig);
    let xp: Vec<JetScalar> = (0..n).map(|_| random::complex_scalar(&mut rng)).collect();
    let xi: Vec<JetScalar> = (0..n).map(|_| random::complex_scalar(&mut rng)).collect();
    let f = random::superfield(&mut rng, sig, rep.gammas().len(), DEFAULT_MAX_DEGREE);
    let show = |v: &[JetScalar]| {
        v.iter()
            .map(|c| Expr::from_scalar(c).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let cx = || {
        format!(
            "params = {params:?}; xi' = [{}]; xi = [{}]",
            show(&xp),
            show(&xi)
        )
    };

    if (sig.n_total(), sig.n_d()) == (3, 2) {
        let lhs = delta_coords(&xp, &xi, &params, &rep);
        let rhs = delta_coords_closed_form(&xp, &xi, &params);
        let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
        t.check("δx bilinears = closed form (numeric)", ok, cx);
    }
    let report = check_duality(&params);
    t.check("duality ∂̃_a θ̃^b = δ_a^b", report.holds(), || {
        format!(
            "{cx_text}; violations {:?}",
            report.violations,
            cx_text = cx()
        )
    });
    let invariant = transform_coefficients(&xi, &params)
        .and_then(|(new, _)| expand_in_transformed_basis(&new, &params))
        .map(|s| s == linear_state(sig, &xi))
        .unwrap_or(false);
    t.check("Σ ξ̃ θ̃ = Σ ξ θ", invariant, cx);
    let st = supertranslate_superfield(&f, &xp, &xi, &params, &rep, DEFAULT_MAX_DEGREE);
    let ok = st.as_ref().map(|(_, r)| r.consistent()).unwrap_or(false);
    t.check("supertranslation direct = Taylor", ok, || {
        format!("{}; f = {f}", cx())
    });
}

fn transpose_trial(t: &mut Trial) {
    let sig = t.sig;
    let mut rng = random::rng(t.seed);
    let n = sig.n_total();
    let w = random::word(&mut rng, n, 6);
    let cx = || {
        let letters: Vec<String> = w.letters.iter().map(ToString::to_string).collect();
        format!("{}*{}", Expr::from_scalar(&w.coeff), letters.join("*"))
    };
    let (Some(op), Some(op_t)) = (
        t.check_result("word operator", w.to_operator(sig)),
        t.check_result("transposed word operator", w.transpose().to_operator(sig)),
    ) else {
        return;
    };
    t.check(
        "word reversal = matrix transpose",
        op_t == op.transpose(),
        cx,
    );
    t.check(
        "transpose is an involution",
        op.transpose().transpose() == op,
        cx,
    );
    let split = rng_split(w.letters.len(), t.seed);
    let (l, r) = w.letters.split_at(split);
    let left = crate::operator::Word::unit(l.to_vec()).to_operator(sig);
    let right = crate::operator::Word::unit(r.to_vec()).to_operator(sig);
    if let (Ok(left), Ok(right)) = (left, right) {
        let lhs = left.compose(&right).map(|p| p.transpose()).ok();
        let rhs = right.transpose().compose(&left.transpose()).ok();
        t.check("(AB)ᵀ = BᵀAᵀ", lhs == rhs, cx);
    }
}

fn rng_split(len: usize, seed: u64) -> usize {
    (seed % (len as u64 + 1)) as usize
}

/// Signatures and trial counts a suite covers.
fn plan(suite: Suite, opts: &SuiteOptions) -> Result<Vec<(AlgebraSignature, usize)>> {
    let ns = |default: &[usize]| opts.n.map(|n| vec![n]).unwrap_or_else(|| default.to_vec());
    let trials = |default: usize| opts.trials.unwrap_or(default);
    let mut out = Vec::new();
    match suite {
        Suite::Iso => {
            for n in ns(&[2, 3, 4, 6, 8]) {
                out.push((
                    AlgebraSignature::new(n, opts.n_d.unwrap_or(n).min(n))?,
                    trials(100),
                ));
            }
        }
        Suite::Projectors => {
            for n in ns(&[1, 2, 3, 4, 5, 6]) {
                out.push((AlgebraSignature::new(n, opts.n_d.unwrap_or(n).min(n))?, 1));
            }
        }
        Suite::Clifford => {
            let dim = opts.rep.rep().dim();
            if let Some(nd) = opts.n_d.filter(|nd| *nd != dim) {
                return Err(Error::DimensionMismatch {
                    expected: format!("n_D = {dim} for the {:?} representation", opts.rep),
                    found: nd.to_string(),
                });
            }
            let default: &[usize] = match opts.rep {
                RepChoice::Pauli => &[2, 3, 4],
                RepChoice::Dirac => &[4, 5],
            };
            for n in ns(default) {
                out.push((AlgebraSignature::new(n, dim)?, 1));
            }
        }
        Suite::Susy => {
            if opts.rep != RepChoice::Pauli {
                return Err(Error::NotARepresentation(
                    "the susy suite needs a representation with a conjugation matrix (pauli)"
                        .into(),
                ));
            }
            let n = opts.n.unwrap_or(3);
            let nd = opts.n_d.unwrap_or(2);
            if nd != 2 {
                return Err(Error::DimensionMismatch {
                    expected: "n_D = 2 for the pauli representation".into(),
                    found: nd.to_string(),
                });
            }
            out.push((AlgebraSignature::new(n, nd)?, trials(1000)));
        }
        Suite::Transpose => {
            let count = trials(500);
            match opts.n {
                Some(n) => out.push((
                    AlgebraSignature::new(n, opts.n_d.unwrap_or(n).min(n))?,
                    count,
                )),
                None => {
                    // spread trials over n = 1..=5
                    for n in 1..=5usize {
                        let share = count / 5 + usize::from(n <= count % 5);
                        out.push((AlgebraSignature::full(n)?, share));
                    }
                }
            }
        }
        Suite::All => unreachable!("expanded by run_suite"),
    }
    Ok(out)
}

fn stream(suite: Suite, sig: AlgebraSignature, rep: RepChoice) -> u64 {
    (suite.stream() << 32) | ((sig.n_total() as u64) << 16) | ((sig.n_d() as u64) << 8) | rep as u64
}

/// Runs one trial of `suite` on `sig` with `seed`.
fn run_trial(suite: Suite, sig: AlgebraSignature, rep: RepChoice, seed: u64) -> Trial {
    let mut t = Trial::new(suite, sig, rep, seed);
    match suite {
        Suite::Iso => iso_trial(&mut t),
        Suite::Projectors => projector_trial(&mut t),
        Suite::Clifford => clifford_trial(&mut t),
        Suite::Susy => susy_trial(&mut t),
        Suite::Transpose => transpose_trial(&mut t),
        Suite::All => unreachable!(),
    }
    t
}

fn run_single(suite: Suite, opts: &SuiteOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport {
        suite: suite.to_string(),
        trials: 0,
        checks: 0,
        failures: Vec::new(),
        notes: Vec::new(),
        wall_time_secs: 0.0,
    };
    for (sig, count) in plan(suite, opts)? {
        let s = stream(suite, sig, opts.rep);
        let trials = opts.exec.map_range(count, |i| {
            run_trial(
                suite,
                sig,
                opts.rep,
                random::trial_seed(opts.seed, s, i as u64),
            )
        });
        if suite == Suite::Susy {
            let mut t = Trial::new(
                suite,
                sig,
                opts.rep,
                random::trial_seed(opts.seed, s, u64::MAX),
            );
            susy_symbolic(&mut t);
            if t.checks > 0 {
                report.notes.push(format!(
                    "{sig}: δx_1..δx_3 cross-checked against the closed-form expressions"
                ));
            }
            report.checks += t.checks;
            report.failures.extend(t.failures);
        }
        report.trials += trials.len();
        for t in trials {
            report.checks += t.checks;
            report.failures.extend(t.failures);
            for note in t.notes {
                if !report.notes.contains(&note) {
                    report.notes.push(note);
                }
            }
        }
    }
    report.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Runs a suite. `all` runs every suite with its default signatures, the
/// Clifford suite once per built-in representation.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<VerificationReport> {
    let suite: Suite = name.parse()?;
    if suite != Suite::All {
        return run_single(suite, opts);
    }
    let start = Instant::now();
    let base = SuiteOptions {
        n: None,
        n_d: None,
        rep: RepChoice::Pauli,
        ..opts.clone()
    };
    let mut total = VerificationReport {
        suite: "all".into(),
        trials: 0,
        checks: 0,
        failures: Vec::new(),
        notes: Vec::new(),
        wall_time_secs: 0.0,
    };
    for s in [
        Suite::Iso,
        Suite::Projectors,
        Suite::Clifford,
        Suite::Susy,
        Suite::Transpose,
    ] {
        total.merge(run_single(s, &base)?);
    }
    let dirac = SuiteOptions {
        rep: RepChoice::Dirac,
        ..base
    };
    total.merge(run_single(Suite::Clifford, &dirac)?);
    total.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(total)
}

/// Reruns the trial behind a failure; an empty result means it now passes.
pub fn replay(failure: &Failure) -> Result<Vec<Failure>> {
    let sig = AlgebraSignature::new(failure.n_total, failure.n_d)?;
    let mut t = run_trial(failure.suite, sig, failure.rep, failure.seed);
    if failure.suite == Suite::Susy {
        susy_symbolic(&mut t);
    }
    Ok(t.failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(n: Option<usize>, trials: usize) -> SuiteOptions {
        SuiteOptions {
            trials: Some(trials),
            seed: 7,
            n,
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn iso_suite_small() {
        let r = run_suite("iso", &opts(Some(3), 5)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.trials, 5);
        assert_eq!(r.checks, 30);
    }

    #[test]
    fn unknown_suite_and_bad_signature() {
        assert_eq!(
            run_suite("nope", &SuiteOptions::default()).unwrap_err(),
            Error::UnknownSuite("nope".into())
        );
        assert!(matches!(
            run_suite("iso", &opts(Some(17), 1)),
            Err(Error::InvalidSignature { .. })
        ));
    }

    #[test]
    fn clifford_pauli_n3_includes_annihilation() {
        let r = run_suite("clifford", &opts(Some(3), 1)).unwrap();
        assert!(r.passed(), "{r}");
        // 6 pairs + 3 gammas × 7 monomials outside span{θ1, θ2}
        assert_eq!(r.checks, 6 + 3 * 6);
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn dirac_rep_is_valid() {
        let rep = dirac_rep();
        assert_eq!(rep.dim(), 4);
        assert!(rep.conjugation().is_none());
        let o = SuiteOptions {
            rep: RepChoice::Dirac,
            ..opts(Some(4), 1)
        };
        assert!(run_suite("clifford", &o).unwrap().passed());
    }

    #[test]
    fn susy_suite_small() {
        let r = run_suite("susy", &opts(None, 20)).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.notes.iter().any(|n| n.contains("closed-form")));
    }

    #[test]
    fn deterministic_and_exec_independent() {
        let a = run_suite("transpose", &opts(None, 40)).unwrap();
        let b = run_suite(
            "transpose",
            &SuiteOptions {
                exec: Exec::Sequential,
                ..opts(None, 40)
            },
        )
        .unwrap();
        assert_eq!((a.trials, a.checks), (b.trials, b.checks));
        assert!(a.passed() && b.passed());
    }

    #[test]
    fn replay_reruns_the_same_trial() {
        let sig = AlgebraSignature::full(3).unwrap();
        let seed = random::trial_seed(1, 2, 3);
        let a = run_trial(Suite::Iso, sig, RepChoice::Pauli, seed);
        let b = run_trial(Suite::Iso, sig, RepChoice::Pauli, seed);
        assert_eq!(a.checks, b.checks);
        let fake = Failure {
            suite: Suite::Iso,
            check: "embed(AB) = embed(A)embed(B)".into(),
            n_total: 3,
            n_d: 3,
            rep: RepChoice::Pauli,
            seed,
            counterexample: String::new(),
        };
        assert!(replay(&fake).unwrap().is_empty());
    }

    #[test]
    fn failures_carry_seeds() {
        let sig = AlgebraSignature::full(2).unwrap();
        let mut t = Trial::new(Suite::Iso, sig, RepChoice::Pauli, 99);
        t.check("always fails", false, || "x".into());
        assert_eq!(t.failures[0].seed, 99);
        assert_eq!(t.failures[0].n_total, 2);
    }
}
