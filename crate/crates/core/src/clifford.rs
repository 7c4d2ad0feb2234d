//! Superalgebraic gamma matrices: embedding a gamma representation into
//! GM(Λ_n), checking the Clifford relation at operator level, and the spinor
//! bilinear vector coordinates x_m = (ξ')ᵀ C H_m ξ.

use crate::error::{Error, Result};
use crate::grassmann::AlgebraSignature;
use crate::matrix_iso::{embed_block, MatrixDense};
use crate::operator::{projector, Letter, Operator, Word};
use crate::scalar::{JetScalar, Ring};

/// A concrete gamma representation with a diagonal ±1 metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaRep {
    dim: usize,
    gammas: Vec<MatrixDense>,
    conjugation: Option<MatrixDense>,
    metric: Vec<i8>,
}

impl GammaRep {
    /// Validates shapes and `γ^m γ^k + γ^k γ^m = 2 η^{mk} 1` as plain
    /// matrices.
    pub fn new(
        gammas: Vec<MatrixDense>,
        conjugation: Option<MatrixDense>,
        metric: Vec<i8>,
    ) -> Result<Self> {
        let dim = gammas
            .first()
            .map(MatrixDense::rows)
            .ok_or_else(|| Error::NotARepresentation("no gamma matrices".into()))?;
        if gammas.len() != metric.len() {
            return Err(Error::NotARepresentation(format!(
                "{} gammas but {} metric entries",
                gammas.len(),
                metric.len()
            )));
        }
        if let Some(bad) = metric.iter().find(|&&e| e != 1 && e != -1) {
            return Err(Error::NotARepresentation(format!(
                "metric entry {bad} is not ±1"
            )));
        }
        let square = |m: &MatrixDense| m.rows() == dim && m.cols() == dim;
        if !gammas.iter().all(square) || !conjugation.iter().all(square) {
            return Err(Error::NotARepresentation(format!(
                "all matrices must be {dim}x{dim}"
            )));
        }
        let id = MatrixDense::identity(dim)?;
        for m in 0..gammas.len() {
            for k in m..gammas.len() {
                let ac = gammas[m]
                    .mul(&gammas[k])?
                    .add(&gammas[k].mul(&gammas[m])?)?;
                let eta = if m == k { 2 * metric[m] as i64 } else { 0 };
                if ac != id.scale(&JetScalar::from_int(eta)) {
                    return Err(Error::NotARepresentation(format!(
                        "anticommutator of γ^{} and γ^{} is not {eta}·1",
                        m + 1,
                        k + 1
                    )));
                }
            }
        }
        Ok(GammaRep {
            dim,
            gammas,
            conjugation,
            metric,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gammas(&self) -> &[MatrixDense] {
        &self.gammas
    }

    pub fn conjugation(&self) -> Option<&MatrixDense> {
        self.conjugation.as_ref()
    }

    pub fn metric(&self) -> &[i8] {
        &self.metric
    }
}

/// Pauli matrices H_1, H_2, H_3 with C = (0 1; −1 0) and Euclidean metric.
pub fn pauli_rep() -> GammaRep {
    let i = JetScalar::i;
    let z = JetScalar::zero;
    let j = JetScalar::from_int;
    let h1 = MatrixDense::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
    let h2 = MatrixDense::from_rows(vec![vec![z(), -i()], vec![i(), z()]]).unwrap();
    let h3 = MatrixDense::from_rows(vec![vec![j(1), z()], vec![z(), j(-1)]]).unwrap();
    let c = MatrixDense::from_ints(&[&[0, 1], &[-1, 0]]).unwrap();
    GammaRep::new(vec![h1, h2, h3], Some(c), vec![1, 1, 1]).expect("Pauli matrices")
}

/// Γ̂^m = Σ_{α',β' ≤ n_D} (γ^m)_{α'}^{β'} θ̂^{α'} ∂_{β'} P̂_1, where P̂_1 is
/// the rank-one projector of the whole algebra, so each Γ̂^m annihilates any
/// monomial that contains an additional generator.
pub fn embed_gamma(rep: &GammaRep, sig: AlgebraSignature) -> Result<Vec<Operator>> {
    if rep.dim != sig.n_d() as usize {
        return Err(Error::DimensionMismatch {
            expected: format!("representation of dimension n_D = {}", sig.n_d()),
            found: rep.dim.to_string(),
        });
    }
    rep.gammas
        .iter()
        .map(|g| embed_block(sig, g, rep.dim))
        .collect()
}

/// Σ_{α' ≤ n_D} θ̂^{α'} ∂_{α'} P̂_1: the unit of the embedded n_D × n_D
/// matrix algebra. Equals P̂_1 when every generator is primed.
pub fn primed_unit(sig: AlgebraSignature) -> Result<Operator> {
    let mut sum = Operator::zero(sig);
    for a in sig.primed() {
        sum = sum.add(&Word::unit(vec![Letter::Theta(a), Letter::Deriv(a)]).to_operator(sig)?)?;
    }
    sum.compose(&projector(sig, 1)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnticommutationReport {
    /// Unordered pairs (m, k), 1-based, m ≤ k.
    pub pairs_checked: Vec<(usize, usize)>,
    /// Pairs where {Γ̂^m, Γ̂^k} ≠ 2η^{mk} times the primed unit.
    pub failures: Vec<(usize, usize)>,
    /// Pairs where {Γ̂^m, Γ̂^k} also equals 2η^{mk} P̂_1 of the full algebra.
    /// With additional generators present only the off-diagonal pairs do.
    pub full_projector_pairs: Vec<(usize, usize)>,
}

impl AnticommutationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks Γ̂^mΓ̂^k + Γ̂^kΓ̂^m = 2η^{mk}·U for every pair, where U is the
/// primed unit [`primed_unit`] (each factor carries P̂_1, so the right side
/// is a rank-one projector rather than 1̂).
pub fn check_anticommutation(
    gammas: &[Operator],
    metric: &[i8],
    sig: AlgebraSignature,
) -> Result<AnticommutationReport> {
    if gammas.len() != metric.len() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} gamma operators", metric.len()),
            found: gammas.len().to_string(),
        });
    }
    let unit = primed_unit(sig)?;
    let p1 = projector(sig, 1)?;
    let mut report = AnticommutationReport {
        pairs_checked: Vec::new(),
        failures: Vec::new(),
        full_projector_pairs: Vec::new(),
    };
    for m in 0..gammas.len() {
        for k in m..gammas.len() {
            let lhs = gammas[m].anticommutator(&gammas[k])?;
            let eta = JetScalar::from_int(if m == k { 2 * metric[m] as i64 } else { 0 });
            report.pairs_checked.push((m + 1, k + 1));
            if lhs != unit.scale(&eta) {
                report.failures.push((m + 1, k + 1));
            }
            if lhs == p1.scale(&eta) {
                report.full_projector_pairs.push((m + 1, k + 1));
            }
        }
    }
    Ok(report)
}

/// `(ξ')ᵀ M ξ` for a square matrix of jets.
pub(crate) fn bilinear<R: Ring>(xi_prime: &[R], m: &MatrixDense, xi: &[R]) -> R {
    let mut acc = R::zero();
    for (a, left) in xi_prime.iter().enumerate().take(m.rows()) {
        for (b, right) in xi.iter().enumerate().take(m.cols()) {
            let c = m.get(a, b);
            if c.is_zero() {
                continue;
            }
            acc = acc + left.clone() * R::from_jet(c) * right.clone();
        }
    }
    acc
}

/// The matrices C·H_m of a representation.
pub(crate) fn conjugated_gammas(rep: &GammaRep) -> Result<Vec<MatrixDense>> {
    let c = rep.conjugation.as_ref().ok_or_else(|| {
        Error::NotARepresentation("representation carries no conjugation matrix".into())
    })?;
    rep.gammas.iter().map(|g| c.mul(g)).collect()
}

/// x_m = (ξ')ᵀ C H_m ξ for every gamma matrix of the representation.
pub fn vector_coords<R: Ring>(xi_prime: &[R], xi: &[R], rep: &GammaRep) -> Result<Vec<R>> {
    for v in [xi_prime.len(), xi.len()] {
        if v != rep.dim {
            return Err(Error::DimensionMismatch {
                expected: format!("spinor of length {}", rep.dim),
                found: v.to_string(),
            });
        }
    }
    Ok(conjugated_gammas(rep)?
        .iter()
        .map(|cg| bilinear(xi_prime, cg, xi))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{Monomial, State};
    use crate::symbolic::SymPoly;

    fn j(n: i64) -> JetScalar {
        JetScalar::from_int(n)
    }

    #[test]
    fn pauli_bilinears_match_reference_expansions() {
        let rep = pauli_rep();
        let xp = [SymPoly::xi_prime(1), SymPoly::xi_prime(2)];
        let x = [SymPoly::xi(1), SymPoly::xi(2)];
        let coords = vector_coords(&xp, &x, &rep).unwrap();
        assert_eq!(coords[0].to_string(), "xi'1*xi1 - xi'2*xi2");
        assert_eq!(coords[1].to_string(), "i*xi'1*xi1 + i*xi'2*xi2");
        assert_eq!(coords[2].to_string(), "-xi'1*xi2 - xi'2*xi1");
    }

    #[test]
    fn numeric_coordinate_examples() {
        let rep = pauli_rep();
        let x = vector_coords(&[j(1), j(0)], &[j(1), j(0)], &rep).unwrap();
        assert_eq!(x, vec![j(1), JetScalar::i(), j(0)]);
        let x = vector_coords(&[j(1), j(0)], &[j(0), j(1)], &rep).unwrap();
        assert_eq!(x[2], j(-1));
        let x = vector_coords(&[j(4), j(-2)], &[j(0), j(0)], &rep).unwrap();
        assert!(x.iter().all(JetScalar::is_zero));
        assert!(vector_coords(&[j(1)], &[j(0), j(1)], &rep).is_err());
    }

    #[test]
    fn pauli_matrices_anticommute() {
        let rep = pauli_rep();
        let id = MatrixDense::identity(2).unwrap();
        for m in 0..3 {
            for k in 0..3 {
                let g = rep.gammas();
                let ac = g[m]
                    .mul(&g[k])
                    .unwrap()
                    .add(&g[k].mul(&g[m]).unwrap())
                    .unwrap();
                let expect = if m == k {
                    id.scale(&j(2))
                } else {
                    id.scale(&j(0))
                };
                assert_eq!(ac, expect);
            }
        }
    }

    #[test]
    fn invalid_representations_are_rejected() {
        let a = MatrixDense::from_ints(&[&[1, 1], &[0, 1]]).unwrap();
        assert!(GammaRep::new(vec![a.clone()], None, vec![1]).is_err());
        assert!(GammaRep::new(vec![a], None, vec![1, 1]).is_err());
        assert!(GammaRep::new(vec![], None, vec![]).is_err());
    }

    #[test]
    fn gamma_one_moves_theta2_to_theta1() {
        let sig = AlgebraSignature::full(2).unwrap();
        let g = embed_gamma(&pauli_rep(), sig).unwrap();
        let t2 = State::generator(sig, 2, j(1)).unwrap();
        assert_eq!(
            g[0].apply(&t2).unwrap(),
            State::generator(sig, 1, j(1)).unwrap()
        );
        assert!(g[0].apply(&State::one(sig)).unwrap().is_zero());
    }

    #[test]
    fn gammas_annihilate_additional_generator() {
        let sig = AlgebraSignature::new(3, 2).unwrap();
        let g = embed_gamma(&pauli_rep(), sig).unwrap();
        for gm in &g {
            for m in sig.basis().filter(|m| m.contains(3)) {
                assert!(gm.apply(&State::monomial(sig, m, j(1))).unwrap().is_zero());
            }
        }
        let report = check_anticommutation(&g, pauli_rep().metric(), sig).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.pairs_checked.len(), 6);
        // diagonal pairs differ from the full P̂_1 by the θ^3 block
        assert_eq!(report.full_projector_pairs, vec![(1, 2), (1, 3), (2, 3)]);
        let t3 = State::monomial(sig, Monomial::generator(3), j(1));
        assert!(primed_unit(sig).unwrap().apply(&t3).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let sig = AlgebraSignature::new(3, 3).unwrap();
        assert!(embed_gamma(&pauli_rep(), sig).is_err());
    }
}
