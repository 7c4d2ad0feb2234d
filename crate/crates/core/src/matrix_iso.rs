//! Ordinary matrices inside GM(Λ_n): the embedding m ↦ m_α^β θ̂^α ∂_β P̂_1,
//! its inverse on the image, column and row operators, and generalized
//! matrices between arbitrary rank subspaces.

use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::{AlgebraSignature, Monomial, State};
use crate::operator::{projector, Letter, Operator, Word};
use crate::scalar::JetScalar;

/// Dense matrix of jets. Row `r` corresponds to the upper index α = r + 1 of
/// m_α^β, column `c` to β = c + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDense {
    rows: usize,
    cols: usize,
    entries: Vec<JetScalar>,
}

impl MatrixDense {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch {
                expected: "non-empty matrix".into(),
                found: format!("{rows}x{cols}"),
            });
        }
        Ok(MatrixDense {
            rows,
            cols,
            entries: vec![JetScalar::zero(); rows * cols],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, JetScalar::one());
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<JetScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c)?;
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: format!("rows of length {c}"),
                    found: format!("row {i} of length {}", row.len()),
                });
            }
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Integer matrix shorthand used heavily by fixtures.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| JetScalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> JetScalar,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &JetScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: JetScalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn mul(&self, rhs: &MatrixDense) -> Result<MatrixDense> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", rhs.rows),
            });
        }
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(JetScalar::zero(), |acc, k| {
                acc + self.get(i, k) * rhs.get(k, j)
            })
        })
    }

    pub fn add(&self, rhs: &MatrixDense) -> Result<MatrixDense> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn scale(&self, lambda: &JetScalar) -> MatrixDense {
        MatrixDense {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| lambda * e).collect(),
        }
    }

    pub fn transpose(&self) -> MatrixDense {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone()).unwrap()
    }

    pub fn conj(&self) -> MatrixDense {
        MatrixDense {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(JetScalar::conj).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[JetScalar]) -> Result<Vec<JetScalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.cols),
                found: v.len().to_string(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .fold(JetScalar::zero(), |acc, (j, x)| acc + self.get(i, j) * x)
            })
            .collect())
    }

    /// Square `n × n` copy with this matrix in the top-left block.
    pub fn padded(&self, n: usize) -> Result<MatrixDense> {
        if n < self.rows || n < self.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("at most {n}x{n}"),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        Self::from_fn(n, n, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else {
                JetScalar::zero()
            }
        })
    }
}

impl fmt::Display for MatrixDense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Σ_{α,β ≤ block} m_α^β θ̂^α ∂_β P̂_1, with P̂_1 the projector of the full
/// algebra.
pub(crate) fn embed_block(
    sig: AlgebraSignature,
    m: &MatrixDense,
    block: usize,
) -> Result<Operator> {
    if m.rows != block || m.cols != block || block > sig.n_total() as usize {
        return Err(Error::DimensionMismatch {
            expected: format!("{block}x{block} (block of {sig})"),
            found: format!("{}x{}", m.rows, m.cols),
        });
    }
    let mut words = Vec::new();
    for a in 0..block {
        for b in 0..block {
            let c = m.get(a, b);
            if !c.is_zero() {
                words.push(Word::new(
                    c.clone(),
                    vec![Letter::Theta(a as u8 + 1), Letter::Deriv(b as u8 + 1)],
                ));
            }
        }
    }
    // the word sum composed with P̂_1, evaluated column by column
    let p1 = projector(sig, 1)?;
    Operator::from_action(sig, |psi| {
        let projected = p1.apply(psi)?;
        let mut out = State::zero(sig);
        if projected.is_zero() {
            return Ok(out);
        }
        for w in &words {
            out = out.add(&w.apply(&projected)?)?;
        }
        Ok(out)
    })
}

/// The matrix-algebra embedding of an `n_total × n_total` matrix.
pub fn embed_matrix(sig: AlgebraSignature, m: &MatrixDense) -> Result<Operator> {
    embed_block(sig, m, sig.n_total() as usize)
}

/// Inverse of [`embed_matrix`] on its image. Membership is decided by the
/// action on every basis monomial.
pub fn extract_matrix(a: &Operator) -> Result<MatrixDense> {
    let sig = a.sig();
    let n = sig.n_total() as usize;
    let mut m = MatrixDense::zeros(n, n)?;
    for mono in sig.basis() {
        let image = a.apply(&State::monomial(sig, mono, JetScalar::one()))?;
        if mono.rank() != 1 {
            if !image.is_zero() {
                return Err(Error::NotInMatrixAlgebra(format!(
                    "rank-{} monomial {mono} maps to {image}",
                    mono.rank()
                )));
            }
            continue;
        }
        let beta = mono.indices().next().unwrap() as usize;
        for (out, c) in image.terms() {
            if out.rank() != 1 {
                return Err(Error::NotInMatrixAlgebra(format!(
                    "{mono} maps outside rank 1: {image}"
                )));
            }
            let alpha = out.indices().next().unwrap() as usize;
            m.set(alpha - 1, beta - 1, c.clone());
        }
    }
    Ok(m)
}

fn check_len(sig: AlgebraSignature, v: &[JetScalar]) -> Result<()> {
    if v.len() != sig.n_total() as usize {
        return Err(Error::DimensionMismatch {
            expected: format!("vector of length {}", sig.n_total()),
            found: v.len().to_string(),
        });
    }
    Ok(())
}

/// Column operator m_α θ̂^α P̂_0: sends 1 to Σ v_α θ^α.
pub fn embed_column(sig: AlgebraSignature, v: &[JetScalar]) -> Result<Operator> {
    check_len(sig, v)?;
    let mut sum = Operator::zero(sig);
    for (a, c) in v.iter().enumerate() {
        if !c.is_zero() {
            let w = Word::new(c.clone(), vec![Letter::Theta(a as u8 + 1)]);
            sum = sum.add(&w.to_operator(sig)?)?;
        }
    }
    sum.compose(&projector(sig, 0)?)
}

/// Row operator m^β ∂_β P̂_1: sends θ^β to w_β.
pub fn embed_row(sig: AlgebraSignature, w: &[JetScalar]) -> Result<Operator> {
    check_len(sig, w)?;
    let mut sum = Operator::zero(sig);
    for (b, c) in w.iter().enumerate() {
        if !c.is_zero() {
            let word = Word::new(c.clone(), vec![Letter::Deriv(b as u8 + 1)]);
            sum = sum.add(&word.to_operator(sig)?)?;
        }
    }
    sum.compose(&projector(sig, 1)?)
}

/// One coefficient of a generalized matrix: output multi-index β_1<…<β_l,
/// input multi-index α_1<…<α_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenEntry {
    pub out: Vec<u8>,
    pub inp: Vec<u8>,
    pub coeff: JetScalar,
}

impl GenEntry {
    pub fn new(out: &[u8], inp: &[u8], coeff: JetScalar) -> Self {
        GenEntry {
            out: out.to_vec(),
            inp: inp.to_vec(),
            coeff,
        }
    }
}

fn check_multi_index(sig: AlgebraSignature, ix: &[u8], len: usize) -> Result<()> {
    if ix.len() != len {
        return Err(Error::MalformedMultiIndex(format!(
            "{ix:?} should have length {len}"
        )));
    }
    if ix.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::MalformedMultiIndex(format!(
            "{ix:?} is not strictly increasing"
        )));
    }
    for &a in ix {
        sig.check_index(a as usize).map_err(|_| {
            Error::MalformedMultiIndex(format!("{ix:?} leaves 1..={}", sig.n_total()))
        })?;
    }
    Ok(())
}

/// Σ m_{β_1…β_l}^{α_k…α_1} θ̂^{β_1}…θ̂^{β_l} ∂_{α_k}…∂_{α_1} P̂_k, mapping the
/// rank-`k` subspace into the rank-`l` subspace.
pub fn generalized_matrix(
    sig: AlgebraSignature,
    l: usize,
    k: usize,
    coeffs: &[GenEntry],
) -> Result<Operator> {
    sig.check_rank(l)?;
    sig.check_rank(k)?;
    let mut sum = Operator::zero(sig);
    for e in coeffs {
        check_multi_index(sig, &e.out, l)?;
        check_multi_index(sig, &e.inp, k)?;
        if e.coeff.is_zero() {
            continue;
        }
        let letters = e
            .out
            .iter()
            .map(|&b| Letter::Theta(b))
            .chain(e.inp.iter().rev().map(|&a| Letter::Deriv(a)))
            .collect();
        sum = sum.add(&Word::new(e.coeff.clone(), letters).to_operator(sig)?)?;
    }
    sum.compose(&projector(sig, k)?)
}

/// Reads the coefficient table of an operator in block (l, k), keyed by
/// (output, input) monomials.
pub fn block_entries(a: &Operator, l: u32, k: u32) -> Vec<(Monomial, Monomial, JetScalar)> {
    a.entries()
        .filter(|(o, i, _)| o.rank() == l && i.rank() == k)
        .map(|(o, i, c)| (o, i, c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{derivative, left_mult_theta};
    use crate::scalar::{cq_int, rational};

    fn sig(n: usize) -> AlgebraSignature {
        AlgebraSignature::full(n).unwrap()
    }

    fn j(n: i64) -> JetScalar {
        JetScalar::from_int(n)
    }

    #[test]
    fn identity_embeds_to_rank_one_projector() {
        for n in 1..=4 {
            let s = sig(n);
            let e = embed_matrix(s, &MatrixDense::identity(n).unwrap()).unwrap();
            assert_eq!(e, projector(s, 1).unwrap());
            assert_eq!(
                extract_matrix(&e).unwrap(),
                MatrixDense::identity(n).unwrap()
            );
        }
    }

    #[test]
    fn raising_matrix_moves_theta2_to_theta1() {
        let s = sig(2);
        let m = MatrixDense::from_ints(&[&[0, 1], &[0, 0]]).unwrap();
        let xi2 = j(5);
        let psi = State::generator(s, 2, xi2.clone()).unwrap();
        let out = embed_matrix(s, &m).unwrap().apply(&psi).unwrap();
        // direct action: θ̂^1 ∂_2 on the rank-1 input
        let direct = left_mult_theta(1, &derivative(2, &psi).unwrap()).unwrap();
        assert_eq!(out, direct);
        assert_eq!(out, State::generator(s, 1, xi2).unwrap());
    }

    #[test]
    fn embedding_is_multiplicative_3x3() {
        let s = sig(3);
        let a = MatrixDense::from_rows(vec![
            vec![j(1), JetScalar::from_rational(rational(1, 2)), j(0)],
            vec![JetScalar::i(), j(-2), j(3)],
            vec![j(0), j(4), JetScalar::from_cq(cq_int(1, 1))],
        ])
        .unwrap();
        let b = MatrixDense::from_ints(&[&[2, 0, -1], &[1, 1, 0], &[0, -3, 5]]).unwrap();
        let lhs = embed_matrix(s, &a.mul(&b).unwrap()).unwrap();
        let rhs = &embed_matrix(s, &a).unwrap() * &embed_matrix(s, &b).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn extract_rejects_non_matrix_operators() {
        let s = sig(2);
        let th1 = Operator::theta(s, 1).unwrap();
        assert!(matches!(
            extract_matrix(&th1),
            Err(Error::NotInMatrixAlgebra(_))
        ));
        let m = MatrixDense::from_ints(&[&[1, 2], &[3, 4]]).unwrap();
        assert!(embed_matrix(sig(3), &m).is_err());
    }

    #[test]
    fn column_and_row_examples() {
        let s = sig(3);
        let v = vec![j(1), j(-2), JetScalar::i()];
        let w = vec![j(3), j(1), j(2)];
        let col = embed_column(s, &v).unwrap();
        let one = State::one(s);
        assert_eq!(col.apply(&one).unwrap(), State::linear(s, &v).unwrap());
        let t1 = State::generator(s, 1, j(1)).unwrap();
        assert!(col.apply(&t1).unwrap().is_zero());

        let dot = v
            .iter()
            .zip(&w)
            .fold(JetScalar::zero(), |acc, (a, b)| acc + a * b);
        let row_col = &embed_row(s, &w).unwrap() * &col;
        assert_eq!(
            row_col.apply(&one).unwrap(),
            State::monomial(s, Monomial::UNIT, dot)
        );
        assert!(embed_row(s, &w[..2]).is_err());
    }

    #[test]
    fn generalized_matrix_specializations() {
        let s = sig(3);
        let m = MatrixDense::from_ints(&[&[1, 2, 0], &[0, -1, 3], &[4, 0, 1]]).unwrap();
        let mut entries = Vec::new();
        for a in 0..3u8 {
            for b in 0..3u8 {
                entries.push(GenEntry::new(
                    &[a + 1],
                    &[b + 1],
                    m.get(a as usize, b as usize).clone(),
                ));
            }
        }
        assert_eq!(
            generalized_matrix(s, 1, 1, &entries).unwrap(),
            embed_matrix(s, &m).unwrap()
        );

        let v = vec![j(2), j(0), j(-1)];
        let col: Vec<_> = (0..3u8)
            .map(|a| GenEntry::new(&[a + 1], &[], v[a as usize].clone()))
            .collect();
        let row: Vec<_> = (0..3u8)
            .map(|a| GenEntry::new(&[], &[a + 1], v[a as usize].clone()))
            .collect();
        assert_eq!(
            generalized_matrix(s, 1, 0, &col).unwrap(),
            embed_column(s, &v).unwrap()
        );
        assert_eq!(
            generalized_matrix(s, 0, 1, &row).unwrap(),
            embed_row(s, &v).unwrap()
        );
    }

    #[test]
    fn generalized_rank_raising_example() {
        let s = sig(2);
        let g = generalized_matrix(s, 2, 1, &[GenEntry::new(&[1, 2], &[1], j(1))]).unwrap();
        let t1 = State::generator(s, 1, j(1)).unwrap();
        let t2 = State::generator(s, 2, j(1)).unwrap();
        let t12 = State::monomial(s, Monomial::from_indices(&[1, 2]).unwrap(), j(1));
        assert_eq!(g.apply(&t1).unwrap(), t12);
        assert!(g.apply(&t2).unwrap().is_zero());
    }

    #[test]
    fn malformed_multi_indices_are_rejected() {
        let s = sig(3);
        for bad in [
            GenEntry::new(&[2, 1], &[1], j(1)),
            GenEntry::new(&[1, 1], &[1], j(1)),
            GenEntry::new(&[1, 4], &[1], j(1)),
            GenEntry::new(&[1], &[1], j(1)),
        ] {
            assert!(matches!(
                generalized_matrix(s, 2, 1, &[bad]),
                Err(Error::MalformedMultiIndex(_))
            ));
        }
    }
}
