use std::fmt;

use super::ast::Expr;
use crate::error::{Error, Result};
use crate::grassmann::{conjugate_state, AlgebraSignature, State};
use crate::matrix_iso::{embed_column, embed_matrix, embed_row, MatrixDense};
use crate::operator::{projector, Operator};
use crate::scalar::{EpsId, JetScalar};

/// Result of evaluating an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(JetScalar),
    State(State),
    Operator(Operator),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::State(_) => "state",
            Value::Operator(_) => "operator",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::State(s) => write!(f, "{s}"),
            Value::Operator(o) => write!(f, "{o}"),
        }
    }
}

fn mismatch(what: &str, a: &Value, b: &Value) -> Error {
    Error::TypeMismatch(format!("cannot {what} {} and {}", a.kind(), b.kind()))
}

fn add(a: Value, b: Value, negate: bool) -> Result<Value> {
    let sign = |v: Value| -> Value {
        if !negate {
            return v;
        }
        match v {
            Value::Scalar(s) => Value::Scalar(-s),
            Value::State(s) => Value::State(s.neg()),
            Value::Operator(o) => Value::Operator(o.neg()),
        }
    };
    match (a, sign(b)) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x + y)),
        (Value::State(x), Value::State(y)) => Ok(Value::State(x.add(&y)?)),
        (Value::Operator(x), Value::Operator(y)) => Ok(Value::Operator(x.add(&y)?)),
        (x, y) => Err(mismatch("add", &x, &y)),
    }
}

fn mul(a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x * y)),
        (Value::Scalar(x), Value::State(s)) | (Value::State(s), Value::Scalar(x)) => {
            Ok(Value::State(s.scale(&x)))
        }
        (Value::Scalar(x), Value::Operator(o)) | (Value::Operator(o), Value::Scalar(x)) => {
            Ok(Value::Operator(o.scale(&x)))
        }
        (Value::Operator(x), Value::Operator(y)) => Ok(Value::Operator(x.compose(&y)?)),
        (Value::Operator(x), Value::State(s)) => Ok(Value::State(x.apply(&s)?)),
        (x, y) => Err(mismatch("multiply", &x, &y)),
    }
}

fn scalars(sig: AlgebraSignature, items: &[Expr]) -> Result<Vec<JetScalar>> {
    items
        .iter()
        .map(|e| match evaluate(e, sig)? {
            Value::Scalar(s) => Ok(s),
            other => Err(Error::TypeMismatch(format!(
                "embedding entries must be scalars, found {}",
                other.kind()
            ))),
        })
        .collect()
}

/// ε_{lower}^{upper} with the reversed orientation mapped to the negated
/// unit of the (primed, additional) pair.
fn eps_value(sig: AlgebraSignature, upper: u8, lower: u8) -> Result<JetScalar> {
    if sig.is_primed(upper) && sig.is_additional(lower) {
        Ok(JetScalar::eps(EpsId::new(upper, lower)))
    } else if sig.is_additional(upper) && sig.is_primed(lower) {
        Ok(-JetScalar::eps(EpsId::new(lower, upper)))
    } else {
        Err(Error::InvalidMixParams(format!(
            "eps({upper}, {lower}) must pair a primed index (<= {}) with an additional one",
            sig.n_d()
        )))
    }
}

/// Evaluates exactly. Products compose operators, apply operators to
/// states and scale by scalars; everything else is a type mismatch.
pub fn evaluate(ast: &Expr, sig: AlgebraSignature) -> Result<Value> {
    let idx = |a: &u8| *a as usize;
    Ok(match ast {
        Expr::Scalar(l) => Value::Scalar(JetScalar::from_cq(l.to_cq())),
        Expr::Eps(a, b) => {
            sig.check_index(idx(a))?;
            sig.check_index(idx(b))?;
            Value::Scalar(eps_value(sig, *a, *b)?)
        }
        Expr::Theta(a) => Value::Operator(Operator::theta(sig, idx(a))?),
        Expr::Deriv(a) => Value::Operator(Operator::deriv(sig, idx(a))?),
        Expr::Projector(k) => Value::Operator(projector(sig, idx(k))?),
        Expr::Identity => Value::Operator(Operator::identity(sig)),
        Expr::Vacuum => Value::State(State::one(sig)),
        Expr::Column(v) => Value::Operator(embed_column(sig, &scalars(sig, v)?)?),
        Expr::Row(v) => Value::Operator(embed_row(sig, &scalars(sig, v)?)?),
        Expr::Matrix(rows) => {
            let rows = rows
                .iter()
                .map(|r| scalars(sig, r))
                .collect::<Result<Vec<_>>>()?;
            let m = MatrixDense::from_rows(rows)?.padded(sig.n_total() as usize)?;
            Value::Operator(embed_matrix(sig, &m)?)
        }
        Expr::Sum(terms) => {
            let mut acc: Option<Value> = None;
            for (neg, e) in terms {
                let v = evaluate(e, sig)?;
                acc = Some(match acc {
                    None if *neg => add(zero_like(&v, sig), v, true)?,
                    None => v,
                    Some(a) => add(a, v, *neg)?,
                });
            }
            acc.expect("sums are never empty")
        }
        Expr::Product(factors) => {
            let mut it = factors.iter();
            let mut acc = evaluate(it.next().expect("products are never empty"), sig)?;
            for e in it {
                acc = mul(acc, evaluate(e, sig)?)?;
            }
            acc
        }
        Expr::Scale(l, e) => mul(
            Value::Scalar(JetScalar::from_cq(l.to_cq())),
            evaluate(e, sig)?,
        )?,
        Expr::Transpose(e) => match evaluate(e, sig)? {
            Value::Operator(o) => Value::Operator(o.transpose()),
            Value::Scalar(s) => Value::Scalar(s),
            Value::State(_) => return Err(Error::TypeMismatch("cannot transpose a state".into())),
        },
        Expr::Conjugate(e) => match evaluate(e, sig)? {
            Value::Operator(o) => Value::Operator(o.conjugate()),
            Value::Scalar(s) => Value::Scalar(s.conj()),
            Value::State(s) => Value::State(conjugate_state(&s)),
        },
        Expr::Apply(op, st) => match (evaluate(op, sig)?, evaluate(st, sig)?) {
            (Value::Operator(o), Value::State(s)) => Value::State(o.apply(&s)?),
            (a, b) => return Err(mismatch("apply", &a, &b)),
        },
    })
}

fn zero_like(v: &Value, sig: AlgebraSignature) -> Value {
    match v {
        Value::Scalar(_) => Value::Scalar(JetScalar::zero()),
        Value::State(_) => Value::State(State::zero(sig)),
        Value::Operator(_) => Value::Operator(Operator::zero(sig)),
    }
}
