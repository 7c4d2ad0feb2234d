use std::fmt;

use num::{One, Signed, Zero};

use crate::scalar::{rational_to_string, Cq, JetScalar, Rational};

/// A nonnegative rational, optionally times i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Literal {
    pub value: Rational,
    pub imaginary: bool,
}

impl Literal {
    pub fn real(value: Rational) -> Self {
        Literal {
            value,
            imaginary: false,
        }
    }

    pub fn imag(value: Rational) -> Self {
        Literal {
            value,
            imaginary: true,
        }
    }

    pub fn to_cq(&self) -> Cq {
        if self.imaginary {
            Cq::new(Rational::zero(), self.value.clone())
        } else {
            Cq::new(self.value.clone(), Rational::zero())
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.imaginary, self.value.is_one()) {
            (true, true) => write!(f, "i"),
            (true, false) => write!(f, "{}i", rational_to_text(&self.value)),
            (false, _) => write!(f, "{}", rational_to_text(&self.value)),
        }
    }
}

fn rational_to_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        rational_to_string(r)
    }
}

/// Parsed expression. Sums carry a sign per term; a sum node appears only
/// with two or more terms or a leading minus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Scalar(Literal),
    /// Mixing parameter with (upper, lower) indices.
    Eps(u8, u8),
    Theta(u8),
    Deriv(u8),
    Projector(u8),
    Identity,
    /// The unit state 1.
    Vacuum,
    Column(Vec<Expr>),
    Row(Vec<Expr>),
    Matrix(Vec<Vec<Expr>>),
    /// Terms with a `negative` flag.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Scale(Literal, Box<Expr>),
    Transpose(Box<Expr>),
    Conjugate(Box<Expr>),
    Apply(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// An expression that evaluates to `c`.
    pub fn from_scalar(c: &JetScalar) -> Expr {
        let mut terms = Vec::new();
        let mut push = |r: &Rational, imaginary: bool, eps: Option<(u8, u8)>| {
            if r.is_zero() {
                return;
            }
            let lit = Literal {
                value: r.abs(),
                imaginary,
            };
            let e = match eps {
                None => Expr::Scalar(lit),
                Some((u, l)) if lit.value.is_one() && !imaginary => Expr::Eps(u, l),
                Some((u, l)) => Expr::Scale(lit, Box::new(Expr::Eps(u, l))),
            };
            terms.push((r.is_negative(), e));
        };
        push(&c.body().re, false, None);
        push(&c.body().im, true, None);
        for (id, v) in c.eps_terms() {
            push(&v.re, false, Some((id.upper, id.lower)));
            push(&v.im, true, Some((id.upper, id.lower)));
        }
        match terms.len() {
            0 => Expr::Scalar(Literal::real(Rational::zero())),
            1 if !terms[0].0 => terms.pop().unwrap().1,
            _ => Expr::Sum(terms),
        }
    }
}

fn join(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (k, e) in items.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

fn ends_in_literal(e: &Expr) -> bool {
    match e {
        Expr::Scalar(_) => true,
        Expr::Scale(_, inner) => ends_in_literal(inner),
        _ => false,
    }
}

/// Prints so that parsing the text yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Scalar(l) => write!(f, "{l}"),
            Expr::Eps(a, b) => write!(f, "eps({a}, {b})"),
            Expr::Theta(a) => write!(f, "th({a})"),
            Expr::Deriv(a) => write!(f, "d({a})"),
            Expr::Projector(k) => write!(f, "P({k})"),
            Expr::Identity => write!(f, "I"),
            Expr::Vacuum => write!(f, "vac"),
            Expr::Column(v) => {
                write!(f, "col(")?;
                join(f, v)?;
                write!(f, ")")
            }
            Expr::Row(v) => {
                write!(f, "row(")?;
                join(f, v)?;
                write!(f, ")")
            }
            Expr::Matrix(rows) => {
                write!(f, "mat(")?;
                for (k, r) in rows.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[")?;
                    join(f, r)?;
                    write!(f, "]")?;
                }
                write!(f, ")")
            }
            Expr::Sum(terms) => {
                for (k, (neg, e)) in terms.iter().enumerate() {
                    match (k, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if matches!(e, Expr::Sum(_)) {
                        write!(f, "({e})")?;
                    } else {
                        write!(f, "{e}")?;
                    }
                }
                Ok(())
            }
            Expr::Product(factors) => {
                let last = factors.len().saturating_sub(1);
                for (k, e) in factors.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    // a literal before `*` would otherwise read as a scale
                    let wrap = matches!(e, Expr::Sum(_) | Expr::Product(_))
                        || (k < last && ends_in_literal(e));
                    if wrap {
                        write!(f, "({e})")?;
                    } else {
                        write!(f, "{e}")?;
                    }
                }
                Ok(())
            }
            Expr::Scale(l, e) => {
                if matches!(**e, Expr::Sum(_) | Expr::Product(_)) {
                    write!(f, "{l}*({e})")
                } else {
                    write!(f, "{l}*{e}")
                }
            }
            Expr::Transpose(e) => write!(f, "T({e})"),
            Expr::Conjugate(e) => write!(f, "conj({e})"),
            Expr::Apply(a, b) => write!(f, "apply({a}, {b})"),
        }
    }
}
