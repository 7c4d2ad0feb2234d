use num::One;

use super::ast::{Expr, Literal};
use super::lexer::{error, tokenize, Spanned, Tok};
use crate::error::{ParseError, Result};
use crate::grassmann::AlgebraSignature;
use crate::scalar::Rational;

/// Parses `source` and checks every index against `sig`.
pub fn parse(source: &str, sig: AlgebraSignature) -> Result<Expr> {
    let toks = tokenize(source)?;
    let mut p = Parser { toks, pos: 0, sig };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::Eof {
        return Err(error(t.line, t.column, format!("unexpected {}", t.tok.describe())).into());
    }
    Ok(e)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    sig: AlgebraSignature,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        let t = self.next();
        if t.tok == tok {
            Ok(())
        } else {
            Err(error(
                t.line,
                t.column,
                format!("expected {}, found {}", tok.describe(), t.tok.describe()),
            ))
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let leading_minus = self.peek().tok == Tok::Minus;
        if leading_minus {
            self.next();
        }
        let mut terms = vec![(leading_minus, self.term()?)];
        loop {
            let neg = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.next();
            terms.push((neg, self.term()?));
        }
        if terms.len() == 1 && !leading_minus {
            Ok(terms.pop().unwrap().1)
        } else {
            Ok(Expr::Sum(terms))
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut factors = vec![self.factor()?];
        while self.peek().tok == Tok::Star {
            self.next();
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            Ok(Expr::Product(factors))
        }
    }

    fn literal(&mut self) -> Option<Literal> {
        let lit = match &self.peek().tok {
            Tok::Number {
                value, imaginary, ..
            } => Literal {
                value: value.clone(),
                imaginary: *imaginary,
            },
            Tok::Ident(s) if s == "i" => Literal::imag(Rational::one()),
            _ => return None,
        };
        self.next();
        Some(lit)
    }

    fn factor(&mut self) -> PResult<Expr> {
        if let Some(lit) = self.literal() {
            if self.peek().tok == Tok::Star {
                self.next();
                return Ok(Expr::Scale(lit, Box::new(self.factor()?)));
            }
            return Ok(Expr::Scalar(lit));
        }
        let t = self.next();
        match t.tok {
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => self.named(&name, t.line, t.column),
            other => Err(error(
                t.line,
                t.column,
                format!("unexpected {}", other.describe()),
            )),
        }
    }

    fn named(&mut self, name: &str, line: usize, column: usize) -> PResult<Expr> {
        match name {
            "I" => return Ok(Expr::Identity),
            "vac" => return Ok(Expr::Vacuum),
            _ => {}
        }
        let known = [
            "th", "d", "P", "eps", "T", "conj", "col", "row", "mat", "apply",
        ];
        if !known.contains(&name) {
            return Err(error(line, column, format!("unknown symbol `{name}`")));
        }
        self.expect(Tok::LParen)?;
        let n = self.sig.n_total();
        let e = match name {
            "th" => Expr::Theta(self.index(1, n)?),
            "d" => Expr::Deriv(self.index(1, n)?),
            "P" => Expr::Projector(self.index(0, n)?),
            "eps" => {
                let a = self.index(1, n)?;
                self.expect(Tok::Comma)?;
                Expr::Eps(a, self.index(1, n)?)
            }
            "T" => Expr::Transpose(Box::new(self.expr()?)),
            "conj" => Expr::Conjugate(Box::new(self.expr()?)),
            "col" => Expr::Column(self.list()?),
            "row" => Expr::Row(self.list()?),
            "apply" => {
                let op = self.expr()?;
                self.expect(Tok::Comma)?;
                Expr::Apply(Box::new(op), Box::new(self.expr()?))
            }
            "mat" => {
                let mut rows = Vec::new();
                loop {
                    let t = self.peek().clone();
                    self.expect(Tok::LBracket)?;
                    let row = self.list()?;
                    self.expect(Tok::RBracket)?;
                    if rows
                        .first()
                        .is_some_and(|r: &Vec<Expr>| r.len() != row.len())
                    {
                        return Err(error(t.line, t.column, "matrix rows differ in length"));
                    }
                    rows.push(row);
                    if self.peek().tok != Tok::Comma {
                        break;
                    }
                    self.next();
                }
                Expr::Matrix(rows)
            }
            _ => unreachable!(),
        };
        self.expect(Tok::RParen)?;
        Ok(e)
    }

    fn list(&mut self) -> PResult<Vec<Expr>> {
        let mut items = vec![self.expr()?];
        while self.peek().tok == Tok::Comma {
            self.next();
            items.push(self.expr()?);
        }
        Ok(items)
    }

    fn index(&mut self, lo: u8, hi: u8) -> PResult<u8> {
        let t = self.next();
        match &t.tok {
            Tok::Number {
                value,
                integer: true,
                ..
            } => {
                let v = value.numer();
                match u8::try_from(v.clone()) {
                    Ok(k) if (lo..=hi).contains(&k) => Ok(k),
                    _ => Err(error(
                        t.line,
                        t.column,
                        format!("index {v} out of range {lo}..={hi}"),
                    )),
                }
            }
            other => Err(error(
                t.line,
                t.column,
                format!("expected an integer index, found {}", other.describe()),
            )),
        }
    }
}
