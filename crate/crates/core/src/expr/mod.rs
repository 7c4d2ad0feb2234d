//! A small expression language for states and operators.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := scalar '*' factor | 'T(' expr ')' | 'conj(' expr ')'
//!         | '(' expr ')' | atom
//! atom   := 'th(' int ')' | 'd(' int ')' | 'P(' int ')' | 'I' | 'vac'
//!         | 'eps(' int ',' int ')' | scalar
//!         | 'col(' expr, ... ')' | 'row(' expr, ... ')'
//!         | 'mat(' '[' expr, ... ']', ... ')' | 'apply(' expr ',' expr ')'
//! scalar := rational ['i'] | 'i'
//! ```
//!
//! `eps(a, b)` is the mixing parameter with upper index `a` and lower index
//! `b`; one must be primed and the other additional, and the reversed
//! orientation evaluates to the negated unit.

mod ast;
mod eval;
mod lexer;
mod parser;

pub use ast::{Expr, Literal};
pub use eval::{evaluate, Value};
pub use parser::parse;
