//! Exact symbolic expressions: rational functions in variables, exponentials
//! of rational arguments, and opaque function symbols, kept in a canonical
//! form where structural equality decides mathematical equality.

mod atom;
mod display;
#[allow(clippy::module_inception)]
mod expr;
mod gcd;
mod monomial;
mod parser;
mod poly;

pub use atom::{Atom, FuncAtom};
pub use expr::Expr;
pub use monomial::Monomial;
pub use parser::parse_expr;
pub(crate) use parser::{parse_expr_tokens, parse_expr_with_derivations, Lexer, Token};
pub use poly::{rat, ratio, Poly, Rat};
