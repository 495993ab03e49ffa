//! Terms, equations and quasi-identities: syntax, printing and evaluation.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! qi   ::= eq ("&" eq)* "=>" eq | eq
//! eq   ::= term "=" term
//! term ::= "x"<digits> | name "(" term ("," term)* ")" | name
//! ```

mod ast;
mod eval;
mod parse;

pub use ast::{var_count, Equation, QuasiIdentity, Term, TermDisplay};
pub(crate) use eval::{equation_holds, eval_unchecked};
pub use eval::{eval_term, find_falsifying_assignment, holds_in_algebra};
pub use parse::{parse_equation, parse_quasi_identity, parse_term, ParseError};
