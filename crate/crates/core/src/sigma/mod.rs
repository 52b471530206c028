//! Two-sorted bounded formulas: number terms with `|X|`, string membership
//! atoms, and bounded number quantifiers only.
//!
//! Text grammar (one S-expression per term or formula):
//!
//! ```text
//! term := 0 | 1 | numeral | numvar | (+ t t) | (* t t) | (len STRVAR)
//! fmla := (= t t) | (<= t t) | (in STRVAR t) | (not f) | (and f f)
//!       | (or f f) | (imp f f) | (all numvar t f) | (ex numvar t f)
//! ```
//!
//! Number variables are lowercase identifiers, string variables uppercase.

mod ast;
mod eval;
mod parse;
mod string_value;

pub use ast::{balanced, Formula, Term};
pub use eval::{eval_formula, eval_term, Environment, EvalError};
pub use parse::{parse_formula, parse_term, ParseError};
pub use string_value::StringValue;
