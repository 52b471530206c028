//! Propositional formulas over string-bit and named atoms.
//!
//! Text format: `T`, `F`, `qNAME`, `pX.i`, `(~ f)`, `(& f f)`, `(| f f)`,
//! `(> f f)`.

mod atom;
mod formula;
mod ops;
mod oracle;
mod text;

pub use atom::PropAtom;
pub use formula::{Kind, PropFormula};
pub use ops::{
    eval_closed, eval_prop, fold, subformulas, substitute, substitute_memo, MissingAtom,
    PropAssignment, Substitution,
};
pub use oracle::{
    atom_cap, counterexample_with_cap, is_tautology_bruteforce, is_tautology_with_cap,
    AtomCapExceeded, DEFAULT_ATOM_CAP,
};
pub use text::{parse_atom, parse_prop, prop_from_sexp, read_prop};
