//! Frege, substitution Frege and f+ proofs: schemas, proof objects, the
//! checker, the file format, and proof generators.

mod base;
mod builder;
mod check;
mod generators;
mod proof;
mod schema;
mod text;

pub use base::{split_tagged, tagged, BaseError, BaseSystem, TruthTableBase};
pub use builder::ProofBuilder;
pub use check::{
    check_derivation, check_fplus, check_fplus_with, check_proof, CheckOptions, FPlusRejection,
    Location, Reason, Rejection,
};
pub use generators::{
    excluded_middle, prove_closed, prove_equiv_chain, prove_fold_equiv, prove_trivial, reachable,
    GenError,
};
pub use proof::{
    fplus_size, proof_size, substitute_proof, FPlusProof, Imported, Proof, ProofLine, Rule,
    SubstitutionLine,
};
pub use schema::Schema;
pub use text::{parse_fplus, parse_proof, render_fplus, render_proof, ProofParseError};
