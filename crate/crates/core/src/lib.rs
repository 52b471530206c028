pub mod circuits;
pub mod cli;
pub mod encoding;
pub mod frege;
pub mod prop;
pub mod sexp;
pub mod sigma;
pub mod simulation;
pub mod translation;
