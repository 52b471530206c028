//! Proof systems given as circuit families, the formula `φ_g(U,Y,W)` saying
//! `W` is a run of `g`'s verifier on `U` with output `Y`, and `Sound_g`.
//!
//! Circuit text format: one gate per line, `<id> <OP> [inputs...]` with
//! `OP` one of `INPUT`, `CONST0`, `CONST1`, `NOT`, `AND`, `OR`, then the
//! trailer lines `ACCEPT <id>` and `YBITS <id>...`.

mod circuit;
mod formula_system;
mod phi;
mod system;
mod truth_table;

pub use circuit::{run_circuit, Circuit, CircuitError, CircuitParseError, Gate, Trace};
pub use formula_system::{cantor_pair, cantor_unpair, Flag, FormulaSystem, FormulaSystemError};
pub use phi::{
    build_sound_g, gen_phi_g, instance, phi_of_circuit, sound_g_from_parts, witness_len, Instance,
    SoundError, SoundProfile,
};
pub use system::{Computed, ProofSystem, SystemDescriptor, SystemError, GATE_CAP};
pub use truth_table::{parse_len, table_atoms, TruthTableError, TruthTableSystem, MAX_ATOMS};
