use serde::{Deserialize, Serialize};

use super::circuit::Circuit;
use super::formula_system::FormulaSystem;
use super::truth_table::TruthTableSystem;
use crate::encoding::{decode_formula, FormulaEncoding};
use crate::prop::{PropAtom, PropFormula};
use crate::sigma::{parse_formula, StringValue};

/// Output of a proof system: an encoded formula and the atom table its atom
/// indices refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computed {
    pub y: StringValue,
    pub atoms: Vec<PropAtom>,
}

impl Computed {
    /// The encoding of `⊤`.
    pub fn top() -> Computed {
        Computed {
            y: FormulaEncoding::of_formula(&PropFormula::top(), &[])
                .expect("one node")
                .to_string_value(),
            atoms: Vec::new(),
        }
    }

    pub fn formula(&self) -> PropFormula {
        decode_formula(&self.y, &self.atoms).expect("proof systems emit well-formed encodings")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("circuit for |U|={len_u}, |Y|={len_y} would exceed {cap} gates")]
    TooLarge { len_u: u64, len_y: u64, cap: usize },
    #[error("bad system description: {0}")]
    Descriptor(String),
}

/// Largest circuit any shipped system will build.
pub const GATE_CAP: usize = 4_000_000;

/// A proof system `g`: a total map from proof strings `U` to encoded
/// tautologies, together with verifier circuits for each pair of lengths.
pub trait ProofSystem: Send + Sync {
    fn name(&self) -> String;

    fn descriptor(&self) -> SystemDescriptor;

    fn compute(&self, u: &StringValue) -> Computed;

    /// A circuit over the payload bits of `U` (all but the top bit) whose
    /// accept bit is 1 exactly when `compute(U)` has length `len_y`, and
    /// whose output bits are then the payload bits of `compute(U)`.
    fn circuit(&self, len_u: u64, len_y: u64) -> Result<Circuit, SystemError>;
}

/// Serializable name of a system, used by files and the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "kebab-case")]
pub enum SystemDescriptor {
    TruthTable,
    /// `formula` in the bounded-formula syntax; `vars` are its string
    /// variables in the order their lengths are packed into `|U|`.
    Formula {
        formula: String,
        vars: Vec<String>,
    },
}

impl SystemDescriptor {
    pub fn instantiate(&self) -> Result<Box<dyn ProofSystem>, SystemError> {
        match self {
            SystemDescriptor::TruthTable => Ok(Box::new(TruthTableSystem)),
            SystemDescriptor::Formula { formula, vars } => {
                let phi =
                    parse_formula(formula).map_err(|e| SystemError::Descriptor(e.to_string()))?;
                FormulaSystem::new(phi, vars.clone())
                    .map(|s| Box::new(s) as Box<dyn ProofSystem>)
                    .map_err(|e| SystemError::Descriptor(e.to_string()))
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<Self, SystemError> {
        serde_json::from_str(s).map_err(|e| SystemError::Descriptor(e.to_string()))
    }
}
