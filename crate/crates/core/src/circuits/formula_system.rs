//! The proof system whose proofs of `φ(X⃗)[n⃗]` are strings of a length that
//! packs `n⃗` (Cantor pairing for two or more variables); payload bits are
//! ignored.

use super::circuit::Circuit;
use super::system::{Computed, ProofSystem, SystemDescriptor, SystemError};
use crate::encoding::FormulaEncoding;
use crate::prop::{atom_cap, is_tautology_with_cap, PropAtom, PropFormula};
use crate::sigma::{Formula, StringValue};
use crate::translation::{translate, LengthProfile};

#[derive(Debug, Clone)]
pub struct FormulaSystem {
    phi: Formula,
    vars: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaSystemError {
    #[error("free number variable `{0}`")]
    FreeNumber(String),
    #[error("string variable `{0}` is not in the variable list")]
    Unlisted(String),
    #[error("variable `{0}` listed twice")]
    Duplicate(String),
}

/// Why a length vector fails validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flag {
    NotTautology,
    TooManyAtoms(usize),
}

fn isqrt(z: u64) -> u64 {
    let mut r = (z as f64).sqrt() as u64;
    while r * r > z {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= z {
        r += 1;
    }
    r
}

pub fn cantor_pair(a: u64, b: u64) -> u64 {
    (a + b) * (a + b + 1) / 2 + b
}

pub fn cantor_unpair(z: u64) -> (u64, u64) {
    let w = (isqrt(8 * z + 1) - 1) / 2;
    let t = w * (w + 1) / 2;
    let b = z - t;
    (w - b, b)
}

impl FormulaSystem {
    pub fn new(phi: Formula, vars: Vec<String>) -> Result<Self, FormulaSystemError> {
        let (nums, strs) = phi.free_variables();
        if let Some(n) = nums.into_iter().next() {
            return Err(FormulaSystemError::FreeNumber(n));
        }
        if let Some(s) = strs.into_iter().find(|s| !vars.contains(s)) {
            return Err(FormulaSystemError::Unlisted(s));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(FormulaSystemError::Duplicate(v.clone()));
            }
        }
        Ok(FormulaSystem { phi, vars })
    }

    pub fn formula(&self) -> &Formula {
        &self.phi
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// The lengths packed into a proof of length `len_u`.
    pub fn lengths(&self, len_u: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.vars.len());
        let mut z = len_u;
        for k in (0..self.vars.len()).rev() {
            if k == 0 {
                out.push(z);
            } else {
                let (a, rest) = cantor_unpair(z);
                out.push(a);
                z = rest;
            }
        }
        out
    }

    pub fn pack(&self, lengths: &[u64]) -> u64 {
        assert_eq!(lengths.len(), self.vars.len(), "one length per variable");
        match lengths.split_last() {
            None => 0,
            Some((last, init)) => init.iter().rev().fold(*last, |z, a| cantor_pair(*a, z)),
        }
    }

    /// The proof of `φ[n⃗]`: an all-zero payload of the packed length.
    pub fn proof_for(&self, lengths: &[u64]) -> StringValue {
        match self.pack(lengths) {
            0 => StringValue::empty(),
            l => StringValue::with_sentinel(&vec![false; l as usize - 1]),
        }
    }

    pub fn profile(&self, lengths: &[u64]) -> LengthProfile {
        self.vars
            .iter()
            .zip(lengths)
            .fold(LengthProfile::new(), |p, (v, n)| p.with_len(v, *n))
    }

    pub fn translation(&self, lengths: &[u64]) -> Option<PropFormula> {
        translate(&self.phi, &self.profile(lengths)).ok()
    }

    fn output(&self, len_u: u64) -> Computed {
        let Some(t) = self.translation(&self.lengths(len_u)) else {
            return Computed::top();
        };
        let atoms: Vec<PropAtom> = t.atoms().into_iter().collect();
        match FormulaEncoding::of_formula(&t, &atoms) {
            Ok(enc) => Computed {
                y: enc.to_string_value(),
                atoms,
            },
            Err(_) => Computed::top(),
        }
    }

    /// Every length vector with entries `≤ max_len` whose translation is not
    /// a tautology (or too large for the oracle).
    pub fn validate(&self, max_len: u64) -> Vec<(Vec<u64>, Flag)> {
        let k = self.vars.len();
        let mut flagged = Vec::new();
        let mut lens = vec![0u64; k];
        loop {
            if let Some(t) = self.translation(&lens) {
                match is_tautology_with_cap(&t, atom_cap()) {
                    Ok(true) => {}
                    Ok(false) => flagged.push((lens.clone(), Flag::NotTautology)),
                    Err(e) => flagged.push((lens.clone(), Flag::TooManyAtoms(e.atoms))),
                }
            }
            // odometer
            let mut i = 0;
            while i < k && lens[i] == max_len {
                lens[i] = 0;
                i += 1;
            }
            if i == k {
                return flagged;
            }
            lens[i] += 1;
        }
    }
}

impl ProofSystem for FormulaSystem {
    fn name(&self) -> String {
        format!("formula {}", self.phi)
    }

    fn descriptor(&self) -> SystemDescriptor {
        SystemDescriptor::Formula {
            formula: self.phi.to_string(),
            vars: self.vars.clone(),
        }
    }

    fn compute(&self, u: &StringValue) -> Computed {
        self.output(u.length())
    }

    fn circuit(&self, len_u: u64, len_y: u64) -> Result<Circuit, SystemError> {
        let out = self.output(len_u);
        let mut c = Circuit::new();
        for _ in 1..len_u {
            c.input();
        }
        let accept = c.constant(out.y.length() == len_y);
        let mut ybits: Vec<usize> = out.y.payload().iter().map(|b| c.constant(*b)).collect();
        let pad = c.constant(false);
        ybits.resize(len_y.saturating_sub(1) as usize, pad);
        c.set_accept(accept);
        c.set_ybits(ybits);
        Ok(c)
    }
}
