//! Base proof systems for f+ imports.
//!
//! Base proofs are self-tagged byte strings `<tag>\n<body>`, so one verifier
//! can dispatch on the tag.

use crate::prop::{atom_cap, fold, is_tautology_with_cap, parse_prop, PropFormula};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct BaseError(pub String);

/// A proof system `f`: a deterministic, total verifier from proof bytes to
/// the formula proved.
pub trait BaseSystem: Sync {
    fn name(&self) -> &str;
    fn verify(&self, proof: &[u8]) -> Result<PropFormula, BaseError>;
}

/// Splits `<tag>\n<body>`.
pub fn split_tagged(bytes: &[u8]) -> Result<(&str, &[u8]), BaseError> {
    let nl = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| BaseError("missing tag line".into()))?;
    let tag =
        std::str::from_utf8(&bytes[..nl]).map_err(|_| BaseError("tag is not UTF-8".into()))?;
    Ok((tag, &bytes[nl + 1..]))
}

pub fn tagged(tag: &str, body: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(tag.len() + 1 + body.len());
    out.extend_from_slice(tag.as_bytes());
    out.push(b'\n');
    out.extend_from_slice(body);
    out
}

/// Proofs are a formula followed by its full truth table (`1` per row). The
/// verifier recomputes the table by brute force on the constant-folded
/// formula, so it only accepts formulas within the oracle atom cap.
#[derive(Debug, Clone, Copy, Default)]
pub struct TruthTableBase;

impl TruthTableBase {
    pub const TAG: &'static str = "truth-table";

    /// A proof of `f`, or `None` if `f` is not a tautology within the cap.
    pub fn prove(f: &PropFormula) -> Option<Vec<u8>> {
        let k = f.atoms().len();
        if k > atom_cap().min(62) || !is_tautology_with_cap(&fold(f), atom_cap()).ok()? {
            return None;
        }
        let mut body = format!("{f}\n").into_bytes();
        body.resize(body.len() + (1usize << k), b'1');
        Some(tagged(Self::TAG, &body))
    }

    pub fn verify_body(body: &[u8]) -> Result<PropFormula, BaseError> {
        let text = std::str::from_utf8(body).map_err(|_| BaseError("body is not UTF-8".into()))?;
        let (ftext, table) = text
            .split_once('\n')
            .ok_or_else(|| BaseError("missing truth table".into()))?;
        let f = parse_prop(ftext).map_err(|e| BaseError(e.to_string()))?;
        let k = f.atoms().len();
        if k > atom_cap().min(62) || table.len() as u64 != 1u64 << k {
            return Err(BaseError(format!(
                "table has {} rows, want 2^{k}",
                table.len()
            )));
        }
        if table.bytes().any(|b| b != b'1') {
            return Err(BaseError("table has a false row".into()));
        }
        match is_tautology_with_cap(&fold(&f), atom_cap()) {
            Ok(true) => Ok(f),
            Ok(false) => Err(BaseError("table disagrees with the formula".into())),
            Err(e) => Err(BaseError(e.to_string())),
        }
    }
}

impl BaseSystem for TruthTableBase {
    fn name(&self) -> &str {
        Self::TAG
    }

    fn verify(&self, proof: &[u8]) -> Result<PropFormula, BaseError> {
        match split_tagged(proof)? {
            (Self::TAG, body) => Self::verify_body(body),
            (t, _) => Err(BaseError(format!("unknown base tag `{t}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_table_round_trip() {
        let f = parse_prop("(| q1 (~ q1))").unwrap();
        let pr = TruthTableBase::prove(&f).unwrap();
        assert_eq!(TruthTableBase.verify(&pr).unwrap(), f);
        assert!(TruthTableBase::prove(&parse_prop("q1").unwrap()).is_none());
    }

    #[test]
    fn forged_table_rejected() {
        let forged = tagged(TruthTableBase::TAG, b"q1\n11");
        assert!(TruthTableBase.verify(&forged).is_err());
        assert!(TruthTableBase.verify(b"garbage").is_err());
        assert!(TruthTableBase.verify(&tagged("other", b"T\n1")).is_err());
    }
}
