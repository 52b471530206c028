use std::collections::HashMap;

use super::schema::Schema;
use crate::prop::{substitute_memo, PropFormula, Substitution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Axiom(Schema),
    /// `Mp(i, j)`: line `j` is `line_i ⊃ this`.
    Mp(u64, u64),
    /// Simultaneous substitution into line `i`.
    Sub(u64, Substitution),
    Premise(usize),
    Import(usize),
}

impl Rule {
    /// Line ids this rule cites.
    pub fn cites(&self) -> Vec<u64> {
        match self {
            Rule::Mp(i, j) => vec![*i, *j],
            Rule::Sub(i, _) => vec![*i],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub id: u64,
    pub formula: PropFormula,
    pub rule: Rule,
}

/// A line-structured derivation. `notes` are comments placed before the line
/// at the given position; checkers ignore them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Proof {
    pub premises: Vec<PropFormula>,
    pub lines: Vec<ProofLine>,
    pub notes: Vec<(usize, String)>,
}

impl Proof {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn conclusion(&self) -> Option<&PropFormula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// An imported tautology together with its proof in the base system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Imported {
    pub formula: PropFormula,
    pub base_proof: Vec<u8>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FPlusProof {
    pub imports: Vec<Imported>,
    pub derivation: Proof,
}

impl FPlusProof {
    pub fn conclusion(&self) -> Option<&PropFormula> {
        self.derivation.conclusion()
    }
}

fn sub_size(s: &Substitution) -> u64 {
    s.values().fold(0u64, |acc, f| {
        acc.saturating_add(1).saturating_add(f.symbol_size())
    })
}

/// Symbol count over all line formulas and substitution maps.
pub fn proof_size(p: &Proof) -> u64 {
    p.lines.iter().fold(0u64, |acc, l| {
        let extra = match &l.rule {
            Rule::Sub(_, s) => sub_size(s),
            _ => 0,
        };
        acc.saturating_add(l.formula.symbol_size())
            .saturating_add(extra)
    })
}

/// [`proof_size`] of the derivation plus each import's formula size and base
/// proof length in bytes.
pub fn fplus_size(p: &FPlusProof) -> u64 {
    p.imports
        .iter()
        .fold(proof_size(&p.derivation), |acc, imp| {
            acc.saturating_add(imp.formula.symbol_size())
                .saturating_add(imp.base_proof.len() as u64)
        })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {0} uses substitution; only axiom/MP/premise/import lines can be relabelled")]
pub struct SubstitutionLine(pub u64);

/// Applies `sigma` to every line and premise. Axiom instances stay instances
/// and modus ponens stays modus ponens, so a valid substitution-free proof
/// maps to a valid proof of the substituted conclusion.
pub fn substitute_proof(p: &Proof, sigma: &Substitution) -> Result<Proof, SubstitutionLine> {
    let mut memo = HashMap::new();
    let mut out = Proof {
        premises: p
            .premises
            .iter()
            .map(|f| substitute_memo(f, sigma, &mut memo))
            .collect(),
        lines: Vec::with_capacity(p.lines.len()),
        notes: p.notes.clone(),
    };
    for l in &p.lines {
        if let Rule::Sub(..) = l.rule {
            return Err(SubstitutionLine(l.id));
        }
        out.lines.push(ProofLine {
            id: l.id,
            formula: substitute_memo(&l.formula, sigma, &mut memo),
            rule: l.rule.clone(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_of_single_top_axiom() {
        let p = Proof {
            lines: vec![ProofLine {
                id: 1,
                formula: PropFormula::top(),
                rule: Rule::Axiom(Schema::Top),
            }],
            ..Proof::default()
        };
        assert_eq!(proof_size(&p), 1);
    }
}
