use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use super::base::BaseSystem;
use super::proof::{FPlusProof, Proof, Rule};
use crate::prop::{substitute, Kind, PropFormula};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Premise(usize),
    Line(u64),
    /// The proof as a whole (e.g. no lines at all).
    Proof,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Premise(k) => write!(f, "premise {k}"),
            Location::Line(id) => write!(f, "line {id}"),
            Location::Proof => write!(f, "proof"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    Empty,
    DuplicateId,
    /// Cites an id that is not an earlier line.
    BadReference(u64),
    NotAnInstance,
    /// The major premise of modus ponens is not an implication.
    MpShape,
    MpMismatch,
    SubMismatch,
    /// Strict mode: substitution into a line that does not depend on any
    /// import or premise.
    SubTarget,
    NoSuchPremise(usize),
    PremiseMismatch,
    PremiseNotAllowed,
    NoSuchImport(usize),
    ImportMismatch,
}

impl Reason {
    pub fn code(&self) -> &'static str {
        match self {
            Reason::Empty => "empty",
            Reason::DuplicateId => "duplicate-id",
            Reason::BadReference(_) => "bad-reference",
            Reason::NotAnInstance => "not-an-instance",
            Reason::MpShape => "mp-shape",
            Reason::MpMismatch => "mp-mismatch",
            Reason::SubMismatch => "sub-mismatch",
            Reason::SubTarget => "sub-target",
            Reason::NoSuchPremise(_) => "no-such-premise",
            Reason::PremiseMismatch => "premise-mismatch",
            Reason::PremiseNotAllowed => "premise-not-allowed",
            Reason::NoSuchImport(_) => "no-such-import",
            Reason::ImportMismatch => "import-mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("rejected at {at}: {}", .reason.code())]
pub struct Rejection {
    pub at: Location,
    pub reason: Reason,
}

fn reject(at: Location, reason: Reason) -> Rejection {
    Rejection { at, reason }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Only allow substitution into lines that depend on an import or a
    /// premise.
    pub strict_substitution: bool,
    pub parallel: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            strict_substitution: false,
            parallel: true,
        }
    }
}

/// Checks a derivation with no imports.
pub fn check_proof(p: &Proof, allowed_premises: &[PropFormula]) -> Result<(), Rejection> {
    check_derivation(p, allowed_premises, &[], CheckOptions::default())
}

/// Checks every line locally. `imports[k]` is the formula an `IMPORT k` line
/// must carry.
pub fn check_derivation(
    p: &Proof,
    allowed_premises: &[PropFormula],
    imports: &[PropFormula],
    opts: CheckOptions,
) -> Result<(), Rejection> {
    for (k, prem) in p.premises.iter().enumerate() {
        if !allowed_premises.contains(prem) {
            return Err(reject(Location::Premise(k), Reason::PremiseNotAllowed));
        }
    }
    if p.lines.is_empty() {
        return Err(reject(Location::Proof, Reason::Empty));
    }

    // Structural pass: ids, references and (for strict mode) which lines
    // descend from an import or premise.
    let mut index: HashMap<u64, usize> = HashMap::with_capacity(p.lines.len());
    let mut rooted = vec![false; p.lines.len()];
    let mut structural: Option<(usize, Rejection)> = None;
    for (pos, line) in p.lines.iter().enumerate() {
        let at = Location::Line(line.id);
        if index.contains_key(&line.id) {
            structural = Some((pos, reject(at, Reason::DuplicateId)));
            break;
        }
        let mut cited = Vec::new();
        for c in line.rule.cites() {
            match index.get(&c) {
                Some(&q) => cited.push(q),
                None => {
                    structural = Some((pos, reject(at, Reason::BadReference(c))));
                    break;
                }
            }
        }
        if structural.is_some() {
            break;
        }
        rooted[pos] = match line.rule {
            Rule::Premise(_) | Rule::Import(_) => true,
            _ => cited.iter().any(|&q| rooted[q]),
        };
        index.insert(line.id, pos);
    }
    let upto = structural.as_ref().map_or(p.lines.len(), |(pos, _)| *pos);

    let formula_at = |id: u64| &p.lines[index[&id]].formula;
    let local = |pos: usize| -> Option<Rejection> {
        let line = &p.lines[pos];
        let at = Location::Line(line.id);
        let f = &line.formula;
        let bad = |r| Some(reject(at, r));
        match &line.rule {
            Rule::Axiom(s) => (!s.matches(f)).then(|| reject(at, Reason::NotAnInstance)),
            Rule::Mp(i, j) => match formula_at(*j).kind() {
                Kind::Imp(a, b) => {
                    (a != formula_at(*i) || b != f).then(|| reject(at, Reason::MpMismatch))
                }
                _ => bad(Reason::MpShape),
            },
            Rule::Sub(i, sigma) => {
                if opts.strict_substitution && !rooted[index[i]] {
                    return bad(Reason::SubTarget);
                }
                (substitute(formula_at(*i), sigma) != *f).then(|| reject(at, Reason::SubMismatch))
            }
            Rule::Premise(k) => match p.premises.get(*k) {
                None => bad(Reason::NoSuchPremise(*k)),
                Some(g) => (g != f).then(|| reject(at, Reason::PremiseMismatch)),
            },
            Rule::Import(k) => match imports.get(*k) {
                None => bad(Reason::NoSuchImport(*k)),
                Some(g) => (g != f).then(|| reject(at, Reason::ImportMismatch)),
            },
        }
    };

    let first_local = if opts.parallel {
        (0..upto).into_par_iter().find_map_first(local)
    } else {
        (0..upto).find_map(local)
    };
    match (first_local, structural) {
        (Some(r), _) => Err(r),
        (None, Some((_, r))) => Err(r),
        (None, None) => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FPlusRejection {
    #[error("import {k}: base proof rejected: {msg}")]
    ImportRejected { k: usize, msg: String },
    #[error("import {k}: base proof verifies to a different formula")]
    ImportMismatch { k: usize },
    #[error("derivation {0}")]
    Derivation(Rejection),
}

/// Verifies every import under `base`, then checks the derivation with the
/// imports available to `IMPORT` lines and no premises.
pub fn check_fplus(p: &FPlusProof, base: &dyn BaseSystem) -> Result<(), FPlusRejection> {
    check_fplus_with(p, base, &[], CheckOptions::default())
}

pub fn check_fplus_with(
    p: &FPlusProof,
    base: &dyn BaseSystem,
    allowed_premises: &[PropFormula],
    opts: CheckOptions,
) -> Result<(), FPlusRejection> {
    let verdicts: Vec<Result<(), FPlusRejection>> = p
        .imports
        .par_iter()
        .enumerate()
        .map(|(k, imp)| match base.verify(&imp.base_proof) {
            Err(e) => Err(FPlusRejection::ImportRejected {
                k,
                msg: e.to_string(),
            }),
            Ok(g) if g != imp.formula => Err(FPlusRejection::ImportMismatch { k }),
            Ok(_) => Ok(()),
        })
        .collect();
    verdicts.into_iter().collect::<Result<(), _>>()?;
    let formulas: Vec<PropFormula> = p.imports.iter().map(|i| i.formula.clone()).collect();
    check_derivation(&p.derivation, allowed_premises, &formulas, opts)
        .map_err(FPlusRejection::Derivation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frege::{ProofLine, Schema};
    use crate::prop::{parse_prop, PropAtom, Substitution};

    fn p(s: &str) -> PropFormula {
        parse_prop(s).unwrap()
    }

    fn line(id: u64, f: &str, rule: Rule) -> ProofLine {
        ProofLine {
            id,
            formula: p(f),
            rule,
        }
    }

    #[test]
    fn single_axiom_accepted() {
        let pr = Proof {
            lines: vec![line(1, "(> q1 (> q2 q1))", Rule::Axiom(Schema::K))],
            ..Proof::default()
        };
        assert_eq!(check_proof(&pr, &[]), Ok(()));
    }

    #[test]
    fn mp_on_non_implication() {
        let pr = Proof {
            premises: vec![p("q1")],
            lines: vec![
                line(1, "q1", Rule::Premise(0)),
                line(2, "q2", Rule::Mp(1, 1)),
            ],
            ..Proof::default()
        };
        let err = check_proof(&pr, &[p("q1")]).unwrap_err();
        assert_eq!(err.at, Location::Line(2));
        assert_eq!(err.reason.code(), "mp-shape");
    }

    #[test]
    fn premises_must_be_allowed() {
        let pr = Proof {
            premises: vec![p("q1")],
            lines: vec![line(1, "q1", Rule::Premise(0))],
            ..Proof::default()
        };
        assert_eq!(
            check_proof(&pr, &[]).unwrap_err().reason,
            Reason::PremiseNotAllowed
        );
    }

    #[test]
    fn references_must_be_earlier() {
        let pr = Proof {
            lines: vec![
                line(1, "q2", Rule::Mp(2, 3)),
                line(2, "T", Rule::Axiom(Schema::Top)),
            ],
            ..Proof::default()
        };
        let err = check_proof(&pr, &[]).unwrap_err();
        assert_eq!(err.reason, Reason::BadReference(2));
    }

    #[test]
    fn first_failure_wins_in_parallel() {
        let mut lines = vec![line(1, "T", Rule::Axiom(Schema::Top))];
        for id in 2..200 {
            lines.push(line(id, "q1", Rule::Axiom(Schema::Top)));
        }
        let pr = Proof {
            lines,
            ..Proof::default()
        };
        let seq = check_derivation(
            &pr,
            &[],
            &[],
            CheckOptions {
                parallel: false,
                ..CheckOptions::default()
            },
        );
        assert_eq!(check_proof(&pr, &[]), seq);
        assert_eq!(seq.unwrap_err().at, Location::Line(2));
    }

    #[test]
    fn strict_substitution_needs_an_imported_ancestor() {
        let mut sigma = Substitution::new();
        sigma.insert(PropAtom::q(1), p("q3"));
        let pr = Proof {
            lines: vec![
                line(1, "(> q1 (> q2 q1))", Rule::Axiom(Schema::K)),
                line(2, "(> q3 (> q2 q3))", Rule::Sub(1, sigma.clone())),
            ],
            ..Proof::default()
        };
        assert_eq!(check_proof(&pr, &[]), Ok(()));
        let strict = CheckOptions {
            strict_substitution: true,
            ..CheckOptions::default()
        };
        assert_eq!(
            check_derivation(&pr, &[], &[], strict).unwrap_err().reason,
            Reason::SubTarget
        );
        let imported = Proof {
            lines: vec![
                line(1, "(> q1 (> q2 q1))", Rule::Import(0)),
                line(2, "(> q3 (> q2 q3))", Rule::Sub(1, sigma)),
            ],
            ..Proof::default()
        };
        assert_eq!(
            check_derivation(&imported, &[], &[p("(> q1 (> q2 q1))")], strict),
            Ok(())
        );
    }
}
