//! Formulas as bit strings, the evaluation formula `Eval(X,Y,Z)`, traces,
//! and proofs of the instantiated `Eval′`.
//!
//! # Layout
//!
//! A formula is stored as the list of its distinct subformulas (DAG nodes)
//! in [`subformulas`] order: node 0 is the root and every child comes after
//! its parent. With `N` nodes and `ℓ` atoms the string has length
//! `4N + 3N² + 1`; all indices below are bit positions.
//!
//! ```text
//! 4i + c               bit c (least significant first) of node i's kind code
//! 4N + iN + j          node i's left (or only) child is node j
//! 4N + N² + iN + j     node i's right child is node j
//! 4N + 2N² + iN + a    node i is atom a
//! 4N + 3N²             sentinel, always 1
//! ```
//!
//! Kind codes: `1` ⊤, `2` ⊥, `3` atom, `4` ¬, `5` ∧, `6` ∨, `7` ⊃. Each child
//! or atom row is one-hot (exactly one bit set) when the kind needs it and
//! all zero otherwise; child columns must be greater than the row. Atom
//! index `a` names `table[a]` for an atom table supplied by the caller.
//! Since `ℓ ≤ N` for any encoded formula, an `N × N` atom matrix suffices.
//!
//! [`subformulas`]: crate::prop::subformulas

mod eval;

pub use eval::{
    compute_eval_trace, eval_profile, eval_substitution, generate_eval, instantiated_eval,
    prove_eval_prime, EvalPrime, EvalPrimeError,
};

use std::collections::HashMap;

use crate::prop::{subformulas, Kind, PropAtom, PropFormula};
use crate::sigma::StringValue;

/// Largest node count accepted by the encoder.
pub const NODE_CAP: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    True = 1,
    False = 2,
    Atom = 3,
    Not = 4,
    And = 5,
    Or = 6,
    Imp = 7,
}

impl NodeKind {
    pub const ALL: [NodeKind; 7] = [
        NodeKind::True,
        NodeKind::False,
        NodeKind::Atom,
        NodeKind::Not,
        NodeKind::And,
        NodeKind::Or,
        NodeKind::Imp,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(c: u8) -> Option<NodeKind> {
        NodeKind::ALL.get((c as usize).wrapping_sub(1)).copied()
    }

    pub fn has_left(self) -> bool {
        matches!(
            self,
            NodeKind::Not | NodeKind::And | NodeKind::Or | NodeKind::Imp
        )
    }

    pub fn has_right(self) -> bool {
        matches!(self, NodeKind::And | NodeKind::Or | NodeKind::Imp)
    }
}

/// Bit positions for an `N`-node encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub nodes: usize,
}

impl Layout {
    pub fn new(nodes: usize) -> Self {
        Layout { nodes }
    }

    /// The layout whose strings have length `len`, if any.
    pub fn from_len(len: u64) -> Option<Layout> {
        // 3N² + 4N + 1 = len
        let mut n = 0u64;
        loop {
            let l = 3 * n * n + 4 * n + 1;
            if l == len {
                return Some(Layout::new(n as usize));
            }
            if l > len {
                return None;
            }
            n += 1;
        }
    }

    pub fn kind_bit(&self, i: usize, c: usize) -> usize {
        4 * i + c
    }

    pub fn left(&self, i: usize, j: usize) -> usize {
        let n = self.nodes;
        4 * n + i * n + j
    }

    pub fn right(&self, i: usize, j: usize) -> usize {
        let n = self.nodes;
        4 * n + n * n + i * n + j
    }

    pub fn atom(&self, i: usize, a: usize) -> usize {
        let n = self.nodes;
        4 * n + 2 * n * n + i * n + a
    }

    /// Bits before the sentinel.
    pub fn payload_len(&self) -> usize {
        let n = self.nodes;
        4 * n + 3 * n * n
    }

    pub fn len(&self) -> usize {
        self.payload_len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeRecord {
    pub kind: NodeKind,
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub atom: Option<usize>,
}

impl NodeRecord {
    fn leaf(kind: NodeKind) -> Self {
        NodeRecord {
            kind,
            left: None,
            right: None,
            atom: None,
        }
    }
}

/// A decoded node array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaEncoding {
    pub nodes: Vec<NodeRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodeError {
    #[error("atoms are not q0..q(l-1): {0}")]
    NonContiguous(String),
    #[error("atom {0} is not in the atom table")]
    UnknownAtom(PropAtom),
    #[error("{0} nodes exceeds the node cap of {NODE_CAP}")]
    NodeCap(usize),
    #[error("atom index {0} does not fit a {1}-node encoding")]
    AtomIndex(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("length {0} is not 3N²+4N+1 for any N ≥ 1")]
    Length(u64),
    #[error("node {0}: bad kind code {1}")]
    Kind(usize, u8),
    #[error("node {0}: malformed left-child row")]
    Left(usize),
    #[error("node {0}: malformed right-child row")]
    Right(usize),
    #[error("node {0}: malformed atom row")]
    Atom(usize),
}

/// `q0 .. q(l-1)`.
pub fn default_atoms(l: usize) -> Vec<PropAtom> {
    (0..l).map(PropAtom::q).collect()
}

impl FormulaEncoding {
    /// Encodes `f` with atom `a` standing for `table[a]`.
    pub fn of_formula(f: &PropFormula, table: &[PropAtom]) -> Result<Self, EncodeError> {
        let subs = subformulas(f);
        if subs.len() > NODE_CAP {
            return Err(EncodeError::NodeCap(subs.len()));
        }
        let index: HashMap<u64, usize> =
            subs.iter().enumerate().map(|(i, g)| (g.id(), i)).collect();
        let atom_index: HashMap<&PropAtom, usize> =
            table.iter().enumerate().map(|(a, p)| (p, a)).collect();
        let mut nodes = Vec::with_capacity(subs.len());
        for g in &subs {
            let rec = match g.kind() {
                Kind::Const(true) => NodeRecord::leaf(NodeKind::True),
                Kind::Const(false) => NodeRecord::leaf(NodeKind::False),
                Kind::Atom(p) => {
                    let a = *atom_index
                        .get(p)
                        .ok_or_else(|| EncodeError::UnknownAtom(p.clone()))?;
                    if a >= subs.len() {
                        return Err(EncodeError::AtomIndex(a, subs.len()));
                    }
                    NodeRecord {
                        atom: Some(a),
                        ..NodeRecord::leaf(NodeKind::Atom)
                    }
                }
                Kind::Not(x) => NodeRecord {
                    left: Some(index[&x.id()]),
                    ..NodeRecord::leaf(NodeKind::Not)
                },
                Kind::And(x, y) | Kind::Or(x, y) | Kind::Imp(x, y) => NodeRecord {
                    left: Some(index[&x.id()]),
                    right: Some(index[&y.id()]),
                    ..NodeRecord::leaf(match g.kind() {
                        Kind::And(..) => NodeKind::And,
                        Kind::Or(..) => NodeKind::Or,
                        _ => NodeKind::Imp,
                    })
                },
            };
            nodes.push(rec);
        }
        Ok(FormulaEncoding { nodes })
    }

    pub fn layout(&self) -> Layout {
        Layout::new(self.nodes.len())
    }

    pub fn payload(&self) -> Vec<bool> {
        let lay = self.layout();
        let mut bits = vec![false; lay.payload_len()];
        for (i, r) in self.nodes.iter().enumerate() {
            for c in 0..4 {
                bits[lay.kind_bit(i, c)] = (r.kind.code() >> c) & 1 == 1;
            }
            if let Some(j) = r.left {
                bits[lay.left(i, j)] = true;
            }
            if let Some(j) = r.right {
                bits[lay.right(i, j)] = true;
            }
            if let Some(a) = r.atom {
                bits[lay.atom(i, a)] = true;
            }
        }
        bits
    }

    pub fn to_string_value(&self) -> StringValue {
        StringValue::with_sentinel(&self.payload())
    }

    /// Strict decoding of a payload: every kind code valid, every row
    /// one-hot or zero as the kind requires, children after parents and
    /// atom indices below `atom_limit`.
    pub fn from_payload(payload: &[bool], atom_limit: usize) -> Result<Self, DecodeError> {
        let lay = Layout::from_len(payload.len() as u64 + 1)
            .filter(|l| l.nodes > 0)
            .ok_or(DecodeError::Length(payload.len() as u64 + 1))?;
        let n = lay.nodes;
        // Some(j) for a single set bit in row at a column >= lo and < hi.
        let row = |start: usize, lo: usize, hi: usize| -> Result<Option<usize>, ()> {
            let set: Vec<usize> = (0..n).filter(|&j| payload[start + j]).collect();
            match set.as_slice() {
                [] => Ok(None),
                [j] if *j >= lo && *j < hi => Ok(Some(*j)),
                _ => Err(()),
            }
        };
        let mut nodes = Vec::with_capacity(n);
        for i in 0..n {
            let code = (0..4).fold(0u8, |acc, c| {
                acc | ((payload[lay.kind_bit(i, c)] as u8) << c)
            });
            let kind = NodeKind::from_code(code).ok_or(DecodeError::Kind(i, code))?;
            let left = row(lay.left(i, 0), i + 1, n).map_err(|_| DecodeError::Left(i))?;
            let right = row(lay.right(i, 0), i + 1, n).map_err(|_| DecodeError::Right(i))?;
            let atom = row(lay.atom(i, 0), 0, atom_limit).map_err(|_| DecodeError::Atom(i))?;
            if left.is_some() != kind.has_left() {
                return Err(DecodeError::Left(i));
            }
            if right.is_some() != kind.has_right() {
                return Err(DecodeError::Right(i));
            }
            if atom.is_some() != (kind == NodeKind::Atom) {
                return Err(DecodeError::Atom(i));
            }
            nodes.push(NodeRecord {
                kind,
                left,
                right,
                atom,
            });
        }
        Ok(FormulaEncoding { nodes })
    }

    pub fn from_string_value(y: &StringValue, atom_limit: usize) -> Result<Self, DecodeError> {
        if y.length() == 0 {
            return Err(DecodeError::Length(0));
        }
        Self::from_payload(y.payload(), atom_limit)
    }

    /// The formula at every node, built bottom-up.
    pub fn node_formulas(&self, table: &[PropAtom]) -> Vec<PropFormula> {
        let mut out: Vec<Option<PropFormula>> = vec![None; self.nodes.len()];
        for (i, r) in self.nodes.iter().enumerate().rev() {
            let child = |j: Option<usize>| out[j.expect("decoded")].clone().expect("later node");
            let f = match r.kind {
                NodeKind::True => PropFormula::top(),
                NodeKind::False => PropFormula::bot(),
                NodeKind::Atom => PropFormula::atom(table[r.atom.expect("decoded")].clone()),
                NodeKind::Not => PropFormula::not(child(r.left)),
                NodeKind::And => PropFormula::and(child(r.left), child(r.right)),
                NodeKind::Or => PropFormula::or(child(r.left), child(r.right)),
                NodeKind::Imp => PropFormula::imp(child(r.left), child(r.right)),
            };
            out[i] = Some(f);
        }
        out.into_iter().map(|f| f.expect("filled")).collect()
    }
}

/// Encodes `f`, whose atoms must be exactly `q0 .. q(l-1)`.
pub fn encode_formula(f: &PropFormula) -> Result<StringValue, EncodeError> {
    let atoms = f.atoms();
    let table = default_atoms(atoms.len());
    if atoms.iter().ne(table.iter()) {
        let names: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
        return Err(EncodeError::NonContiguous(names.join(" ")));
    }
    Ok(FormulaEncoding::of_formula(f, &table)?.to_string_value())
}

pub fn encode_with_atoms(f: &PropFormula, table: &[PropAtom]) -> Result<StringValue, EncodeError> {
    Ok(FormulaEncoding::of_formula(f, table)?.to_string_value())
}

/// Decodes a strictly well-formed encoding; atom `a` becomes `table[a]`.
pub fn decode_formula(y: &StringValue, table: &[PropAtom]) -> Result<PropFormula, DecodeError> {
    let enc = FormulaEncoding::from_string_value(y, table.len())?;
    Ok(enc.node_formulas(table).swap_remove(0))
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    pub fn random_formula(rng: &mut ChaCha8Rng, atoms: usize, budget: usize) -> PropFormula {
        if budget <= 1 || rng.gen_ratio(1, 5) {
            return match rng.gen_range(0..10) {
                0 => PropFormula::top(),
                1 => PropFormula::bot(),
                _ => PropFormula::q(rng.gen_range(0..atoms)),
            };
        }
        let rest = budget - 1;
        match rng.gen_range(0..4) {
            0 => PropFormula::not(random_formula(rng, atoms, rest)),
            k => {
                let l = rng.gen_range(1..=rest.max(1));
                let a = random_formula(rng, atoms, l);
                let b = random_formula(rng, atoms, rest.saturating_sub(l).max(1));
                match k {
                    1 => PropFormula::and(a, b),
                    2 => PropFormula::or(a, b),
                    _ => PropFormula::imp(a, b),
                }
            }
        }
    }
}
