//! Brute-force tautology checking by truth-table enumeration.
//!
//! The formula DAG is compiled into a straight-line program and evaluated 64
//! assignments at a time; blocks of assignments are spread across threads.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use super::atom::PropAtom;
use super::formula::{Kind, PropFormula};
use super::ops::{eval_closed, PropAssignment};

pub const DEFAULT_ATOM_CAP: usize = 20;

/// Oracle atom cap: `REDUCT_ATOM_CAP` if set and valid, else 20.
pub fn atom_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("REDUCT_ATOM_CAP")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_ATOM_CAP)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("formula has {atoms} atoms, above the brute-force cap of {cap}")]
pub struct AtomCapExceeded {
    pub atoms: usize,
    pub cap: usize,
}

#[derive(Clone, Copy)]
enum Op {
    Const(u64),
    Atom(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
}

struct Program {
    ops: Vec<Op>,
    atoms: Vec<PropAtom>,
}

fn compile(f: &PropFormula) -> Program {
    let atoms: Vec<PropAtom> = f.atoms().into_iter().collect();
    let index: HashMap<&PropAtom, usize> = atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut ops = Vec::new();
    let mut slot: HashMap<u64, usize> = HashMap::new();
    // iterative post-order
    let mut stack: Vec<(PropFormula, bool)> = vec![(f.clone(), false)];
    while let Some((g, expanded)) = stack.pop() {
        if slot.contains_key(&g.id()) {
            continue;
        }
        if g.is_closed() {
            let v = eval_closed(&g).expect("closed");
            slot.insert(g.id(), ops.len());
            ops.push(Op::Const(if v { !0 } else { 0 }));
            continue;
        }
        if !expanded {
            stack.push((g.clone(), true));
            for c in g.children() {
                if !slot.contains_key(&c.id()) {
                    stack.push((c.clone(), false));
                }
            }
            continue;
        }
        let s = |x: &PropFormula| slot[&x.id()];
        let op = match g.kind() {
            Kind::Const(_) => unreachable!("constants are closed"),
            Kind::Atom(a) => Op::Atom(index[a]),
            Kind::Not(x) => Op::Not(s(x)),
            Kind::And(x, y) => Op::And(s(x), s(y)),
            Kind::Or(x, y) => Op::Or(s(x), s(y)),
            Kind::Imp(x, y) => Op::Imp(s(x), s(y)),
        };
        slot.insert(g.id(), ops.len());
        ops.push(op);
    }
    Program { ops, atoms }
}

const LANE_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

impl Program {
    /// Root values for the 64 assignments of block `block`; assignment
    /// `block * 64 + lane` gives atom `k` the value of its bit `k`.
    fn run_block(&self, block: u64, buf: &mut Vec<u64>) -> u64 {
        buf.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Const(w) => w,
                Op::Atom(k) if k < 6 => LANE_PATTERNS[k],
                Op::Atom(k) => {
                    if (block >> (k - 6)) & 1 == 1 {
                        !0
                    } else {
                        0
                    }
                }
                Op::Not(a) => !buf[a],
                Op::And(a, b) => buf[a] & buf[b],
                Op::Or(a, b) => buf[a] | buf[b],
                Op::Imp(a, b) => !buf[a] | buf[b],
            };
            buf.push(v);
        }
        *buf.last().expect("non-empty program")
    }

    fn lane_mask(&self) -> u64 {
        match self.atoms.len() {
            k if k >= 6 => !0,
            k => (1u64 << (1u32 << k)) - 1,
        }
    }

    fn blocks(&self) -> u64 {
        1u64 << self.atoms.len().saturating_sub(6)
    }

    fn assignment(&self, index: u64) -> PropAssignment {
        self.atoms
            .iter()
            .enumerate()
            .map(|(k, a)| (a.clone(), (index >> k) & 1 == 1))
            .collect()
    }
}

pub fn is_tautology_bruteforce(f: &PropFormula) -> Result<bool, AtomCapExceeded> {
    is_tautology_with_cap(f, atom_cap())
}

pub fn is_tautology_with_cap(f: &PropFormula, cap: usize) -> Result<bool, AtomCapExceeded> {
    Ok(counterexample_with_cap(f, cap)?.is_none())
}

/// A falsifying assignment, if any. The smallest one in enumeration order is
/// returned, so the result does not depend on scheduling.
pub fn counterexample_with_cap(
    f: &PropFormula,
    cap: usize,
) -> Result<Option<PropAssignment>, AtomCapExceeded> {
    if let Some(v) = eval_closed(f) {
        return Ok(if v { None } else { Some(PropAssignment::new()) });
    }
    let prog = compile(f);
    if prog.atoms.len() > cap {
        return Err(AtomCapExceeded {
            atoms: prog.atoms.len(),
            cap,
        });
    }
    let mask = prog.lane_mask();
    let bad = (0..prog.blocks())
        .into_par_iter()
        .map_init(Vec::new, |buf, block| {
            let miss = !prog.run_block(block, buf) & mask;
            (miss != 0).then(|| block * 64 + miss.trailing_zeros() as u64)
        })
        .flatten()
        .min();
    Ok(bad.map(|i| prog.assignment(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prop::{eval_prop, parse_prop};

    #[test]
    fn small_cases() {
        let t = |s: &str| is_tautology_with_cap(&parse_prop(s).unwrap(), 20).unwrap();
        assert!(t("(| q1 (~ q1))"));
        assert!(!t("q1"));
        assert!(t("T"));
        assert!(!t("(~ T)"));
        assert!(t("(> (& q1 q2) (| q2 q3))"));
    }

    #[test]
    fn wide_formula_uses_block_bits() {
        // 10 atoms: exercises atoms beyond the lane patterns
        let mut f = PropFormula::q(0);
        for i in 1..10 {
            f = PropFormula::or(f, PropFormula::q(i));
        }
        let g = PropFormula::or(f.clone(), PropFormula::not(PropFormula::q(9)));
        assert!(is_tautology_with_cap(&g, 20).unwrap());
        let cex = counterexample_with_cap(&f, 20).unwrap().unwrap();
        assert!(!eval_prop(&f, &cex).unwrap());
        assert!(cex.values().all(|v| !v));
    }

    #[test]
    fn cap_enforced() {
        let mut f = PropFormula::q(0);
        for i in 1..5 {
            f = PropFormula::and(f, PropFormula::q(i));
        }
        assert_eq!(
            is_tautology_with_cap(&f, 4),
            Err(AtomCapExceeded { atoms: 5, cap: 4 })
        );
    }
}
