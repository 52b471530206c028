use std::collections::HashMap;
use std::fmt::{self, Write};

use crate::sigma::StringValue;

/// One gate. `Input(k)` reads input bit `k`; the other operands are ids of
/// earlier gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Input(usize),
    Const(bool),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
}

impl Gate {
    pub fn operands(&self) -> Vec<usize> {
        match *self {
            Gate::Input(_) | Gate::Const(_) => vec![],
            Gate::Not(a) => vec![a],
            Gate::And(a, b) | Gate::Or(a, b) => vec![a, b],
        }
    }
}

/// A gate list with an accept bit and output bits. Gate ids are positions.
///
/// The constructors fold constants and share identical gates, so building
/// the same expression twice yields one gate.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Circuit {
    gates: Vec<Gate>,
    inputs: usize,
    accept: usize,
    ybits: Vec<usize>,
    memo: HashMap<Gate, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("circuit has {expected} inputs, got {got} bits")]
    ArityMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct CircuitParseError {
    pub line: usize,
    pub msg: String,
}

/// Wire values of a run, one per gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub wires: Vec<bool>,
}

impl Trace {
    /// The wires as a string of length `gates + 1`.
    pub fn to_string_value(&self) -> StringValue {
        StringValue::with_sentinel(&self.wires)
    }
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, g: Gate) -> usize {
        if let Some(&id) = self.memo.get(&g) {
            return id;
        }
        let id = self.gates.len();
        self.gates.push(g);
        self.memo.insert(g, id);
        id
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn ybits(&self) -> &[usize] {
        &self.ybits
    }

    pub fn set_accept(&mut self, id: usize) {
        self.accept = id;
    }

    pub fn set_ybits(&mut self, ids: Vec<usize>) {
        self.ybits = ids;
    }

    /// A new input gate reading the next input bit.
    pub fn input(&mut self) -> usize {
        let k = self.inputs;
        self.inputs += 1;
        self.push(Gate::Input(k))
    }

    fn const_of(&self, id: usize) -> Option<bool> {
        match self.gates[id] {
            Gate::Const(b) => Some(b),
            _ => None,
        }
    }

    pub fn constant(&mut self, b: bool) -> usize {
        self.push(Gate::Const(b))
    }

    pub fn not(&mut self, a: usize) -> usize {
        match (self.const_of(a), self.gates[a]) {
            (Some(b), _) => self.constant(!b),
            (_, Gate::Not(x)) => x,
            _ => self.push(Gate::Not(a)),
        }
    }

    pub fn and(&mut self, a: usize, b: usize) -> usize {
        match (self.const_of(a), self.const_of(b)) {
            (Some(false), _) | (_, Some(false)) => self.constant(false),
            (Some(true), _) => b,
            (_, Some(true)) => a,
            _ if a == b => a,
            _ => self.push(Gate::And(a.min(b), a.max(b))),
        }
    }

    pub fn or(&mut self, a: usize, b: usize) -> usize {
        match (self.const_of(a), self.const_of(b)) {
            (Some(true), _) | (_, Some(true)) => self.constant(true),
            (Some(false), _) => b,
            (_, Some(false)) => a,
            _ if a == b => a,
            _ => self.push(Gate::Or(a.min(b), a.max(b))),
        }
    }

    pub fn and_all(&mut self, ids: &[usize]) -> usize {
        match ids {
            [] => self.constant(true),
            [a] => *a,
            _ => {
                let (l, r) = ids.split_at(ids.len() / 2);
                let l = self.and_all(l);
                let r = self.and_all(r);
                self.and(l, r)
            }
        }
    }

    pub fn or_all(&mut self, ids: &[usize]) -> usize {
        match ids {
            [] => self.constant(false),
            [a] => *a,
            _ => {
                let (l, r) = ids.split_at(ids.len() / 2);
                let l = self.or_all(l);
                let r = self.or_all(r);
                self.or(l, r)
            }
        }
    }

    /// `(a ∧ b) ∨ (¬a ∧ ¬b)`
    pub fn eq(&mut self, a: usize, b: usize) -> usize {
        let both = self.and(a, b);
        let na = self.not(a);
        let nb = self.not(b);
        let neither = self.and(na, nb);
        self.or(both, neither)
    }

    /// `c ? a : b`
    pub fn select(&mut self, c: usize, a: usize, b: usize) -> usize {
        let x = self.and(c, a);
        let nc = self.not(c);
        let y = self.and(nc, b);
        self.or(x, y)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (id, g) in self.gates.iter().enumerate() {
            match g {
                Gate::Input(_) => writeln!(out, "{id} INPUT"),
                Gate::Const(b) => writeln!(out, "{id} CONST{}", *b as u8),
                Gate::Not(a) => writeln!(out, "{id} NOT {a}"),
                Gate::And(a, b) => writeln!(out, "{id} AND {a} {b}"),
                Gate::Or(a, b) => writeln!(out, "{id} OR {a} {b}"),
            }
            .unwrap();
        }
        writeln!(out, "ACCEPT {}", self.accept).unwrap();
        out.push_str("YBITS");
        for y in &self.ybits {
            write!(out, " {y}").unwrap();
        }
        out.push('\n');
        out
    }

    /// Parses the gate-per-line format. Ids must be `0, 1, 2, ...` in order;
    /// the `k`-th `INPUT` line reads input bit `k`.
    pub fn parse(text: &str) -> Result<Circuit, CircuitParseError> {
        let mut gates = Vec::new();
        let mut inputs = 0;
        let mut accept = None;
        let mut ybits = None;
        for (n, raw) in text.lines().enumerate() {
            let err = |msg: String| CircuitParseError { line: n + 1, msg };
            let words: Vec<&str> = raw.split_whitespace().collect();
            let num = |w: &str| -> Result<usize, CircuitParseError> {
                w.parse()
                    .map_err(|_| err(format!("expected a number, got `{w}`")))
            };
            let earlier = |w: &str, len: usize| -> Result<usize, CircuitParseError> {
                let id = num(w)?;
                if id < len {
                    Ok(id)
                } else {
                    Err(err(format!("operand {id} is not an earlier gate")))
                }
            };
            match words.as_slice() {
                [] => continue,
                ["ACCEPT", id] => accept = Some(num(id)?),
                ["YBITS", ids @ ..] => {
                    ybits = Some(ids.iter().map(|w| num(w)).collect::<Result<Vec<_>, _>>()?)
                }
                [id, op, args @ ..] => {
                    if num(id)? != gates.len() {
                        return Err(err(format!("expected gate id {}", gates.len())));
                    }
                    if accept.is_some() || ybits.is_some() {
                        return Err(err("gate after output declarations".into()));
                    }
                    let len = gates.len();
                    let g = match (*op, args) {
                        ("INPUT", []) => {
                            inputs += 1;
                            Gate::Input(inputs - 1)
                        }
                        ("CONST0", []) => Gate::Const(false),
                        ("CONST1", []) => Gate::Const(true),
                        ("NOT", [a]) => Gate::Not(earlier(a, len)?),
                        ("AND", [a, b]) => Gate::And(earlier(a, len)?, earlier(b, len)?),
                        ("OR", [a, b]) => Gate::Or(earlier(a, len)?, earlier(b, len)?),
                        _ => return Err(err(format!("bad gate `{}`", raw.trim()))),
                    };
                    gates.push(g);
                }
                _ => return Err(err(format!("bad line `{}`", raw.trim()))),
            }
        }
        let last = text.lines().count();
        let missing = |what: &str| CircuitParseError {
            line: last,
            msg: format!("missing {what}"),
        };
        let accept = accept.ok_or_else(|| missing("ACCEPT"))?;
        let ybits = ybits.ok_or_else(|| missing("YBITS"))?;
        if let Some(bad) = std::iter::once(accept)
            .chain(ybits.iter().copied())
            .find(|&i| i >= gates.len())
        {
            return Err(CircuitParseError {
                line: last,
                msg: format!("output {bad} is not a gate"),
            });
        }
        let memo = gates.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        Ok(Circuit {
            gates,
            inputs,
            accept,
            ybits,
            memo,
        })
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Evaluates every gate in order.
pub fn run_circuit(c: &Circuit, input: &[bool]) -> Result<Trace, CircuitError> {
    if input.len() != c.inputs {
        return Err(CircuitError::ArityMismatch {
            expected: c.inputs,
            got: input.len(),
        });
    }
    let mut w: Vec<bool> = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        let v = match *g {
            Gate::Input(k) => input[k],
            Gate::Const(b) => b,
            Gate::Not(a) => !w[a],
            Gate::And(a, b) => w[a] && w[b],
            Gate::Or(a, b) => w[a] || w[b],
        };
        w.push(v);
    }
    Ok(Trace { wires: w })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_input() {
        let mut c = Circuit::new();
        let a = c.input();
        c.set_accept(a);
        assert_eq!(run_circuit(&c, &[true]).unwrap().wires, [true]);
    }

    #[test]
    fn not_over_input() {
        let c = Circuit::parse("0 INPUT\n1 NOT 0\nACCEPT 1\nYBITS\n").unwrap();
        assert_eq!(run_circuit(&c, &[false]).unwrap().wires, [false, true]);
    }

    #[test]
    fn and_of_two_inputs() {
        let mut c = Circuit::new();
        let a = c.input();
        let b = c.input();
        let g = c.and(a, b);
        c.set_accept(g);
        c.set_ybits(vec![g]);
        let t = run_circuit(&c, &[true, false]).unwrap();
        assert!(!t.wires[g]);
        assert_eq!(Circuit::parse(&c.render()).unwrap(), c);
    }

    #[test]
    fn arity_is_checked() {
        let c = Circuit::parse("0 INPUT\n1 INPUT\nACCEPT 0\nYBITS 1\n").unwrap();
        assert_eq!(
            run_circuit(&c, &[true]),
            Err(CircuitError::ArityMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn malformed_text() {
        assert!(Circuit::parse("0 INPUT\n1 NOT 1\nACCEPT 0\nYBITS\n").is_err());
        assert!(Circuit::parse("0 INPUT\n2 NOT 0\nACCEPT 0\nYBITS\n").is_err());
        assert!(Circuit::parse("0 XOR 0 0\nACCEPT 0\nYBITS\n").is_err());
        assert!(Circuit::parse("0 INPUT\nYBITS\n").is_err());
        assert!(Circuit::parse("0 INPUT\nACCEPT 3\nYBITS\n").is_err());
    }

    #[test]
    fn constructors_fold_and_share() {
        let mut c = Circuit::new();
        let a = c.input();
        let t = c.constant(true);
        assert_eq!(c.and(a, t), a);
        let n = c.not(a);
        assert_eq!(c.not(n), a);
        let b = c.input();
        assert_eq!(c.and(a, b), c.and(b, a));
    }
}
