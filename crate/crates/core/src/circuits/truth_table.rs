//! Proofs are an encoded formula followed by its full truth table.
//!
//! `U` = encoding payload of `A` (`N` nodes), then `2^ℓ` rows of `N` bits
//! (row `r` holds every node's value when atom `a` is bit `a` of `r`), then
//! the sentinel. `(N, ℓ)` is read off `|U|` as the smallest `N ≥ 1`, then
//! smallest `ℓ ≤ N`, with `4N + 3N² + 2^ℓ·N + 1 = |U|`. Atom `a` is
//! `q(a+1)`.

use super::circuit::Circuit;
use super::system::{Computed, ProofSystem, SystemDescriptor, SystemError, GATE_CAP};
use crate::encoding::{FormulaEncoding, Layout, NodeKind, NodeRecord};
use crate::prop::{PropAtom, PropFormula};
use crate::sigma::StringValue;

/// Largest `ℓ` a proof may have.
pub const MAX_ATOMS: usize = 16;

#[derive(Debug, Clone, Copy, Default)]
pub struct TruthTableSystem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TruthTableError {
    #[error("atom {0} is not q1, q2, ...")]
    BadAtom(PropAtom),
    #[error("no proof length parses back to {nodes} nodes and at least {atoms} atoms")]
    NoLength { nodes: usize, atoms: usize },
    #[error(transparent)]
    Encode(#[from] crate::encoding::EncodeError),
}

/// `q1 .. ql`.
pub fn table_atoms(l: usize) -> Vec<PropAtom> {
    (1..=l).map(PropAtom::q).collect()
}

fn proof_len(n: usize, l: usize) -> u64 {
    (Layout::new(n).payload_len() + (n << l) + 1) as u64
}

/// `(N, ℓ)` for a proof of length `len_u`.
pub fn parse_len(len_u: u64) -> Option<(usize, usize)> {
    let mut n = 1;
    while Layout::new(n).len() as u64 + n as u64 <= len_u {
        for l in 0..=n.min(MAX_ATOMS) {
            if proof_len(n, l) == len_u {
                return Some((n, l));
            }
        }
        n += 1;
    }
    None
}

fn row_values(nodes: &[NodeRecord], r: usize) -> Vec<bool> {
    let mut v = vec![false; nodes.len()];
    for (i, rec) in nodes.iter().enumerate().rev() {
        let l = rec.left.map(|j| v[j]).unwrap_or(false);
        let rt = rec.right.map(|j| v[j]).unwrap_or(false);
        v[i] = match rec.kind {
            NodeKind::True => true,
            NodeKind::False => false,
            NodeKind::Atom => (r >> rec.atom.expect("atom row")) & 1 == 1,
            NodeKind::Not => !l,
            NodeKind::And => l && rt,
            NodeKind::Or => l || rt,
            NodeKind::Imp => !l || rt,
        };
    }
    v
}

impl TruthTableSystem {
    /// Lays out `enc` with `ℓ = atoms` and the given rows.
    pub fn assemble(enc: &FormulaEncoding, atoms: usize, rows: &[Vec<bool>]) -> StringValue {
        let mut bits = enc.payload();
        for r in rows {
            bits.extend_from_slice(r);
        }
        debug_assert_eq!(bits.len() as u64 + 1, proof_len(enc.nodes.len(), atoms));
        StringValue::with_sentinel(&bits)
    }

    /// The honest proof of `a` over atoms `q1 .. qℓ`. If `|U|` for `ℓ`
    /// would parse differently, `ℓ` is raised (padding the table with
    /// unused atoms) until it does not.
    pub fn prove(a: &PropFormula) -> Result<StringValue, TruthTableError> {
        let mut l = 0;
        for p in a.atoms() {
            match p.q_index() {
                Some(i) if i >= 1 => l = l.max(i),
                _ => return Err(TruthTableError::BadAtom(p)),
            }
        }
        let enc = FormulaEncoding::of_formula(a, &table_atoms(l))?;
        let n = enc.nodes.len();
        let l = (l..=n.min(MAX_ATOMS))
            .find(|&l| parse_len(proof_len(n, l)) == Some((n, l)))
            .ok_or(TruthTableError::NoLength { nodes: n, atoms: l })?;
        let rows: Vec<Vec<bool>> = (0..1usize << l)
            .map(|r| row_values(&enc.nodes, r))
            .collect();
        Ok(Self::assemble(&enc, l, &rows))
    }

    fn accepts(u: &StringValue) -> Option<(FormulaEncoding, usize)> {
        let (n, l) = parse_len(u.length())?;
        let p = u.payload();
        let ylen = Layout::new(n).payload_len();
        let enc = FormulaEncoding::from_payload(&p[..ylen], l).ok()?;
        for r in 0..1usize << l {
            let row = &p[ylen + r * n..ylen + (r + 1) * n];
            if !row[0] || row_values(&enc.nodes, r) != row {
                return None;
            }
        }
        Some((enc, l))
    }

    fn ok_gate(c: &mut Circuit, n: usize, l: usize) -> usize {
        let lay = Layout::new(n);
        let ylen = lay.payload_len();
        // input gates are created first, so U bit t is gate t
        let mut checks = Vec::new();
        let mut kinds = Vec::with_capacity(n);
        for i in 0..n {
            let is: Vec<usize> = NodeKind::ALL
                .iter()
                .map(|k| {
                    let lits: Vec<usize> = (0..4)
                        .map(|b| {
                            let u = lay.kind_bit(i, b);
                            if (k.code() >> b) & 1 == 1 {
                                u
                            } else {
                                c.not(u)
                            }
                        })
                        .collect();
                    c.and_all(&lits)
                })
                .collect();
            checks.push(c.or_all(&is));
            kinds.push(is);
        }
        let kind = |i: usize, k: NodeKind| kinds[i][k.code() as usize - 1];
        // one-hot-or-zero rows
        let row_ok = |c: &mut Circuit, start: usize, lo: usize, hi: usize, needs: usize| {
            let outside: Vec<usize> = (0..n)
                .filter(|j| *j < lo || *j >= hi)
                .map(|j| start + j)
                .collect();
            let any_out = c.or_all(&outside);
            let zero_out = c.not(any_out);
            let mut seen = c.constant(false);
            let mut two = c.constant(false);
            for j in lo..hi {
                let x = start + j;
                let dup = c.and(seen, x);
                two = c.or(two, dup);
                seen = c.or(seen, x);
            }
            let not_two = c.not(two);
            let exactly = c.and(seen, not_two);
            let none = c.not(seen);
            let pick = c.select(needs, exactly, none);
            c.and(zero_out, pick)
        };
        for i in 0..n {
            let nl =
                [NodeKind::Not, NodeKind::And, NodeKind::Or, NodeKind::Imp].map(|k| kind(i, k));
            let needs_left = c.or_all(&nl);
            let needs_right = c.or_all(&nl[1..]);
            let ok_l = row_ok(c, lay.left(i, 0), i + 1, n, needs_left);
            let ok_r = row_ok(c, lay.right(i, 0), i + 1, n, needs_right);
            let ok_a = row_ok(c, lay.atom(i, 0), 0, l, kind(i, NodeKind::Atom));
            checks.extend([ok_l, ok_r, ok_a]);
        }
        for r in 0..1usize << l {
            let t = |i: usize| ylen + r * n + i;
            checks.push(t(0));
            for i in 0..n {
                let sel = |c: &mut Circuit, start: usize| {
                    let terms: Vec<usize> = (i + 1..n).map(|j| c.and(start + j, t(j))).collect();
                    c.or_all(&terms)
                };
                let lv = sel(c, lay.left(i, 0));
                let rv = sel(c, lay.right(i, 0));
                let av_terms: Vec<usize> = (0..l)
                    .filter(|a| (r >> a) & 1 == 1)
                    .map(|a| lay.atom(i, a))
                    .collect();
                let av = c.or_all(&av_terms);
                let nlv = c.not(lv);
                let conj = c.and(lv, rv);
                let disj = c.or(lv, rv);
                let imp = c.or(nlv, rv);
                let cases = [
                    kind(i, NodeKind::True),
                    c.and(kind(i, NodeKind::Atom), av),
                    c.and(kind(i, NodeKind::Not), nlv),
                    c.and(kind(i, NodeKind::And), conj),
                    c.and(kind(i, NodeKind::Or), disj),
                    c.and(kind(i, NodeKind::Imp), imp),
                ];
                let value = c.or_all(&cases);
                checks.push(c.eq(t(i), value));
            }
        }
        c.and_all(&checks)
    }
}

impl ProofSystem for TruthTableSystem {
    fn name(&self) -> String {
        "truth-table".into()
    }

    fn descriptor(&self) -> SystemDescriptor {
        SystemDescriptor::TruthTable
    }

    fn compute(&self, u: &StringValue) -> Computed {
        match Self::accepts(u) {
            Some((enc, l)) => Computed {
                y: enc.to_string_value(),
                atoms: table_atoms(l),
            },
            None => Computed::top(),
        }
    }

    fn circuit(&self, len_u: u64, len_y: u64) -> Result<Circuit, SystemError> {
        let top = Computed::top().y;
        if let Some((n, l)) = parse_len(len_u) {
            let est = (n * n) << (l + 2);
            if est > GATE_CAP {
                return Err(SystemError::TooLarge {
                    len_u,
                    len_y,
                    cap: GATE_CAP,
                });
            }
        }
        let mut c = Circuit::new();
        let u: Vec<usize> = (1..len_u).map(|_| c.input()).collect();
        let top_bits: Vec<usize> = top.payload().iter().map(|b| c.constant(*b)).collect();
        let ok_len = parse_len(len_u).map(|(n, _)| Layout::new(n).len() as u64);
        let (accept, ybits) = match parse_len(len_u) {
            None => {
                let acc = c.constant(len_y == top.length());
                (acc, top_bits.clone())
            }
            Some((n, l)) => {
                let ok = Self::ok_gate(&mut c, n, l);
                let ylen = Layout::new(n).payload_len();
                let own = &u[..ylen];
                if ok_len == Some(top.length()) {
                    let acc = c.constant(len_y == top.length());
                    let bits = own
                        .iter()
                        .zip(&top_bits)
                        .map(|(&x, &t)| c.select(ok, x, t))
                        .collect();
                    (acc, bits)
                } else if Some(len_y) == ok_len {
                    (ok, own.to_vec())
                } else if len_y == top.length() {
                    (c.not(ok), top_bits.clone())
                } else {
                    (c.constant(false), Vec::new())
                }
            }
        };
        let pad = c.constant(false);
        let mut ybits = ybits;
        ybits.resize(len_y.saturating_sub(1) as usize, pad);
        c.set_accept(accept);
        c.set_ybits(ybits);
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::run_circuit;
    use crate::prop::{is_tautology_bruteforce, parse_prop};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PropFormula {
        parse_prop(s).unwrap()
    }

    #[test]
    fn excluded_middle_round_trip() {
        let a = p("(| q1 (~ q1))");
        let u = TruthTableSystem::prove(&a).unwrap();
        assert_eq!(parse_len(u.length()), Some((3, 1)));
        assert_eq!(TruthTableSystem.compute(&u).formula(), a);
    }

    #[test]
    fn lying_table_gives_top() {
        let a = p("q1");
        let enc = FormulaEncoding::of_formula(&a, &table_atoms(1)).unwrap();
        let u = TruthTableSystem::assemble(&enc, 1, &[vec![true], vec![true]]);
        assert_eq!(TruthTableSystem.compute(&u).formula(), PropFormula::top());
        // an honest table of a non-tautology is rejected too
        let u = TruthTableSystem::assemble(&enc, 1, &[vec![false], vec![true]]);
        assert_eq!(TruthTableSystem.compute(&u), Computed::top());
    }

    #[test]
    fn garbage_gives_top() {
        for len in 0..40 {
            let u = StringValue::with_sentinel(&vec![true; len]);
            assert!(TruthTableSystem.compute(&u).formula().is_closed());
        }
    }

    #[test]
    fn random_three_atom_tautologies() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut found = 0;
        while found < 20 {
            let a = crate::encoding::tests_support::random_formula(&mut rng, 3, 8);
            let a = crate::prop::substitute(
                &a,
                &(0..3)
                    .map(|i| (PropAtom::q(i), PropFormula::q(i + 1)))
                    .collect(),
            );
            if is_tautology_bruteforce(&a) != Ok(true) {
                continue;
            }
            let u = TruthTableSystem::prove(&a).unwrap();
            assert_eq!(TruthTableSystem.compute(&u).formula(), a);
            found += 1;
        }
    }

    fn agree_on(len_u: u64, len_y: u64) {
        let c = TruthTableSystem.circuit(len_u, len_y).unwrap();
        for u in StringValue::all_of_length(len_u) {
            let w = run_circuit(&c, u.payload()).unwrap().wires;
            let out = TruthTableSystem.compute(&u).y;
            let want = out.length() == len_y;
            assert_eq!(w[c.accept()], want, "|U|={len_u} U={u:?}");
            if want {
                let ys: Vec<bool> = c.ybits().iter().map(|&g| w[g]).collect();
                assert_eq!(ys, out.payload());
            }
        }
    }

    #[test]
    fn circuit_agrees_with_compute_exhaustively() {
        // |U| = 9 is N = 1, l = 0; the rest do not parse
        for len_u in 0..=12 {
            for len_y in [0, 1, 8, 21] {
                agree_on(len_u, len_y);
            }
        }
    }

    #[test]
    fn circuit_agrees_on_real_proofs_and_mutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in ["(| q1 (~ q1))", "(> q1 q1)", "(> (& q1 q2) q1)", "T"] {
            let u = TruthTableSystem::prove(&p(s)).unwrap();
            let out = TruthTableSystem.compute(&u).y;
            for len_y in [out.length(), 8] {
                let c = TruthTableSystem.circuit(u.length(), len_y).unwrap();
                let mut cases = vec![u.clone()];
                for _ in 0..30 {
                    let k = rng.gen_range(0..u.length() - 1);
                    cases.push(u.with_flipped(k));
                }
                for v in cases {
                    let w = run_circuit(&c, v.payload()).unwrap().wires;
                    let out = TruthTableSystem.compute(&v).y;
                    assert_eq!(w[c.accept()], out.length() == len_y);
                    if out.length() == len_y {
                        let ys: Vec<bool> = c.ybits().iter().map(|&g| w[g]).collect();
                        assert_eq!(ys, out.payload());
                    }
                }
            }
        }
    }
}
