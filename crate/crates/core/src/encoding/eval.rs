use std::collections::HashMap;

use super::{EncodeError, FormulaEncoding, NodeKind};
use crate::frege::{GenError, Proof, ProofBuilder};
use crate::prop::{
    subformulas, substitute, Kind, MissingAtom, PropAssignment, PropAtom, PropFormula, Substitution,
};
use crate::sigma::{Formula, StringValue, Term};
use crate::translation::{translate_with, LengthProfile, TranslateError, TranslateOptions};

fn var(v: &str) -> Term {
    Term::var(v)
}

fn plus(a: Term, b: Term) -> Term {
    Term::add(a, b)
}

fn times(a: Term, b: Term) -> Term {
    Term::mul(a, b)
}

/// `v + 1 ≤ n`
fn below_n(v: &str) -> Formula {
    Formula::leq(plus(var(v), Term::One), var("n"))
}

/// Node `i` has kind `k`: the four kind bits spell its code.
fn kind_is(k: NodeKind) -> Formula {
    let lits = (0..4u64)
        .map(|c| {
            let t = plus(times(Term::num(4), var("i")), Term::num(c));
            let bit = Formula::member("Y", t);
            if (k.code() >> c) & 1 == 1 {
                bit
            } else {
                Formula::not(bit)
            }
        })
        .collect();
    Formula::conj(lits)
}

/// `∃j ≤ n (j+1 ≤ n ∧ (Y(base + i·n + j) ∧ S(j)))`: the value of the
/// entry selected by row `i` of the matrix at `base`.
fn selected(base: Term, s: &str) -> Formula {
    let pos = plus(plus(base, times(var("i"), var("n"))), var("j"));
    Formula::exists(
        "j",
        var("n"),
        Formula::and(
            below_n("j"),
            Formula::and(Formula::member("Y", pos), Formula::member(s, var("j"))),
        ),
    )
}

/// The evaluation formula over `X` (assignment), `Y` (encoded formula) and
/// `Z` (one truth value per node, then the sentinel).
pub fn generate_eval() -> Formula {
    let n = || var("n");
    let four_n = || times(Term::num(4), n());
    let nn = || times(n(), n());
    let lv = || selected(four_n(), "Z");
    let rv = || selected(plus(four_n(), nn()), "Z");
    let av = || selected(plus(four_n(), times(Term::num(2), nn())), "X");
    let zi = || Formula::member("Z", var("i"));
    let node = Formula::conj(vec![
        Formula::imp(kind_is(NodeKind::True), zi()),
        Formula::imp(kind_is(NodeKind::False), Formula::not(zi())),
        Formula::imp(kind_is(NodeKind::Atom), Formula::iff(zi(), av())),
        Formula::imp(
            kind_is(NodeKind::Not),
            Formula::iff(zi(), Formula::not(lv())),
        ),
        Formula::imp(
            kind_is(NodeKind::And),
            Formula::iff(zi(), Formula::and(lv(), rv())),
        ),
        Formula::imp(
            kind_is(NodeKind::Or),
            Formula::iff(zi(), Formula::or(lv(), rv())),
        ),
        Formula::imp(
            kind_is(NodeKind::Imp),
            Formula::iff(zi(), Formula::imp(lv(), rv())),
        ),
    ]);
    let len_y = plus(plus(four_n(), times(Term::num(3), nn())), Term::One);
    Formula::exists(
        "n",
        Term::len("Z"),
        Formula::and(
            Formula::eq(plus(n(), Term::One), Term::len("Z")),
            Formula::and(
                Formula::eq(Term::len("Y"), len_y),
                Formula::forall("i", n(), Formula::imp(below_n("i"), node)),
            ),
        ),
    )
}

/// The trace `Z` of `f` under `a`: node values in encoding order, then the
/// sentinel.
pub fn compute_eval_trace(f: &PropFormula, a: &PropAssignment) -> Result<StringValue, MissingAtom> {
    let subs = subformulas(f);
    let mut val: HashMap<u64, bool> = HashMap::with_capacity(subs.len());
    for g in subs.iter().rev() {
        let v = match g.kind() {
            Kind::Const(b) => *b,
            Kind::Atom(p) => *a.get(p).ok_or_else(|| MissingAtom(p.clone()))?,
            Kind::Not(x) => !val[&x.id()],
            Kind::And(x, y) => val[&x.id()] && val[&y.id()],
            Kind::Or(x, y) => val[&x.id()] || val[&y.id()],
            Kind::Imp(x, y) => !val[&x.id()] || val[&y.id()],
        };
        val.insert(g.id(), v);
    }
    let bits: Vec<bool> = subs.iter().map(|g| val[&g.id()]).collect();
    Ok(StringValue::with_sentinel(&bits))
}

/// Lengths of `X` and `Z` for a formula with `nodes` nodes over `atoms`
/// atoms.
pub fn eval_profile(nodes: usize, atoms: usize) -> LengthProfile {
    LengthProfile::new()
        .with_len("X", atoms as u64 + 1)
        .with_len("Z", nodes as u64 + 1)
}

/// Folded translation of `phi` (over `X`, `Y`, `Z`) with `Y` fixed to the
/// encoding `y` and `X`, `Z` at matching lengths.
pub fn instantiated_eval(
    phi: &Formula,
    y: &StringValue,
    nodes: usize,
    atoms: usize,
) -> Result<PropFormula, TranslateError> {
    let opts = TranslateOptions::default().with_fixed("Y", y.clone());
    translate_with(phi, &eval_profile(nodes, atoms), &opts)
}

/// `p^X_j ↦ table[j]` and `p^Z_i ↦ node_formulas[i]`.
pub fn eval_substitution(table: &[PropAtom], node_formulas: &[PropFormula]) -> Substitution {
    let mut sigma = Substitution::new();
    for (j, a) in table.iter().enumerate() {
        sigma.insert(PropAtom::bit("X", j as u64), PropFormula::atom(a.clone()));
    }
    for (i, b) in node_formulas.iter().enumerate() {
        sigma.insert(PropAtom::bit("Z", i as u64), b.clone());
    }
    sigma
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalPrimeError {
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Proof(#[from] GenError),
}

#[derive(Debug, Clone)]
pub struct EvalPrime {
    pub formula: PropFormula,
    pub proof: Proof,
}

/// `Eval` instantiated at the encoding of `a` and substituted so that every
/// node constraint reads `B ↔ (B_left ∘ B_right)`, with its proof.
pub fn prove_eval_prime(a: &PropFormula, table: &[PropAtom]) -> Result<EvalPrime, EvalPrimeError> {
    let enc = FormulaEncoding::of_formula(a, table)?;
    let ev = instantiated_eval(
        &generate_eval(),
        &enc.to_string_value(),
        enc.nodes.len(),
        table.len(),
    )?;
    let formula = substitute(&ev, &eval_substitution(table, &enc.node_formulas(table)));
    let mut b = ProofBuilder::new();
    b.trivial(&formula)?;
    b.conclude(&formula);
    Ok(EvalPrime {
        formula,
        proof: b.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{default_atoms, encode_formula, encode_with_atoms};
    use crate::frege::{check_proof, proof_size};
    use crate::prop::{is_tautology_bruteforce, parse_prop};
    use crate::sigma::{eval_formula, Environment};

    fn p(s: &str) -> PropFormula {
        parse_prop(s).unwrap()
    }

    fn holds(x: &StringValue, y: &StringValue, z: &StringValue) -> bool {
        let env = Environment::new()
            .with_string("X", x.clone())
            .with_string("Y", y.clone())
            .with_string("Z", z.clone());
        eval_formula(&generate_eval(), &env).unwrap()
    }

    fn assignment(bits: &[bool]) -> (StringValue, PropAssignment) {
        let a = bits
            .iter()
            .enumerate()
            .map(|(j, b)| (PropAtom::q(j), *b))
            .collect();
        (StringValue::with_sentinel(bits), a)
    }

    #[test]
    fn eval_is_bounded_over_x_y_z() {
        let (nums, strs) = generate_eval().free_variables();
        assert!(nums.is_empty());
        assert_eq!(strs.into_iter().collect::<Vec<_>>(), ["X", "Y", "Z"]);
    }

    #[test]
    fn one_atom() {
        let f = p("q0");
        let (x, a) = assignment(&[true]);
        let z = compute_eval_trace(&f, &a).unwrap();
        assert_eq!(z.payload(), [true]);
        assert!(holds(&x, &encode_formula(&f).unwrap(), &z));
        assert!(!holds(&x, &encode_formula(&f).unwrap(), &z.with_flipped(0)));
    }

    #[test]
    fn contradiction_root_false() {
        let f = p("(& q0 (~ q0))");
        for v in [false, true] {
            let (x, a) = assignment(&[v]);
            let z = compute_eval_trace(&f, &a).unwrap();
            assert!(!z.bit(0));
            assert!(holds(&x, &encode_formula(&f).unwrap(), &z));
        }
    }

    #[test]
    fn implication_trace() {
        let f = p("(> q0 q1)");
        let (_, a) = assignment(&[true, false]);
        assert!(!compute_eval_trace(&f, &a).unwrap().bit(0));
    }

    #[test]
    fn corrupted_and_misaligned_traces_fail() {
        let f = p("(| (& q0 T) (> q1 (~ q0)))");
        let y = encode_formula(&f).unwrap();
        for m in 0..4u8 {
            let (x, a) = assignment(&[m & 1 == 1, m & 2 == 2]);
            let z = compute_eval_trace(&f, &a).unwrap();
            assert!(holds(&x, &y, &z));
            for i in 0..z.length() {
                assert!(!holds(&x, &y, &z.with_flipped(i)), "bit {i}");
            }
            let mut longer = z.payload().to_vec();
            longer.push(true);
            assert!(!holds(&x, &y, &StringValue::with_sentinel(&longer)));
        }
    }

    #[test]
    fn eval_prime_small_cases() {
        for s in ["q0", "(~ q0)", "(| q0 (~ q0))", "(> (& q0 q1) (| F q1))"] {
            let a = p(s);
            let table = default_atoms(a.atoms().len());
            let ep = prove_eval_prime(&a, &table).unwrap();
            assert_eq!(check_proof(&ep.proof, &[]), Ok(()));
            assert_eq!(ep.proof.conclusion(), Some(&ep.formula));
            assert_eq!(is_tautology_bruteforce(&ep.formula), Ok(true));
        }
    }

    #[test]
    fn substitution_turns_eval_into_eval_prime_imp_a() {
        let a = p("(& q1 (| q2 (~ q1)))");
        let table = vec![PropAtom::q(1), PropAtom::q(2)];
        let y = encode_with_atoms(&a, &table).unwrap();
        let enc = FormulaEncoding::of_formula(&a, &table).unwrap();
        let phi = Formula::imp(generate_eval(), Formula::member("Z", Term::Zero));
        let whole = instantiated_eval(&phi, &y, enc.nodes.len(), 2).unwrap();
        let sigma = eval_substitution(&table, &enc.node_formulas(&table));
        let ev = prove_eval_prime(&a, &table).unwrap().formula;
        assert_eq!(substitute(&whole, &sigma), PropFormula::imp(ev, a));
    }

    #[test]
    fn eval_prime_size_grows_slowly() {
        let mut pts = Vec::new();
        for k in 2..=8 {
            let a = (1..k).fold(PropFormula::q(0), |acc, i| {
                PropFormula::and(acc, PropFormula::q(i))
            });
            let table = default_atoms(k);
            let ep = prove_eval_prime(&a, &table).unwrap();
            pts.push((
                (a.symbol_size() as f64).ln(),
                (proof_size(&ep.proof) as f64).ln(),
            ));
        }
        let n = pts.len() as f64;
        let (mx, my) = pts
            .iter()
            .fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
        let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
        assert!(sxy / sxx <= 3.0, "slope {}", sxy / sxx);
    }
}
