//! Encodes a formula, shows its layout, evaluates `Eval` on the trace of an
//! assignment, and proves `Eval'`.

use uniform_reducts::encoding::{
    compute_eval_trace, encode_with_atoms, generate_eval, prove_eval_prime, FormulaEncoding,
};
use uniform_reducts::frege::check_proof;
use uniform_reducts::prop::{parse_prop, PropAssignment, PropAtom};
use uniform_reducts::sigma::{eval_formula, Environment, StringValue};

fn main() {
    let a = parse_prop("(> (& q1 q2) (| q1 q2))").unwrap();
    let table: Vec<PropAtom> = a.atoms().into_iter().collect();
    let enc = FormulaEncoding::of_formula(&a, &table).unwrap();
    for (i, n) in enc.nodes.iter().enumerate() {
        println!("node {i}: {n:?}");
    }
    let y = encode_with_atoms(&a, &table).unwrap();
    println!("|Y| = {}", y.length());

    let asg: PropAssignment = [(table[0].clone(), true), (table[1].clone(), false)].into();
    let x = StringValue::with_sentinel(&[true, false]);
    let z = compute_eval_trace(&a, &asg).unwrap();
    let env = Environment::new()
        .with_string("X", x)
        .with_string("Y", y)
        .with_string("Z", z.clone());
    println!(
        "Z = {:?}, Eval holds: {}",
        z.payload(),
        eval_formula(&generate_eval(), &env).unwrap()
    );

    let ep = prove_eval_prime(&a, &table).unwrap();
    check_proof(&ep.proof, &[]).unwrap();
    println!("Eval' proved in {} lines", ep.proof.len());
}
