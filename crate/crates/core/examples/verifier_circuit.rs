//! Builds the truth-table verifier circuit for a proof length, runs it, and
//! evaluates the quantifier-free `φ_g` on the run.

use uniform_reducts::circuits::{gen_phi_g, run_circuit, ProofSystem, TruthTableSystem};
use uniform_reducts::prop::parse_prop;
use uniform_reducts::sigma::{eval_formula, Environment};

fn main() {
    let a = parse_prop("(> q1 q1)").unwrap();
    let u = TruthTableSystem::prove(&a).unwrap();
    let y = TruthTableSystem.compute(&u).y;
    let c = TruthTableSystem.circuit(u.length(), y.length()).unwrap();
    println!(
        "|U| = {}, |Y| = {}, {} gates",
        u.length(),
        y.length(),
        c.len()
    );
    let w = run_circuit(&c, u.payload()).unwrap();
    println!("accept = {}", w.wires[c.accept()]);

    let phi = gen_phi_g(&TruthTableSystem, u.length(), y.length()).unwrap();
    let env = Environment::new()
        .with_string("U", u.clone())
        .with_string("Y", y.clone())
        .with_string("W", w.to_string_value());
    println!("phi_g holds: {}", eval_formula(&phi, &env).unwrap());
    let env = env.with_string("Y", y.with_flipped(0));
    println!(
        "phi_g with a wrong Y: {}",
        eval_formula(&phi, &env).unwrap()
    );
}
