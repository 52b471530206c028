//! Compiles a truth-table proof into an f+ proof in each mode and prints the
//! SIMRUN report.

use uniform_reducts::circuits::TruthTableSystem;
use uniform_reducts::prop::parse_prop;
use uniform_reducts::simulation::{simulate, Mode};

fn main() {
    let a = parse_prop("(> (& q1 q2) q1)").unwrap();
    let u = TruthTableSystem::prove(&a).unwrap();
    for mode in [Mode::Premise, Mode::OracleImport, Mode::ReductImport] {
        let run = simulate(&TruthTableSystem, &u, mode).unwrap();
        println!("{mode:?}: |U_0| = {}", u.length());
        print!("{}", run.report());
    }
}
