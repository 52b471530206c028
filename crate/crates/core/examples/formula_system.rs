//! A proof system built from a true bounded formula: validates it, compiles
//! proofs for n = 0..4, and checks them as a membership witness.

use uniform_reducts::circuits::FormulaSystem;
use uniform_reducts::frege::render_fplus;
use uniform_reducts::sigma::parse_formula;
use uniform_reducts::simulation::{simulate, verify_membership_witness, Mode, StandardBase};

fn main() {
    let phi = parse_formula("(all x (len X) (ex y (len X) (<= x y)))").unwrap();
    let sys = FormulaSystem::new(phi.clone(), vec!["X".into()]).unwrap();
    println!("validator flags up to length 8: {:?}", sys.validate(8));
    let proofs: Vec<_> = (0..=4)
        .map(|n| {
            let run = simulate(&sys, &sys.proof_for(&[n]), Mode::ReductImport).unwrap();
            (vec![n], render_fplus(&run.output.to_fplus()).into_bytes())
        })
        .collect();
    let v = verify_membership_witness(&phi, sys.vars(), &proofs, &StandardBase);
    for e in &v.entries {
        println!(
            "n={:?} size={:?} problem={:?}",
            e.lengths, e.size, e.problem
        );
    }
    println!("accepted: {}", v.accepted);
}
