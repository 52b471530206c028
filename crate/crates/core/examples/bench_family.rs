use uniform_reducts::circuits::TruthTableSystem;
use uniform_reducts::prop::PropFormula;
use uniform_reducts::simulation::{bench_polynomiality, Mode};

fn main() {
    let inputs: Vec<_> = (1..=5)
        .map(|k| {
            let a = (1..=k)
                .map(|i| PropFormula::or(PropFormula::q(i), PropFormula::not(PropFormula::q(i))))
                .reduce(PropFormula::and)
                .unwrap();
            TruthTableSystem::prove(&a).unwrap()
        })
        .collect();
    let rep = bench_polynomiality(&TruthTableSystem, &inputs, Mode::Premise).unwrap();
    println!("len_u,proof_size,millis");
    for r in &rep.rows {
        println!("{},{},{:.1}", r.len_u, r.proof_size, r.millis);
    }
    if let Some(f) = rep.fit {
        println!(
            "slope {:.3} intercept {:.3} r2 {:.4}",
            f.slope, f.intercept, f.r2
        );
    }
}
