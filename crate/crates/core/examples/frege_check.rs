//! Builds the excluded-middle derivation, prints it, and checks it.

use uniform_reducts::frege::{check_proof, excluded_middle, render_proof};
use uniform_reducts::prop::{is_tautology_bruteforce, parse_prop};

fn main() {
    let a = parse_prop("q1").unwrap();
    let p = excluded_middle(&a);
    print!("{}", render_proof(&p));
    check_proof(&p, &[]).expect("accepted");
    let c = p.conclusion().unwrap();
    assert_eq!(is_tautology_bruteforce(c), Ok(true));
    eprintln!("{} lines, conclusion {c}", p.len());
}
