//! Compares the brute-force tautology check of a translation with direct
//! evaluation over every string of that length.

use uniform_reducts::prop::is_tautology_bruteforce;
use uniform_reducts::sigma::{eval_formula, parse_formula, Environment, StringValue};
use uniform_reducts::translation::{translate, LengthProfile};

fn main() {
    let src = "(all x (len X) (all y (len X) (imp (and (in X x) (<= y x)) (in X y))))";
    let phi = parse_formula(src).unwrap();
    println!("{}", phi.pretty());
    for n in 0..7 {
        let t = translate(&phi, &LengthProfile::new().with_len("X", n)).unwrap();
        let taut = is_tautology_bruteforce(&t).unwrap();
        let sem = StringValue::all_of_length(n)
            .all(|x| eval_formula(&phi, &Environment::new().with_string("X", x)).unwrap());
        println!(
            "n={n} atoms={} tautology={taut} semantic={sem}",
            t.atoms().len()
        );
        assert_eq!(taut, sem);
    }
}
