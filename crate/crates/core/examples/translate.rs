//! Translates `∃x≤|X| X(x)` at a few lengths, folded and unfolded.

use uniform_reducts::sigma::parse_formula;
use uniform_reducts::translation::{translate_with, LengthProfile, TranslateOptions};

fn main() {
    let phi = parse_formula("(ex x (len X) (in X x))").unwrap();
    for n in 0..5 {
        let prof = LengthProfile::new().with_len("X", n);
        let folded = translate_with(&phi, &prof, &TranslateOptions::default()).unwrap();
        let raw = translate_with(&phi, &prof, &TranslateOptions::unfolded()).unwrap();
        println!("n={n}  {folded}");
        println!("     {raw}");
    }
}
