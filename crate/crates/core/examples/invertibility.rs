//! One-sided inverses, checked against the claimed unit languages.
use rws_lab::builtin;
use rws_lab::greens::{check_invertible_languages, left_inverse_witness, right_inverse_witness, Witness};

fn main() {
    let m = builtin::cm_monoid_complete();
    for text in ["x", "x e x", "e y", "y x"] {
        let w = m.parse_word(text).unwrap();
        let show = |r: rws_lab::greens::WitnessReport| match r.witness {
            Some(Witness::Single(v)) => m.format(&v),
            _ => "none".to_string(),
        };
        println!(
            "{text}: right inverse {}, left inverse {}",
            show(right_inverse_witness(&m, &w, 10)),
            show(left_inverse_witness(&m, &w, 10))
        );
    }
    let right = builtin::right_invertible_language(&m);
    let left = builtin::left_invertible_language(&m);
    let check = check_invertible_languages(&m, 6, 10, &right, &left);
    println!(
        "{} normal forms: {} right-invertible, {} left-invertible, {} disagreements",
        check.words_checked,
        check.right_found,
        check.left_found,
        check.disagreements.len()
    );
}
