//! The normal forms as a regular language, compared with the closed form.
use rws_lab::automata::{count_words, dfa_equivalent, enumerate_words, factor_free_dfa};
use rws_lab::builtin;

fn main() {
    let m = builtin::cm_monoid();
    let nf = factor_free_dfa(m.alphabet(), &m.left_hand_sides()).minimize();
    let closed = builtin::normal_form_language(&m);
    let eq = dfa_equivalent(&nf, &closed).unwrap();
    println!("equivalent to {}: {}", builtin::NORMAL_FORM_REGEX, eq.equivalent);
    println!("minimal states: {}", nf.num_states());
    println!("counts by length: {:?}", count_words(&nf, 10).unwrap());
    let short: Vec<String> = enumerate_words(&nf, 2).iter().map(|w| m.format(w)).collect();
    println!("length <= 2: {}", short.join(", "));
    print!("{}", nf.to_text());
}
