//! Working with a user-supplied system: the bicyclic monoid.
use rws_lab::automata::count_words;
use rws_lab::greens::j_one_witness;
use rws_lab::{parse_system, CompleteSystem};

const TEXT: &str = "# bicyclic monoid
alphabet: p q
rules:
p q -> 1
";

fn main() {
    let sys = parse_system(TEXT).unwrap();
    let sys = CompleteSystem::certify(sys).expect("complete");
    let w = sys.parse_word("q q p q p p p").unwrap();
    println!("normal form: {}", sys.format(&sys.normalize(&w)));
    let nf = rws_lab::automata::factor_free_dfa(sys.alphabet(), &sys.left_hand_sides());
    println!("normal forms by length: {:?}", count_words(&nf, 6).unwrap());
    let r = j_one_witness(&sys, &w, 8);
    println!("J-witness found: {}", r.found());
}
