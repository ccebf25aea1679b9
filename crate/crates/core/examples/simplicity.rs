//! Every short element divides the identity: p w q = 1.
use rws_lab::builtin;
use rws_lab::greens::{j_one_witness, Witness};

fn main() {
    let m = builtin::cm_monoid_complete();
    let words = m.normal_forms(4);
    let mut found = 0;
    for w in &words {
        let r = j_one_witness(&m, w, 10);
        if let Some(Witness::Pair(p, q)) = &r.witness {
            found += 1;
            if w.len() <= 2 {
                println!("{}: p = {}, q = {}", m.format(w), m.format(p), m.format(q));
            }
        }
    }
    println!("{found} of {} normal forms of length <= 4 have a witness", words.len());
}
