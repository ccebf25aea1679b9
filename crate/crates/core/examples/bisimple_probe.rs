//! No left-invertible times right-invertible product equals e.
use rws_lab::builtin;
use rws_lab::greens::product_avoidance_probe;

fn main() {
    let m = builtin::cm_monoid_complete();
    let left = builtin::left_invertible_language(&m);
    let right = builtin::right_invertible_language(&m);
    let e = m.parse_word("e").unwrap();
    for cap in [4, 6, 8] {
        let probe = product_avoidance_probe(&m, &e, &left, &right, cap);
        println!(
            "cap {cap}: {} pairs checked, violation {:?}",
            probe.pairs_checked, probe.violation
        );
    }
}
