//! Certify the built-in system and a broken variant.
use rws_lab::{builtin, parse_system};

fn main() {
    let m = builtin::cm_monoid();
    let report = m.check_complete();
    for (rule, verdict) in m.rules().iter().zip(&report.order.verdicts) {
        println!("{} -> {} : {}", m.format(&rule.lhs), m.format(&rule.rhs), verdict.as_str());
    }
    for p in &report.critical_pairs {
        println!(
            "superposition {} -> {} | {} (trivial: {})",
            m.format(&p.superposition),
            m.format(&p.left_result),
            m.format(&p.right_result),
            p.is_trivial()
        );
    }
    println!("complete: {}", report.complete());

    let broken = parse_system("alphabet: a b\nrules:\na a -> a\na a b -> b\n").unwrap();
    for p in &broken.check_complete().unjoinable {
        println!(
            "unjoinable {} -> {} | {}",
            broken.format(&p.superposition),
            broken.format(&p.left_result),
            broken.format(&p.right_result)
        );
    }
}
