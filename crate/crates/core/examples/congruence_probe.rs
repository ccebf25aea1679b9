//! Identifying any two short elements collapses the generators.
use rws_lab::builtin;
use rws_lab::congruence::{build_ball, default_radius, probe_all_pairs, scenario_suite};

fn main() {
    let m = builtin::cm_monoid_complete();
    let ball = build_ball(&m, 5).unwrap();
    let (verdict, partition) = ball
        .probe(&m.parse_word("x e").unwrap(), &m.parse_word("x e e").unwrap())
        .unwrap();
    println!(
        "x e ~ x e e in a ball of {}: {} after {} passes",
        ball.len(),
        verdict.as_str(),
        partition.passes()
    );

    let report = probe_all_pairs(&m, 3, default_radius(3)).unwrap();
    println!(
        "sum bound 3, radius {}: tested {} collapsed {}",
        report.radius,
        report.tested(),
        report.collapsed()
    );
    for o in scenario_suite(&m).unwrap().outcomes {
        println!("case {:>6}: {}", o.case.name, o.verdict.as_str());
    }
}
