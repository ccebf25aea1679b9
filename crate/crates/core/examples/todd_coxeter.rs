//! The maximal group image of the monoid is trivial.
use rws_lab::builtin;
use rws_lab::coset::{monoid_to_group_presentation, todd_coxeter, GroupPresentation};
use rws_lab::Alphabet;

fn main() {
    let pres = monoid_to_group_presentation(&builtin::cm_monoid());
    for r in pres.relators() {
        println!("relator {}", pres.format_relator(r));
    }
    let table = todd_coxeter(&pres, 10_000).unwrap();
    println!("index {}", table.index());

    let s3 = GroupPresentation::parse(Alphabet::new(["a", "b"]).unwrap(), &["a a a", "b b", "a b a b"])
        .unwrap();
    let table = todd_coxeter(&s3, 1000).unwrap();
    print!("S3, index {}:\n{}", table.index(), table.to_text());
}
