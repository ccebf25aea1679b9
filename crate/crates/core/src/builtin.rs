//! The built-in case study `cm-monoid`: the monoid on `x y e` with rules
//! `e³ → e`, `xey → y`, `xe²y → x`, `xy → 1`, together with the regular
//! languages describing its normal forms and one-sided units.

use crate::alphabet::Word;
use crate::automata::{combine_dfa, factor_free_dfa, parse_regex, regex_to_dfa, Dfa, SetOp};
use crate::rewriting::{parse_system, CompleteSystem, RewritingSystem};

pub const CM_MONOID_NAME: &str = "cm-monoid";

pub const CM_MONOID_SYSTEM: &str = "\
# congruence-free, simple, not bisimple
alphabet: x y e
rules:
e e e -> e
x e y -> y
x e e y -> x
x y -> 1
";

/// Normal forms as a regular expression, before removing `e e e` factors.
pub const NORMAL_FORM_REGEX: &str = "( e | y )* ( e | x )*";
/// Right-invertible normal forms, before removing `e e e` factors.
pub const RIGHT_INVERTIBLE_REGEX: &str = "1 | x ( e | x )*";
/// Left-invertible normal forms, before removing `e e e` factors.
pub const LEFT_INVERTIBLE_REGEX: &str = "( e | y )* y | 1";

pub fn cm_monoid() -> RewritingSystem {
    parse_system(CM_MONOID_SYSTEM).expect("built-in system parses")
}

pub fn cm_monoid_complete() -> CompleteSystem {
    CompleteSystem::certify(cm_monoid()).expect("built-in system is complete")
}

fn eee_free(sys: &RewritingSystem) -> Dfa {
    let e = sys.alphabet().symbol("e").expect("alphabet has e");
    factor_free_dfa(sys.alphabet(), &[Word::from_symbols(vec![e, e, e])])
}

/// `regex` intersected with the words avoiding `e e e`, minimized.
pub fn eee_free_language(sys: &RewritingSystem, regex: &str) -> Dfa {
    let r = parse_regex(regex, sys.alphabet()).expect("built-in regex parses");
    combine_dfa(SetOp::Intersect, &regex_to_dfa(&r), &eee_free(sys))
        .expect("same alphabet")
        .minimize()
}

pub fn normal_form_language(sys: &RewritingSystem) -> Dfa {
    eee_free_language(sys, NORMAL_FORM_REGEX)
}

pub fn right_invertible_language(sys: &RewritingSystem) -> Dfa {
    eee_free_language(sys, RIGHT_INVERTIBLE_REGEX)
}

pub fn left_invertible_language(sys: &RewritingSystem) -> Dfa {
    eee_free_language(sys, LEFT_INVERTIBLE_REGEX)
}
