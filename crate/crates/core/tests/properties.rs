//! Randomized invariants, each checked against a naive reference.

use std::collections::{HashMap, HashSet};

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rws_lab::alphabet::all_words_of_length;
use rws_lab::automata::{count_words, dfa_equivalent, enumerate_words, Dfa};
use rws_lab::builtin;
use rws_lab::congruence::{build_ball, congruence_closure, scenario_cases, ClosureStrategy};
use rws_lab::coset::{todd_coxeter, GroupPresentation};
use rws_lab::{Alphabet, Word};

fn word_strategy(k: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k, 0..=max_len).prop_map(Word::from_symbols)
}

fn dfa_strategy() -> impl Strategy<Value = Dfa> {
    (1usize..=8).prop_flat_map(|n| {
        (
            0..n,
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(0..n, n * 2),
        )
            .prop_map(|(start, acc, trans)| {
                Dfa::new(Alphabet::new(["a", "b"]).unwrap(), start, acc, trans).unwrap()
            })
    })
}

/// Moore refinement on reachable states; returns the number of classes.
fn naive_minimal_states(d: &Dfa) -> usize {
    let k = d.alphabet().len();
    let mut reach = vec![d.start()];
    let mut seen: HashSet<usize> = reach.iter().copied().collect();
    let mut i = 0;
    while i < reach.len() {
        for a in 0..k as u8 {
            let t = d.next(reach[i], a);
            if seen.insert(t) {
                reach.push(t);
            }
        }
        i += 1;
    }
    let mut class: HashMap<usize, usize> = reach.iter().map(|&s| (s, d.is_accepting(s) as usize)).collect();
    loop {
        let mut sig: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = HashMap::new();
        for &s in &reach {
            let mut key = vec![class[&s]];
            key.extend((0..k as u8).map(|a| class[&d.next(s, a)]));
            let len = sig.len();
            next.insert(s, *sig.entry(key).or_insert(len));
        }
        let before: HashSet<usize> = class.values().copied().collect();
        if sig.len() == before.len() {
            return sig.len();
        }
        class = next;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalize_is_shortening_and_normal(w in word_strategy(3, 40)) {
        let m = builtin::cm_monoid();
        let (nf, steps) = m.normalize_counting(&w);
        prop_assert!(steps <= w.len());
        prop_assert!(nf.len() + steps <= w.len());
        prop_assert!(m.is_normal_form(&nf));
        prop_assert_eq!(m.normalize(&nf), nf.clone());
        prop_assert!(nf <= w);
    }

    #[test]
    fn format_parse_round_trip(w in word_strategy(3, 20)) {
        let m = builtin::cm_monoid();
        prop_assert_eq!(m.parse_word(&m.format(&w)).unwrap(), w);
    }

    #[test]
    fn hopcroft_matches_moore(d in dfa_strategy()) {
        let min = d.minimize();
        prop_assert_eq!(min.num_states(), naive_minimal_states(&d));
        prop_assert!(dfa_equivalent(&min, &d).unwrap().equivalent);
        prop_assert_eq!(min.minimize(), min.clone());
        for n in 0..=6 {
            for w in all_words_of_length(2, n) {
                prop_assert_eq!(min.accepts(&w), d.accepts(&w));
            }
        }
    }

    #[test]
    fn count_matches_enumerate(d in dfa_strategy()) {
        let counts = count_words(&d, 6).unwrap();
        let words = enumerate_words(&d, 6);
        for (n, &c) in counts.iter().enumerate() {
            prop_assert_eq!(words.iter().filter(|w| w.len() == n).count() as u64, c);
        }
        prop_assert!(words.windows(2).all(|p| p[0] < p[1]));
        prop_assert!(words.iter().all(|w| d.accepts(w)));
    }

    #[test]
    fn cyclic_group_order(n in 1usize..=12) {
        let a = Alphabet::new(["a"]).unwrap();
        let rel = vec!["a"; n].join(" ");
        let pres = GroupPresentation::parse(a, &[rel.as_str()]).unwrap();
        let table = todd_coxeter(&pres, 1000).unwrap();
        prop_assert_eq!(table.index(), n);
        prop_assert!(table.verify());
    }
}

#[test]
fn multiplication_is_associative() {
    let s = builtin::cm_monoid_complete();
    let ball = build_ball(&s, 6).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..1000 {
        let pick = |rng: &mut StdRng| ball.element(rng.gen_range(0..ball.len() as u32)).clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let left = s.multiply(&s.multiply(&a, &b), &c);
        let right = s.multiply(&a, &s.multiply(&b, &c));
        assert_eq!(left, right);
        assert_eq!(left, s.normalize(&a.concat(&b).concat(&c)));
    }
}

#[test]
fn ball_tables_agree_with_normalize() {
    let s = builtin::cm_monoid_complete();
    let ball = build_ball(&s, 5).unwrap();
    for i in 0..ball.len() as u32 {
        for g in 0..3u8 {
            let gw = Word::from_symbols(vec![g]);
            for (img, prod) in [
                (ball.left(i, g), gw.concat(ball.element(i))),
                (ball.right(i, g), ball.element(i).concat(&gw)),
            ] {
                match ball.index_of(&s.normalize(&prod)) {
                    Some(j) => assert_eq!(img, j),
                    None => assert_eq!(img, rws_lab::congruence::OUT),
                }
            }
        }
    }
}

#[test]
fn closure_is_monotone_in_radius() {
    let s = builtin::cm_monoid_complete();
    let balls: Vec<_> = (2..=8).map(|r| build_ball(&s, r).unwrap()).collect();
    let seeds: Vec<(Word, Word)> = scenario_cases().into_iter().map(|c| (c.u, c.v)).collect();
    for seed in &seeds {
        let mut prev: Option<(usize, rws_lab::congruence::Partition)> = None;
        for ball in &balls {
            if seed.0.len().max(seed.1.len()) > ball.radius() {
                continue;
            }
            let p = congruence_closure(ball, std::slice::from_ref(seed), ClosureStrategy::Worklist).unwrap();
            if let Some((r, q)) = &prev {
                let small = &balls[r - 2];
                for i in 0..small.len() as u32 {
                    for j in 0..small.len() as u32 {
                        if q.same(i, j) {
                            let (a, b) = (small.element(i), small.element(j));
                            assert!(p.same(ball.index_of(a).unwrap(), ball.index_of(b).unwrap()));
                        }
                    }
                }
            }
            prev = Some((ball.radius(), p));
        }
    }
}

#[test]
fn closure_is_an_equivalence_and_closed() {
    let s = builtin::cm_monoid_complete();
    let ball = build_ball(&s, 6).unwrap();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..40 {
        let u = ball.element(rng.gen_range(0..ball.len() as u32)).clone();
        let v = ball.element(rng.gen_range(0..ball.len() as u32)).clone();
        let full = congruence_closure(&ball, &[(u.clone(), v.clone())], ClosureStrategy::FullPasses).unwrap();
        let work = congruence_closure(&ball, &[(u.clone(), v.clone())], ClosureStrategy::Worklist).unwrap();
        for i in 0..ball.len() as u32 {
            assert!(full.same(i, i));
            assert_eq!(full.representative(i), work.representative(i));
        }
        assert!(full.is_closed_in(&ball));
        let (a, b) = (ball.index_of(&u).unwrap(), ball.index_of(&v).unwrap());
        assert!(full.same(a, b) && full.same(b, a));
    }
}

#[test]
fn whole_ball_collapses_for_small_radius() {
    // once the generators are identified every in-ball element follows
    let s = builtin::cm_monoid_complete();
    for radius in 1..=4 {
        let ball = build_ball(&s, radius).unwrap();
        for case in scenario_cases() {
            if case.u.len().max(case.v.len()) > radius {
                continue;
            }
            let p = congruence_closure(&ball, &[(case.u, case.v)], ClosureStrategy::Worklist).unwrap();
            let gens = ball.generator_indices().unwrap();
            if p.all_same(&gens) {
                assert_eq!(p.class_count(), 1, "case {} radius {radius}", case.name);
            }
        }
    }
}

#[test]
fn coset_index_ignores_relator_order() {
    let gens = Alphabet::new(["a", "b"]).unwrap();
    let base = ["a a a", "b b", "a b a b"];
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..20 {
        let mut rels: Vec<String> = base.iter().map(|r| r.to_string()).collect();
        for i in (1..rels.len()).rev() {
            rels.swap(i, rng.gen_range(0..=i));
        }
        // a cyclic rotation of a relator defines the same group
        let r = rng.gen_range(0..rels.len());
        let toks: Vec<&str> = rels[r].split_whitespace().collect();
        let k = rng.gen_range(0..toks.len());
        rels[r] = toks[k..].iter().chain(&toks[..k]).copied().collect::<Vec<_>>().join(" ");
        let refs: Vec<&str> = rels.iter().map(String::as_str).collect();
        let pres = GroupPresentation::parse(gens.clone(), &refs).unwrap();
        assert_eq!(todd_coxeter(&pres, 1000).unwrap().index(), 6);
    }
}
