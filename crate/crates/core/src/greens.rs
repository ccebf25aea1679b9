//! Bounded witness searches for one-sided units, J-relatedness to the
//! identity and the product-avoidance argument against bisimplicity.
//!
//! Every search is capped. `NotFoundWithinCap` records only that no witness
//! exists up to the cap; it is never evidence of non-invertibility.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::Word;
use crate::automata::{enumerate_words, Dfa};
use crate::rewriting::{CompleteSystem, RewritingSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Found,
    NotFoundWithinCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `w · v = 1`
    RightInverse,
    /// `v · w = 1`
    LeftInverse,
    /// `p · w · q = 1`
    JOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Single(Word),
    Pair(Word, Word),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub kind: WitnessKind,
    pub subject: Word,
    pub witness: Option<Witness>,
    pub search_cap: usize,
    pub verdict: Verdict,
}

impl WitnessReport {
    fn new(kind: WitnessKind, subject: &Word, witness: Option<Witness>, cap: usize) -> Self {
        let verdict = if witness.is_some() {
            Verdict::Found
        } else {
            Verdict::NotFoundWithinCap
        };
        WitnessReport {
            kind,
            subject: subject.clone(),
            witness,
            search_cap: cap,
            verdict,
        }
    }

    pub fn found(&self) -> bool {
        self.verdict == Verdict::Found
    }

    /// Re-normalizes the asserted product. Reports with no witness verify
    /// trivially; a witness of the wrong shape never does.
    pub fn verify(&self, sys: &RewritingSystem) -> bool {
        let w = &self.subject;
        match (&self.witness, self.kind) {
            (None, _) => self.verdict == Verdict::NotFoundWithinCap,
            (Some(Witness::Single(v)), WitnessKind::RightInverse) => {
                v.len() <= self.search_cap && sys.normalize(&w.concat(v)).is_empty()
            }
            (Some(Witness::Single(v)), WitnessKind::LeftInverse) => {
                v.len() <= self.search_cap && sys.normalize(&v.concat(w)).is_empty()
            }
            (Some(Witness::Pair(p, q)), WitnessKind::JOne) => {
                p.len() <= self.search_cap
                    && q.len() <= self.search_cap
                    && sys.normalize(&p.concat(w).concat(q)).is_empty()
            }
            _ => false,
        }
    }
}

/// First normal form of length `<= cap`, in shortlex order, satisfying `pred`.
fn first_normal_form(
    sys: &RewritingSystem,
    cap: usize,
    mut pred: impl FnMut(&Word) -> bool,
) -> Option<Word> {
    let mut level = vec![Word::empty()];
    for len in 0..=cap {
        if let Some(w) = level.iter().find(|w| pred(w)) {
            return Some(w.clone());
        }
        if len == cap {
            break;
        }
        level = extend_level(sys, &level);
    }
    None
}

fn extend_level(sys: &RewritingSystem, level: &[Word]) -> Vec<Word> {
    let mut next = Vec::new();
    for w in level {
        for s in sys.alphabet().indices() {
            let cand = w.appended(s);
            if sys.rules().iter().all(|r| !cand.ends_with(&r.lhs)) {
                next.push(cand);
            }
        }
    }
    next
}

/// Shortlex-least `v` with `|v| <= cap` and `w · v = 1`.
///
/// The least such word is always a normal form, so the search runs over
/// normal forms in shortlex order.
pub fn right_inverse_witness(sys: &CompleteSystem, w: &Word, cap: usize) -> WitnessReport {
    let found = first_normal_form(sys, cap, |v| sys.normalize(&w.concat(v)).is_empty());
    WitnessReport::new(WitnessKind::RightInverse, w, found.map(Witness::Single), cap)
}

/// Shortlex-least `v` with `|v| <= cap` and `v · w = 1`.
pub fn left_inverse_witness(sys: &CompleteSystem, w: &Word, cap: usize) -> WitnessReport {
    let found = first_normal_form(sys, cap, |v| sys.normalize(&v.concat(w)).is_empty());
    WitnessReport::new(WitnessKind::LeftInverse, w, found.map(Witness::Single), cap)
}

/// Breadth-first search over the elements `p · w · q` for growing `q`,
/// keeping the least `q` reaching each element.
struct RightSearch {
    frontier: Vec<(Word, Word)>,
    seen: HashSet<Word>,
    depth: usize,
}

impl RightSearch {
    fn new(base: Word) -> Self {
        RightSearch {
            frontier: vec![(Word::empty(), base.clone())],
            seen: HashSet::from([base]),
            depth: 0,
        }
    }

    fn advance(&mut self, sys: &RewritingSystem) {
        let mut next = Vec::new();
        for (q, s) in &self.frontier {
            for a in sys.alphabet().indices() {
                let t = sys.normalize(&s.appended(a));
                if self.seen.insert(t.clone()) {
                    next.push((q.appended(a), t));
                }
            }
        }
        self.frontier = next;
        self.depth += 1;
    }

    /// Least `q` of length exactly `depth` with `p · w · q = 1`.
    fn identity_at(&mut self, sys: &RewritingSystem, depth: usize) -> Option<Word> {
        while self.depth < depth && !self.frontier.is_empty() {
            self.advance(sys);
        }
        if self.depth != depth {
            return None;
        }
        self.frontier
            .iter()
            .find(|(_, s)| s.is_empty())
            .map(|(q, _)| q.clone())
    }
}

/// `(p, q)` with `|p|, |q| <= cap` and `p · w · q = 1`, minimal by
/// `(|p| + |q|, p, q)` with shortlex on each word.
///
/// Deepens the total length; for each `p` the element `p · w` is extended
/// on the right by a breadth-first search over elements, so each `p`
/// contributes its least right inverse of every length.
pub fn j_one_witness(sys: &CompleteSystem, w: &Word, cap: usize) -> WitnessReport {
    let mut levels: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    let mut searches: HashMap<Word, RightSearch> = HashMap::new();
    for total in 0..=2 * cap {
        while levels.len() <= total.min(cap) {
            let next = extend_level(sys, levels.last().expect("nonempty"));
            levels.push(next);
        }
        for plen in 0..=total.min(cap) {
            let qlen = total - plen;
            if qlen > cap {
                continue;
            }
            for p in &levels[plen] {
                let search = searches
                    .entry(p.clone())
                    .or_insert_with(|| RightSearch::new(sys.normalize(&p.concat(w))));
                if let Some(q) = search.identity_at(sys, qlen) {
                    let witness = Witness::Pair(p.clone(), q);
                    return WitnessReport::new(WitnessKind::JOne, w, Some(witness), cap);
                }
            }
        }
    }
    WitnessReport::new(WitnessKind::JOne, w, None, cap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductProbe {
    pub target: Word,
    pub cap: usize,
    pub left_count: usize,
    pub right_count: usize,
    pub pairs_checked: u64,
    /// Least `(p, q)` (by `p`, then `q`, shortlex) whose product is the target.
    pub violation: Option<(Word, Word)>,
}

impl ProductProbe {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that no `p` from `left_lang` and `q` from `right_lang`, both of
/// length `<= cap`, multiply to `target`. The target is normalized first.
pub fn product_avoidance_probe(
    sys: &CompleteSystem,
    target: &Word,
    left_lang: &Dfa,
    right_lang: &Dfa,
    cap: usize,
) -> ProductProbe {
    let target = sys.normalize(target);
    let lefts = enumerate_words(left_lang, cap);
    let rights = enumerate_words(right_lang, cap);
    let violation = lefts.par_iter().find_map_first(|p| {
        rights
            .iter()
            .find(|q| sys.normalize(&p.concat(q)) == target)
            .map(|q| (p.clone(), q.clone()))
    });
    let pairs_checked = match &violation {
        None => (lefts.len() as u64) * (rights.len() as u64),
        Some((p, q)) => {
            let before = lefts.iter().position(|x| x == p).expect("p from lefts");
            let within = rights.iter().position(|x| x == q).expect("q from rights");
            (before as u64) * (rights.len() as u64) + within as u64 + 1
        }
    };
    ProductProbe {
        target,
        cap,
        left_count: lefts.len(),
        right_count: rights.len(),
        pairs_checked,
        violation,
    }
}

/// One normal form whose search result disagrees with a language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub word: Word,
    pub side: WitnessKind,
    pub in_language: bool,
    pub found: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertibilityCheck {
    pub words_checked: usize,
    pub right_found: usize,
    pub left_found: usize,
    pub disagreements: Vec<Disagreement>,
}

impl InvertibilityCheck {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares bounded inverse searches on every normal form of length
/// `<= max_len` against the claimed one-sided-unit languages.
pub fn check_invertible_languages(
    sys: &CompleteSystem,
    max_len: usize,
    cap: usize,
    right_lang: &Dfa,
    left_lang: &Dfa,
) -> InvertibilityCheck {
    let words = sys.normal_forms(max_len);
    let results: Vec<(Word, bool, bool)> = words
        .par_iter()
        .map(|w| {
            let r = right_inverse_witness(sys, w, cap);
            let l = left_inverse_witness(sys, w, cap);
            debug_assert!(r.verify(sys) && l.verify(sys));
            (w.clone(), r.found(), l.found())
        })
        .collect();
    let mut disagreements = Vec::new();
    for (w, r, l) in &results {
        for (side, found, lang) in [
            (WitnessKind::RightInverse, *r, right_lang),
            (WitnessKind::LeftInverse, *l, left_lang),
        ] {
            let in_language = lang.accepts(w);
            if in_language != found {
                disagreements.push(Disagreement {
                    word: w.clone(),
                    side,
                    in_language,
                    found,
                });
            }
        }
    }
    InvertibilityCheck {
        words_checked: results.len(),
        right_found: results.iter().filter(|r| r.1).count(),
        left_found: results.iter().filter(|r| r.2).count(),
        disagreements,
    }
}
