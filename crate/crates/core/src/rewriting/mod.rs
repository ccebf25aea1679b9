//! Finite string-rewriting systems.
//!
//! Rules are oriented by shortlex at construction time, so every rewriting
//! sequence terminates and [`RewritingSystem::normalize`] needs no step
//! budget.

mod critical;
mod parse;

use std::cmp::Ordering;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::{shortlex_cmp, Alphabet, Symbol, Word};

pub use critical::{
    CompleteSystem, CompletenessReport, CriticalPair, OverlapKind, WordEquality,
};
pub use parse::{parse_system, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Rule { lhs, rhs }
    }

    pub fn verdict(&self) -> RuleVerdict {
        if self.lhs.is_empty() {
            return RuleVerdict::Violation;
        }
        match self.lhs.len().cmp(&self.rhs.len()) {
            Ordering::Greater => RuleVerdict::LengthReducing,
            Ordering::Equal if self.lhs.as_slice() > self.rhs.as_slice() => {
                RuleVerdict::ShortlexReducing
            }
            _ => RuleVerdict::Violation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleVerdict {
    LengthReducing,
    ShortlexReducing,
    Violation,
}

impl RuleVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleVerdict::LengthReducing => "length-reducing",
            RuleVerdict::ShortlexReducing => "shortlex-reducing",
            RuleVerdict::Violation => "violation",
        }
    }
}

/// Per-rule termination certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    pub verdicts: Vec<RuleVerdict>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| *v != RuleVerdict::Violation)
    }
}

/// Certifies a rule list against the shortlex order. Works on raw rules so
/// that violations can be reported for inputs that never became a system.
pub fn reduction_order_report(rules: &[Rule]) -> OrderReport {
    OrderReport {
        verdicts: rules.iter().map(Rule::verdict).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("rule {index}: left-hand side is empty")]
    EmptyLhs { index: usize },
    #[error("rule {index}: not shortlex-reducing")]
    NotReducing { index: usize },
    #[error("rule {index}: duplicate left-hand side (first used by rule {first})")]
    DuplicateLhs { index: usize, first: usize },
    #[error("rule {index}: symbol index out of range for the alphabet")]
    SymbolOutOfRange { index: usize },
}

/// A single rewrite site: rule `rule` matches at `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Redex {
    pub position: usize,
    pub rule: usize,
}

#[derive(Debug, Clone)]
pub struct RewritingSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    // rule indices starting with each symbol, longest lhs first, then rule order
    by_first: Vec<Vec<usize>>,
    max_lhs: usize,
    completeness: OnceLock<CompletenessReport>,
}

impl PartialEq for RewritingSystem {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.rules == other.rules
    }
}

impl Eq for RewritingSystem {}

impl RewritingSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>) -> Result<Self, SystemError> {
        for (index, rule) in rules.iter().enumerate() {
            let out_of_range = rule
                .lhs
                .iter()
                .chain(rule.rhs.iter())
                .any(|&s| s as usize >= alphabet.len());
            if out_of_range {
                return Err(SystemError::SymbolOutOfRange { index });
            }
            if rule.lhs.is_empty() {
                return Err(SystemError::EmptyLhs { index });
            }
            if rule.verdict() == RuleVerdict::Violation {
                return Err(SystemError::NotReducing { index });
            }
            if let Some(first) = rules[..index].iter().position(|r| r.lhs == rule.lhs) {
                return Err(SystemError::DuplicateLhs { index, first });
            }
        }
        let mut by_first = vec![Vec::new(); alphabet.len()];
        let mut order: Vec<usize> = (0..rules.len()).collect();
        order.sort_by(|&a, &b| rules[b].lhs.len().cmp(&rules[a].lhs.len()).then(a.cmp(&b)));
        for i in order {
            by_first[rules[i].lhs[0] as usize].push(i);
        }
        let max_lhs = rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        Ok(RewritingSystem {
            alphabet,
            rules,
            by_first,
            max_lhs,
            completeness: OnceLock::new(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn left_hand_sides(&self) -> Vec<Word> {
        self.rules.iter().map(|r| r.lhs.clone()).collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, crate::alphabet::WordError> {
        self.alphabet.parse_word(text)
    }

    pub fn format(&self, w: &Word) -> String {
        self.alphabet.format(w)
    }

    /// The rule applied at `pos` by the deterministic strategy, if any.
    fn match_at(&self, w: &[Symbol], pos: usize) -> Option<usize> {
        let rest = &w[pos..];
        let first = *rest.first()?;
        self.by_first[first as usize]
            .iter()
            .copied()
            .find(|&i| rest.starts_with(&self.rules[i].lhs))
    }

    fn splice(&self, w: &mut Vec<Symbol>, pos: usize, rule: usize) {
        let r = &self.rules[rule];
        w.splice(pos..pos + r.lhs.len(), r.rhs.iter().copied());
    }

    /// Rewrites to the irreducible descendant using the leftmost position,
    /// longest left-hand side, then rule order. Returns the number of steps.
    pub fn normalize_counting(&self, w: &Word) -> (Word, usize) {
        let mut buf = w.0.clone();
        let mut pos = 0;
        let mut steps = 0;
        let back = self.max_lhs.saturating_sub(1);
        while pos < buf.len() {
            match self.match_at(&buf, pos) {
                Some(rule) => {
                    self.splice(&mut buf, pos, rule);
                    steps += 1;
                    pos = pos.saturating_sub(back);
                }
                None => pos += 1,
            }
        }
        (Word(buf), steps)
    }

    pub fn normalize(&self, w: &Word) -> Word {
        self.normalize_counting(w).0
    }

    /// `normalize(u · v)`
    pub fn multiply(&self, u: &Word, v: &Word) -> Word {
        self.normalize(&u.concat(v))
    }

    pub fn is_normal_form(&self, w: &Word) -> bool {
        (0..w.len()).all(|p| self.match_at(w, p).is_none())
    }

    /// Every rule occurrence in `w`, ordered by position then rule index.
    pub fn redexes(&self, w: &Word) -> Vec<Redex> {
        let mut out = Vec::new();
        for position in 0..w.len() {
            for (rule, r) in self.rules.iter().enumerate() {
                if w[position..].starts_with(&r.lhs) {
                    out.push(Redex { position, rule });
                }
            }
        }
        out
    }

    /// Applies one rewrite. Panics if `redex` does not match `w`.
    pub fn apply(&self, w: &Word, redex: Redex) -> Word {
        let r = &self.rules[redex.rule];
        assert!(
            w[redex.position..].starts_with(&r.lhs),
            "redex does not match word"
        );
        let mut buf = w.0.clone();
        self.splice(&mut buf, redex.position, redex.rule);
        Word(buf)
    }

    /// One step of the deterministic strategy.
    pub fn step(&self, w: &Word) -> Option<(Word, Redex)> {
        (0..w.len()).find_map(|position| {
            self.match_at(w, position).map(|rule| {
                let redex = Redex { position, rule };
                (self.apply(w, redex), redex)
            })
        })
    }

    pub fn check_reduction_order(&self) -> OrderReport {
        reduction_order_report(&self.rules)
    }

    /// All normal forms of length at most `max_len`, in shortlex order.
    ///
    /// Normal forms are closed under prefixes, so each level extends the
    /// previous one and only needs the suffix checked.
    pub fn normal_forms(&self, max_len: usize) -> Vec<Word> {
        let mut all = vec![Word::empty()];
        let mut level = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &level {
                for s in self.alphabet.indices() {
                    let cand = w.appended(s);
                    if !self.has_lhs_suffix(&cand) {
                        next.push(cand);
                    }
                }
            }
            all.extend(next.iter().cloned());
            level = next;
        }
        all
    }

    fn has_lhs_suffix(&self, w: &[Symbol]) -> bool {
        self.rules.iter().any(|r| w.ends_with(&r.lhs))
    }

    /// Compares two words by shortlex.
    pub fn shortlex(&self, a: &Word, b: &Word) -> Ordering {
        shortlex_cmp(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn m() -> RewritingSystem {
        builtin::cm_monoid()
    }

    fn w(sys: &RewritingSystem, t: &str) -> Word {
        sys.parse_word(t).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let sys = m();
        assert_eq!(sys.format(&sys.normalize(&w(&sys, "x e y"))), "y");
        assert_eq!(sys.format(&sys.normalize(&w(&sys, "x e e y y"))), "1");
        assert_eq!(sys.format(&sys.normalize(&w(&sys, "e e e e"))), "e e");
        assert_eq!(sys.normalize(&Word::empty()), Word::empty());
    }

    #[test]
    fn e4_takes_one_step_by_leftmost_strategy() {
        let sys = m();
        let (nf, steps) = sys.normalize_counting(&w(&sys, "e e e e"));
        assert_eq!(sys.format(&nf), "e e");
        assert_eq!(steps, 1);
    }

    #[test]
    fn normal_form_checks() {
        let sys = m();
        assert!(sys.is_normal_form(&w(&sys, "y x")));
        assert!(!sys.is_normal_form(&w(&sys, "x y")));
        assert!(sys.is_normal_form(&Word::empty()));
    }

    #[test]
    fn reduction_order_of_m() {
        let sys = m();
        let report = sys.check_reduction_order();
        assert!(report.passed());
        assert_eq!(report.verdicts, vec![RuleVerdict::LengthReducing; 4]);
        let drops: Vec<(usize, usize)> = sys
            .rules()
            .iter()
            .map(|r| (r.lhs.len(), r.rhs.len()))
            .collect();
        assert_eq!(drops, vec![(3, 1), (3, 1), (4, 1), (2, 0)]);
    }

    #[test]
    fn reduction_order_other_verdicts() {
        let ba = Rule::new(Word::from_symbols(vec![1, 0]), Word::from_symbols(vec![0, 1]));
        assert_eq!(ba.verdict(), RuleVerdict::ShortlexReducing);
        let aa = Rule::new(Word::from_symbols(vec![0]), Word::from_symbols(vec![0]));
        let report = reduction_order_report(&[aa]);
        assert_eq!(report.verdicts, vec![RuleVerdict::Violation]);
        assert!(!report.passed());
    }

    #[test]
    fn constructor_rejects_bad_rules() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let up = Rule::new(Word::from_symbols(vec![0]), Word::from_symbols(vec![0, 1]));
        assert_eq!(
            RewritingSystem::new(a.clone(), vec![up]),
            Err(SystemError::NotReducing { index: 0 })
        );
        let r = Rule::new(Word::from_symbols(vec![0, 0]), Word::from_symbols(vec![0]));
        assert_eq!(
            RewritingSystem::new(a.clone(), vec![r.clone(), r]),
            Err(SystemError::DuplicateLhs { index: 1, first: 0 })
        );
        let bad = Rule::new(Word::from_symbols(vec![7]), Word::empty());
        assert_eq!(
            RewritingSystem::new(a, vec![bad]),
            Err(SystemError::SymbolOutOfRange { index: 0 })
        );
    }

    #[test]
    fn longest_lhs_wins_at_same_position() {
        let sys = parse_system("alphabet: a b\nrules:\na -> 1\na b -> b\n").unwrap();
        let (step, redex) = sys.step(&w(&sys, "a b")).unwrap();
        assert_eq!(redex.rule, 1);
        assert_eq!(sys.format(&step), "b");
    }

    #[test]
    fn redexes_lists_all_sites() {
        let sys = m();
        let r = sys.redexes(&w(&sys, "x e y x y"));
        assert_eq!(
            r,
            vec![Redex { position: 0, rule: 1 }, Redex { position: 3, rule: 3 }]
        );
    }

    #[test]
    fn normal_forms_small() {
        let sys = m();
        let nfs = sys.normal_forms(2);
        let shown: Vec<String> = nfs.iter().map(|x| sys.format(x)).collect();
        assert_eq!(
            shown,
            ["1", "x", "y", "e", "x x", "x e", "y x", "y y", "y e", "e x", "e y", "e e"]
        );
    }
}
