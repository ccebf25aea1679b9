//! Critical pairs, joinability and the completeness certificate.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::{OrderReport, RewritingSystem};
use crate::alphabet::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OverlapKind {
    /// A proper suffix of one lhs equals a proper prefix of another.
    Overlap,
    /// One lhs is a proper factor of another.
    Containment,
}

/// The two one-step descendants of a superposition of two left-hand sides.
///
/// For overlaps `left_rule` rewrites the left part of the superposition and
/// `right_rule` the right part. For containments `left_rule` is the
/// contained rule (applied at `offset`) and `right_rule` the containing one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub superposition: Word,
    pub left_result: Word,
    pub right_result: Word,
    pub kind: OverlapKind,
    pub left_rule: usize,
    pub right_rule: usize,
    pub offset: usize,
}

impl CriticalPair {
    /// Both descendants are the same word, so the pair is joinable with no
    /// rewriting at all.
    pub fn is_trivial(&self) -> bool {
        self.left_result == self.right_result
    }
}

impl RewritingSystem {
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let rules = self.rules();
        let mut out = Vec::new();
        for (i, ri) in rules.iter().enumerate() {
            for (j, rj) in rules.iter().enumerate() {
                let (li, lj) = (ri.lhs.as_slice(), rj.lhs.as_slice());
                // suffix of li of length k == prefix of lj; offset = where lj starts
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] != lj[..k] {
                        continue;
                    }
                    let offset = li.len() - k;
                    let superposition = Word(li.iter().chain(&lj[k..]).copied().collect());
                    let left_result =
                        Word(ri.rhs.iter().chain(&lj[k..]).copied().collect());
                    let right_result =
                        Word(li[..offset].iter().chain(rj.rhs.iter()).copied().collect());
                    out.push(CriticalPair {
                        superposition,
                        left_result,
                        right_result,
                        kind: OverlapKind::Overlap,
                        left_rule: i,
                        right_rule: j,
                        offset,
                    });
                }
                if i != j && lj.len() < li.len() {
                    for offset in 0..=li.len() - lj.len() {
                        if &li[offset..offset + lj.len()] != lj {
                            continue;
                        }
                        let left_result = Word(
                            li[..offset]
                                .iter()
                                .chain(rj.rhs.iter())
                                .chain(&li[offset + lj.len()..])
                                .copied()
                                .collect(),
                        );
                        out.push(CriticalPair {
                            superposition: ri.lhs.clone(),
                            left_result,
                            right_result: ri.rhs.clone(),
                            kind: OverlapKind::Containment,
                            left_rule: j,
                            right_rule: i,
                            offset,
                        });
                    }
                }
            }
        }
        out
    }

    /// Termination certificate plus joinability of every critical pair.
    /// The result is computed once and cached.
    pub fn check_complete(&self) -> &CompletenessReport {
        self.completeness.get_or_init(|| {
            let order = self.check_reduction_order();
            let pairs = self.critical_pairs();
            let unjoinable = pairs
                .iter()
                .filter(|p| self.normalize(&p.left_result) != self.normalize(&p.right_result))
                .cloned()
                .collect();
            CompletenessReport {
                order,
                critical_pairs: pairs,
                unjoinable,
            }
        })
    }

    pub fn is_complete(&self) -> bool {
        self.check_complete().complete()
    }

    /// Compares normal forms. Equal normal forms always imply equality in
    /// the presented monoid; the converse holds only for complete systems,
    /// which `certified` records.
    pub fn words_equal(&self, u: &Word, v: &Word) -> WordEquality {
        WordEquality {
            equal: self.normalize(u) == self.normalize(v),
            certified: self.is_complete(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordEquality {
    pub equal: bool,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub order: OrderReport,
    pub critical_pairs: Vec<CriticalPair>,
    /// Counterexamples to local confluence.
    pub unjoinable: Vec<CriticalPair>,
}

impl CompletenessReport {
    pub fn complete(&self) -> bool {
        self.order.passed() && self.unjoinable.is_empty()
    }

    /// Critical pairs whose two descendants differ as words.
    pub fn nontrivial_pairs(&self) -> impl Iterator<Item = &CriticalPair> {
        self.critical_pairs.iter().filter(|p| !p.is_trivial())
    }
}

/// A rewriting system whose completeness has been checked. Searches that
/// rely on unique normal forms take this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteSystem(RewritingSystem);

impl CompleteSystem {
    pub fn certify(sys: RewritingSystem) -> Result<Self, Box<CompletenessReport>> {
        if sys.is_complete() {
            Ok(CompleteSystem(sys))
        } else {
            Err(Box::new(sys.check_complete().clone()))
        }
    }

    pub fn into_inner(self) -> RewritingSystem {
        self.0
    }
}

impl Deref for CompleteSystem {
    type Target = RewritingSystem;
    fn deref(&self) -> &RewritingSystem {
        &self.0
    }
}
