//! Bounded congruence closure over the ball of short normal forms.
//!
//! A [`Ball`] holds every normal form of length at most its radius together
//! with left and right multiplication tables by the generators. Products
//! that leave the ball are recorded as [`OUT`] and ignored by the closure,
//! so the computed partition under-approximates the congruence generated in
//! the whole monoid.

mod closure;
mod probe;

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::alphabet::{Symbol, Word};
use crate::automata::{count_words, factor_free_dfa};
use crate::rewriting::CompleteSystem;

pub use closure::{congruence_closure, ClosureStrategy, Partition};
pub use probe::{
    default_radius, probe_all_pairs, probe_pair, scenario_cases, scenario_suite, AllPairsReport,
    PairOutcome, ProbeVerdict, ScenarioCase, ScenarioOutcome, ScenarioReport,
};

/// Table entry for a product whose normal form is longer than the radius.
pub const OUT: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("radius {radius} exceeds the limit {limit}")]
    RadiusTooLarge { radius: usize, limit: usize },
    #[error("ball of radius {radius} would hold {count} elements (limit {limit})")]
    TooManyElements { radius: usize, count: u64, limit: u64 },
    #[error("`{0}` is not in the ball")]
    NotInBall(String),
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("scenario suite requires the built-in cm-monoid system")]
    NotBuiltin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallLimits {
    pub max_radius: usize,
    pub max_elements: u64,
}

impl Default for BallLimits {
    fn default() -> Self {
        BallLimits {
            max_radius: 14,
            max_elements: 5_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Ball {
    sys: CompleteSystem,
    radius: usize,
    elements: Vec<Word>,
    index: HashMap<Word, u32>,
    left_mul: Vec<u32>,
    right_mul: Vec<u32>,
}

pub fn build_ball(sys: &CompleteSystem, radius: usize) -> Result<Ball, CongruenceError> {
    Ball::build(sys, radius, BallLimits::default())
}

impl Ball {
    pub fn build(
        sys: &CompleteSystem,
        radius: usize,
        limits: BallLimits,
    ) -> Result<Ball, CongruenceError> {
        if radius > limits.max_radius {
            return Err(CongruenceError::RadiusTooLarge {
                radius,
                limit: limits.max_radius,
            });
        }
        let nf = factor_free_dfa(sys.alphabet(), &sys.left_hand_sides());
        let count = count_words(&nf, radius)
            .ok()
            .and_then(|c| c.iter().try_fold(0u64, |acc, &x| acc.checked_add(x)))
            .unwrap_or(u64::MAX);
        if count > limits.max_elements || count >= OUT as u64 {
            return Err(CongruenceError::TooManyElements {
                radius,
                count,
                limit: limits.max_elements,
            });
        }

        let elements = sys.normal_forms(radius);
        let index: HashMap<Word, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        let k = sys.alphabet().len();
        let lookup = |w: Word| -> u32 {
            if w.len() > radius {
                OUT
            } else {
                index[&w]
            }
        };
        let rows: Vec<(Vec<u32>, Vec<u32>)> = elements
            .par_iter()
            .map(|w| {
                let mut left = Vec::with_capacity(k);
                let mut right = Vec::with_capacity(k);
                for g in sys.alphabet().indices() {
                    left.push(lookup(sys.normalize(&w.prepended(g))));
                    right.push(lookup(sys.normalize(&w.appended(g))));
                }
                (left, right)
            })
            .collect();
        let mut left_mul = Vec::with_capacity(elements.len() * k);
        let mut right_mul = Vec::with_capacity(elements.len() * k);
        for (l, r) in rows {
            left_mul.extend(l);
            right_mul.extend(r);
        }
        Ok(Ball {
            sys: sys.clone(),
            radius,
            elements,
            index,
            left_mul,
            right_mul,
        })
    }

    pub fn system(&self) -> &CompleteSystem {
        &self.sys
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Word {
        &self.elements[i as usize]
    }

    /// Index of a normal form, if it lies in the ball.
    pub fn index_of(&self, w: &Word) -> Option<u32> {
        self.index.get(w).copied()
    }

    /// Normalizes `w` and looks it up.
    pub fn locate(&self, w: &Word) -> Result<u32, CongruenceError> {
        let nf = self.sys.normalize(w);
        self.index_of(&nf)
            .ok_or_else(|| CongruenceError::NotInBall(self.sys.format(&nf)))
    }

    /// Index of `g · element(i)`, or [`OUT`].
    #[inline]
    pub fn left(&self, i: u32, g: Symbol) -> u32 {
        self.left_mul[i as usize * self.sys.alphabet().len() + g as usize]
    }

    /// Index of `element(i) · g`, or [`OUT`].
    #[inline]
    pub fn right(&self, i: u32, g: Symbol) -> u32 {
        self.right_mul[i as usize * self.sys.alphabet().len() + g as usize]
    }

    /// Indices of the identity and of each generator, when in the ball.
    pub fn generator_indices(&self) -> Option<Vec<u32>> {
        let mut out = vec![self.index_of(&Word::empty())?];
        for g in self.sys.alphabet().indices() {
            out.push(self.index_of(&self.sys.normalize(&Word::from_symbols(vec![g])))?);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn radius_zero() {
        let sys = builtin::cm_monoid_complete();
        let ball = build_ball(&sys, 0).unwrap();
        assert_eq!(ball.len(), 1);
        for g in 0..3 {
            assert_eq!(ball.left(0, g), OUT);
            assert_eq!(ball.right(0, g), OUT);
        }
    }

    #[test]
    fn sizes_match_counts() {
        let sys = builtin::cm_monoid_complete();
        assert_eq!(build_ball(&sys, 2).unwrap().len(), 12);
        assert_eq!(build_ball(&sys, 3).unwrap().len(), 31);
    }

    #[test]
    fn tables_reverify() {
        let sys = builtin::cm_monoid_complete();
        let ball = build_ball(&sys, 4).unwrap();
        for i in 0..ball.len() as u32 {
            let w = ball.element(i);
            for g in sys.alphabet().indices() {
                for (got, prod) in [
                    (ball.left(i, g), sys.normalize(&w.prepended(g))),
                    (ball.right(i, g), sys.normalize(&w.appended(g))),
                ] {
                    if prod.len() > 4 {
                        assert_eq!(got, OUT);
                    } else {
                        assert_eq!(ball.element(got), &prod);
                    }
                }
            }
        }
    }

    #[test]
    fn limits_enforced() {
        let sys = builtin::cm_monoid_complete();
        assert_eq!(
            build_ball(&sys, 15).unwrap_err(),
            CongruenceError::RadiusTooLarge { radius: 15, limit: 14 }
        );
        let tight = BallLimits {
            max_radius: 14,
            max_elements: 30,
        };
        assert!(matches!(
            Ball::build(&sys, 3, tight),
            Err(CongruenceError::TooManyElements { count: 31, .. })
        ));
    }

    #[test]
    fn locate_normalizes() {
        let sys = builtin::cm_monoid_complete();
        let ball = build_ball(&sys, 2).unwrap();
        let xy = sys.parse_word("x e e y y").unwrap();
        assert_eq!(ball.locate(&xy).unwrap(), 0);
        let long = sys.parse_word("y y y").unwrap();
        assert_eq!(
            ball.locate(&long),
            Err(CongruenceError::NotInBall("y y y".into()))
        );
    }
}
