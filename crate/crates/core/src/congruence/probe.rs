//! Collapse probes: does identifying two normal forms force the identity
//! and every generator into one class?

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::closure::close_indices;
use super::{build_ball, Ball, ClosureStrategy, CongruenceError, Partition};
use crate::alphabet::Word;
use crate::builtin;
use crate::rewriting::CompleteSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeVerdict {
    /// The identity and all generators share a class, so the congruence is
    /// universal.
    Collapsed,
    /// No collapse within the ball; not a counterexample.
    Inconclusive,
}

impl ProbeVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ProbeVerdict::Collapsed => "collapsed",
            ProbeVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Radius used when only a bound on `|u| + |v|` is given.
pub fn default_radius(sum_bound: usize) -> usize {
    sum_bound + 6
}

fn verdict(ball: &Ball, partition: &Partition) -> ProbeVerdict {
    match ball.generator_indices() {
        Some(gens) if partition.all_same(&gens) => ProbeVerdict::Collapsed,
        _ => ProbeVerdict::Inconclusive,
    }
}

impl Ball {
    /// Closes `{(u, v)}` in this ball and reports collapse.
    pub fn probe(&self, u: &Word, v: &Word) -> Result<(ProbeVerdict, Partition), CongruenceError> {
        let (a, b) = (self.locate(u)?, self.locate(v)?);
        let partition = close_indices(self, &[(a, b)], ClosureStrategy::default());
        Ok((verdict(self, &partition), partition))
    }
}

pub fn probe_pair(
    sys: &CompleteSystem,
    u: &Word,
    v: &Word,
    radius: usize,
) -> Result<(ProbeVerdict, Partition), CongruenceError> {
    if sys.normalize(u) == sys.normalize(v) {
        return Err(CongruenceError::InvalidBounds(
            "probe requires two distinct elements".into(),
        ));
    }
    build_ball(sys, radius)?.probe(u, v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOutcome {
    pub u: Word,
    pub v: Word,
    pub verdict: ProbeVerdict,
    pub passes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllPairsReport {
    pub sum_bound: usize,
    pub radius: usize,
    pub ball_size: usize,
    pub pairs: Vec<PairOutcome>,
}

impl AllPairsReport {
    pub fn tested(&self) -> usize {
        self.pairs.len()
    }

    pub fn collapsed(&self) -> usize {
        self.pairs
            .iter()
            .filter(|p| p.verdict == ProbeVerdict::Collapsed)
            .count()
    }

    pub fn inconclusive(&self) -> usize {
        self.tested() - self.collapsed()
    }

    pub fn all_collapsed(&self) -> bool {
        self.inconclusive() == 0
    }

    pub fn max_passes(&self) -> usize {
        self.pairs.iter().map(|p| p.passes).max().unwrap_or(0)
    }
}

/// Probes every unordered pair of distinct normal forms with
/// `|u| + |v| <= sum_bound`, in ball-index order.
pub fn probe_all_pairs(
    sys: &CompleteSystem,
    sum_bound: usize,
    radius: usize,
) -> Result<AllPairsReport, CongruenceError> {
    if sum_bound < 1 {
        return Err(CongruenceError::InvalidBounds("sum bound must be at least 1".into()));
    }
    if radius < sum_bound {
        return Err(CongruenceError::InvalidBounds(format!(
            "radius {radius} is smaller than the sum bound {sum_bound}"
        )));
    }
    let ball = build_ball(sys, radius)?;
    let short: Vec<u32> = (0..ball.len() as u32)
        .take_while(|&i| ball.element(i).len() <= sum_bound)
        .collect();
    let mut seeds = Vec::new();
    for (n, &i) in short.iter().enumerate() {
        for &j in &short[n + 1..] {
            if ball.element(i).len() + ball.element(j).len() <= sum_bound {
                seeds.push((i, j));
            }
        }
    }
    let pairs = seeds
        .par_iter()
        .map(|&(i, j)| {
            let partition = close_indices(&ball, &[(i, j)], ClosureStrategy::default());
            PairOutcome {
                u: ball.element(i).clone(),
                v: ball.element(j).clone(),
                verdict: verdict(&ball, &partition),
                passes: partition.passes(),
            }
        })
        .collect();
    Ok(AllPairsReport {
        sum_bound,
        radius,
        ball_size: ball.len(),
        pairs,
    })
}

/// One instance of a case in the congruence-freeness argument, with the
/// smallest words of the required shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioCase {
    pub name: &'static str,
    pub description: &'static str,
    pub u: Word,
    pub v: Word,
    pub alpha: Option<u8>,
    pub beta: Option<u8>,
    pub gamma: Option<u8>,
}

// (name, description, u, v, alpha, beta)
const SCENARIOS: &[(&str, &str, &str, &str, Option<u8>, Option<u8>)] = &[
    ("base-e", "e ~ 1", "e", "1", None, None),
    ("base-x", "x ~ 1", "x", "1", None, None),
    ("base-y", "y ~ 1", "y", "1", None, None),
    ("1a", "both contain x: U x e ~ V x e^2", "x e", "x e e", Some(1), Some(2)),
    ("1b", "both contain x: U x ~ V x e", "x", "x e", Some(0), Some(1)),
    ("1c", "both contain x: U x ~ V x e^2", "x", "x e e", Some(0), Some(2)),
    ("2a", "only u contains x: U x ~ v", "x", "1", Some(0), Some(0)),
    ("2b", "only u contains x: U x e ~ v", "x e", "1", Some(1), Some(0)),
    ("2c", "only u contains x: U x e^2 ~ v", "x e e", "1", Some(2), Some(0)),
    ("3a", "both contain y, no x: e y U ~ e^2 y V", "e y", "e e y", Some(1), Some(2)),
    ("3b", "both contain y, no x: y U ~ e y V", "y", "e y", Some(0), Some(1)),
    ("3c", "both contain y, no x: y U ~ e^2 y V", "y", "e e y", Some(0), Some(2)),
    ("4", "no x, only u contains y: e^a y U ~ v", "y", "1", Some(0), None),
    ("5a", "powers of e: e ~ e^2", "e", "e e", Some(1), Some(2)),
    ("5b", "powers of e: 1 ~ e", "1", "e", Some(0), Some(1)),
    ("5c", "powers of e: 1 ~ e^2", "1", "e e", Some(0), Some(2)),
];

pub fn scenario_cases() -> Vec<ScenarioCase> {
    let sys = builtin::cm_monoid();
    SCENARIOS
        .iter()
        .map(|&(name, description, u, v, alpha, beta)| ScenarioCase {
            name,
            description,
            u: sys.parse_word(u).expect("scenario word"),
            v: sys.parse_word(v).expect("scenario word"),
            alpha,
            beta,
            gamma: None,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioOutcome {
    pub case: ScenarioCase,
    pub radius: usize,
    pub verdict: ProbeVerdict,
    pub passes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioReport {
    pub outcomes: Vec<ScenarioOutcome>,
}

impl ScenarioReport {
    pub fn all_collapsed(&self) -> bool {
        self.outcomes
            .iter()
            .all(|o| o.verdict == ProbeVerdict::Collapsed)
    }
}

/// Probes each case at radius `|u| + |v| + 6`. Only defined for the
/// built-in system.
pub fn scenario_suite(sys: &CompleteSystem) -> Result<ScenarioReport, CongruenceError> {
    if **sys != builtin::cm_monoid() {
        return Err(CongruenceError::NotBuiltin);
    }
    let cases = scenario_cases();
    let max_radius = cases
        .iter()
        .map(|c| default_radius(c.u.len() + c.v.len()))
        .max()
        .unwrap_or(0);
    let ball = build_ball(sys, max_radius)?;
    let mut outcomes = Vec::with_capacity(cases.len());
    for case in cases {
        let radius = default_radius(case.u.len() + case.v.len());
        let (verdict, partition) = if radius == max_radius {
            ball.probe(&case.u, &case.v)?
        } else {
            build_ball(sys, radius)?.probe(&case.u, &case.v)?
        };
        outcomes.push(ScenarioOutcome {
            case,
            radius,
            verdict,
            passes: partition.passes(),
        });
    }
    Ok(ScenarioReport { outcomes })
}
