use std::collections::VecDeque;

use super::{Ball, CongruenceError, OUT};
use crate::alphabet::Word;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut i: u32) -> u32 {
        while self.parent[i as usize] != i {
            let grand = self.parent[self.parent[i as usize] as usize];
            self.parent[i as usize] = grand;
            i = grand;
        }
        i
    }

    /// Returns false when already joined.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClosureStrategy {
    /// Repeated full passes over both multiplication tables.
    FullPasses,
    /// Propagate along merged pairs, then confirm with full passes.
    #[default]
    Worklist,
}

/// A partition of ball indices. Each element maps to the least index of its
/// class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    rep: Vec<u32>,
    passes: usize,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition {
            rep: (0..n as u32).collect(),
            passes: 0,
        }
    }

    fn from_union_find(uf: &mut UnionFind, passes: usize) -> Self {
        let n = uf.parent.len();
        let mut least = vec![u32::MAX; n];
        let mut rep = Vec::with_capacity(n);
        for i in 0..n as u32 {
            let r = uf.find(i) as usize;
            if least[r] == u32::MAX {
                least[r] = i;
            }
            rep.push(least[r]);
        }
        Partition { rep, passes }
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn representative(&self, i: u32) -> u32 {
        self.rep[i as usize]
    }

    pub fn same(&self, a: u32, b: u32) -> bool {
        self.rep[a as usize] == self.rep[b as usize]
    }

    pub fn class_count(&self) -> usize {
        self.rep.iter().enumerate().filter(|&(i, &r)| i as u32 == r).count()
    }

    /// Full passes over the tables made by the closure.
    pub fn passes(&self) -> usize {
        self.passes
    }

    /// Classes with more than one element, each sorted, ordered by
    /// representative.
    pub fn nontrivial_classes(&self) -> Vec<Vec<u32>> {
        let mut by_rep: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        for (i, &r) in self.rep.iter().enumerate() {
            by_rep.entry(r).or_default().push(i as u32);
        }
        by_rep.into_values().filter(|c| c.len() > 1).collect()
    }

    pub fn all_same(&self, idx: &[u32]) -> bool {
        idx.windows(2).all(|w| self.same(w[0], w[1]))
    }

    /// Re-checks closure: for every class and every one-generator context,
    /// the in-ball images lie in one class.
    pub fn is_closed_in(&self, ball: &Ball) -> bool {
        let n = ball.len();
        for g in ball.system().alphabet().indices() {
            for side in [Side::Left, Side::Right] {
                let mut image = vec![OUT; n];
                for i in 0..n as u32 {
                    let img = side.apply(ball, i, g);
                    if img == OUT {
                        continue;
                    }
                    let r = self.rep[i as usize] as usize;
                    if image[r] == OUT {
                        image[r] = img;
                    } else if !self.same(image[r], img) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

impl Side {
    #[inline]
    fn apply(self, ball: &Ball, i: u32, g: u8) -> u32 {
        match self {
            Side::Left => ball.left(i, g),
            Side::Right => ball.right(i, g),
        }
    }
}

/// One full pass: within each class, join all in-ball images under each
/// generator and side. Returns the pairs that were not yet joined.
fn saturating_pass(ball: &Ball, uf: &mut UnionFind, join_now: bool) -> Vec<(u32, u32)> {
    let n = ball.len();
    let mut pending = Vec::new();
    let mut image = vec![OUT; n];
    for g in ball.system().alphabet().indices() {
        for side in [Side::Left, Side::Right] {
            image.fill(OUT);
            for i in 0..n as u32 {
                let img = side.apply(ball, i, g);
                if img == OUT {
                    continue;
                }
                let r = uf.find(i) as usize;
                if image[r] == OUT {
                    image[r] = img;
                } else if uf.find(image[r]) != uf.find(img) {
                    if join_now {
                        uf.union(image[r], img);
                    }
                    pending.push((image[r], img));
                }
            }
        }
    }
    pending
}

fn drain(ball: &Ball, uf: &mut UnionFind, queue: &mut VecDeque<(u32, u32)>) {
    while let Some((a, b)) = queue.pop_front() {
        if !uf.union(a, b) {
            continue;
        }
        for g in ball.system().alphabet().indices() {
            for side in [Side::Left, Side::Right] {
                let (ia, ib) = (side.apply(ball, a, g), side.apply(ball, b, g));
                if ia != OUT && ib != OUT {
                    queue.push_back((ia, ib));
                }
            }
        }
    }
}

/// The finest partition of the ball containing `pairs` and closed under
/// in-ball one-generator multiplication on either side.
pub fn congruence_closure(
    ball: &Ball,
    pairs: &[(Word, Word)],
    strategy: ClosureStrategy,
) -> Result<Partition, CongruenceError> {
    let mut seeds = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        seeds.push((ball.locate(u)?, ball.locate(v)?));
    }
    Ok(close_indices(ball, &seeds, strategy))
}

pub(crate) fn close_indices(
    ball: &Ball,
    seeds: &[(u32, u32)],
    strategy: ClosureStrategy,
) -> Partition {
    let mut uf = UnionFind::new(ball.len());
    let mut passes = 0;
    match strategy {
        ClosureStrategy::FullPasses => {
            for &(a, b) in seeds {
                uf.union(a, b);
            }
            loop {
                passes += 1;
                if saturating_pass(ball, &mut uf, true).is_empty() {
                    break;
                }
            }
        }
        ClosureStrategy::Worklist => {
            let mut queue: VecDeque<(u32, u32)> = seeds.iter().copied().collect();
            loop {
                drain(ball, &mut uf, &mut queue);
                passes += 1;
                let missed = saturating_pass(ball, &mut uf, false);
                if missed.is_empty() {
                    break;
                }
                queue.extend(missed);
            }
        }
    }
    Partition::from_union_find(&mut uf, passes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::congruence::build_ball;

    fn pair(ball: &Ball, u: &str, v: &str) -> (Word, Word) {
        let s = ball.system();
        (s.parse_word(u).unwrap(), s.parse_word(v).unwrap())
    }

    #[test]
    fn e_equals_one_collapses_generators() {
        let sys = builtin::cm_monoid_complete();
        let ball = build_ball(&sys, 6).unwrap();
        let gens = ball.generator_indices().unwrap();
        for strategy in [ClosureStrategy::FullPasses, ClosureStrategy::Worklist] {
            let p = congruence_closure(&ball, &[pair(&ball, "e", "1")], strategy).unwrap();
            assert!(p.all_same(&gens));
            assert!(p.is_closed_in(&ball));
        }
    }

    #[test]
    fn no_pairs_is_discrete() {
        let sys = builtin::cm_monoid_complete();
        let ball = build_ball(&sys, 4).unwrap();
        let p = congruence_closure(&ball, &[], ClosureStrategy::Worklist).unwrap();
        assert_eq!(p.class_count(), ball.len());
        assert_eq!(p, Partition { rep: Partition::discrete(ball.len()).rep, passes: 1 });
    }

    #[test]
    fn e_equals_e_squared() {
        let sys = builtin::cm_monoid_complete();
        let ball = build_ball(&sys, 6).unwrap();
        let p = congruence_closure(&ball, &[pair(&ball, "e", "e e")], ClosureStrategy::Worklist)
            .unwrap();
        assert!(p.all_same(&ball.generator_indices().unwrap()));
    }

    #[test]
    fn pair_outside_ball_rejected() {
        let sys = builtin::cm_monoid_complete();
        let ball = build_ball(&sys, 2).unwrap();
        let err = congruence_closure(&ball, &[pair(&ball, "y y y", "1")], ClosureStrategy::Worklist)
            .unwrap_err();
        assert_eq!(err, CongruenceError::NotInBall("y y y".into()));
    }

    #[test]
    fn representatives_are_least_indices() {
        let sys = builtin::cm_monoid_complete();
        let ball = build_ball(&sys, 5).unwrap();
        let p = congruence_closure(&ball, &[pair(&ball, "x e", "x e e")], ClosureStrategy::Worklist)
            .unwrap();
        for i in 0..p.len() as u32 {
            let r = p.representative(i);
            assert!(r <= i);
            assert_eq!(p.representative(r), r);
        }
    }
}
