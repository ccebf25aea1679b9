//! Thompson construction and subset construction.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::regex::{Regex, RegexNode};
use super::Dfa;
use crate::alphabet::Symbol;

#[derive(Default)]
struct Nfa {
    eps: Vec<Vec<usize>>,
    sym: Vec<Vec<(Symbol, usize)>>,
}

impl Nfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.sym.push(Vec::new());
        self.eps.len() - 1
    }

    /// Returns (entry, exit) of the fragment for `node`.
    fn build(&mut self, node: &RegexNode) -> (usize, usize) {
        let entry = self.state();
        let exit = self.state();
        match node {
            RegexNode::Empty => {}
            RegexNode::Epsilon => self.eps[entry].push(exit),
            RegexNode::Symbol(s) => self.sym[entry].push((*s, exit)),
            RegexNode::Union(a, b) => {
                for part in [a, b] {
                    let (i, o) = self.build(part);
                    self.eps[entry].push(i);
                    self.eps[o].push(exit);
                }
            }
            RegexNode::Concat(a, b) => {
                let (ai, ao) = self.build(a);
                let (bi, bo) = self.build(b);
                self.eps[entry].push(ai);
                self.eps[ao].push(bi);
                self.eps[bo].push(exit);
            }
            RegexNode::Star(a) => {
                let (i, o) = self.build(a);
                self.eps[entry].push(i);
                self.eps[entry].push(exit);
                self.eps[o].push(i);
                self.eps[o].push(exit);
            }
        }
        (entry, exit)
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.eps[s] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }
}

pub fn regex_to_dfa(r: &Regex) -> Dfa {
    let mut nfa = Nfa::default();
    let (entry, exit) = nfa.build(&r.root);
    let k = r.alphabet.len();

    let mut start = BTreeSet::from([entry]);
    nfa.closure(&mut start);
    let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut sets: Vec<BTreeSet<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    ids.insert(start.clone(), 0);
    sets.push(start);
    queue.push_back(0);
    let mut trans: Vec<usize> = Vec::new();

    while let Some(id) = queue.pop_front() {
        if trans.len() < (id + 1) * k {
            trans.resize((id + 1) * k, usize::MAX);
        }
        for a in 0..k {
            let mut next = BTreeSet::new();
            for &s in &sets[id] {
                for &(c, t) in &nfa.sym[s] {
                    if c as usize == a {
                        next.insert(t);
                    }
                }
            }
            nfa.closure(&mut next);
            let target = match ids.get(&next) {
                Some(&t) => t,
                None => {
                    let t = sets.len();
                    ids.insert(next.clone(), t);
                    sets.push(next);
                    queue.push_back(t);
                    t
                }
            };
            trans[id * k + a] = target;
        }
    }
    trans.resize(sets.len() * k, usize::MAX);
    let accepting = sets.iter().map(|s| s.contains(&exit)).collect();
    Dfa::from_parts(r.alphabet.clone(), 0, accepting, trans)
}
