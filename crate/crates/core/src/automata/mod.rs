//! Complete deterministic automata: factor-avoidance languages, regex
//! compilation, boolean combinations, minimization, equivalence, counting
//! and shortlex enumeration.

mod nfa;
mod regex;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::alphabet::{Alphabet, Symbol, Word};

pub use nfa::regex_to_dfa;
pub use regex::{parse_regex, Regex, RegexError, RegexNode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("word count overflows 64 bits at length {length}")]
    CountOverflow { length: usize },
    #[error("invalid automaton: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Intersect,
    Union,
    Difference,
}

impl SetOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            SetOp::Intersect => a && b,
            SetOp::Union => a || b,
            SetOp::Difference => a && !b,
        }
    }
}

/// A complete DFA. States are `0..n`; the transition table is dense with
/// row `s` holding the targets for every symbol in declared order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    start: usize,
    accepting: Vec<bool>,
    trans: Vec<usize>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        start: usize,
        accepting: Vec<bool>,
        trans: Vec<usize>,
    ) -> Result<Self, AutomataError> {
        let n = accepting.len();
        if n == 0 {
            return Err(AutomataError::Invalid("no states".into()));
        }
        if start >= n {
            return Err(AutomataError::Invalid(format!("start state {start} out of range")));
        }
        if trans.len() != n * alphabet.len() {
            return Err(AutomataError::Invalid("transition table is not total".into()));
        }
        if let Some(t) = trans.iter().find(|&&t| t >= n) {
            return Err(AutomataError::Invalid(format!("transition target {t} out of range")));
        }
        Ok(Dfa {
            alphabet,
            start,
            accepting,
            trans,
        })
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        start: usize,
        accepting: Vec<bool>,
        trans: Vec<usize>,
    ) -> Self {
        debug_assert!(Dfa::new(alphabet.clone(), start, accepting.clone(), trans.clone()).is_ok());
        Dfa {
            alphabet,
            start,
            accepting,
            trans,
        }
    }

    /// The automaton accepting nothing.
    pub fn empty_language(alphabet: &Alphabet) -> Self {
        Dfa::from_parts(alphabet.clone(), 0, vec![false], vec![0; alphabet.len()])
    }

    /// The automaton accepting every word.
    pub fn universal(alphabet: &Alphabet) -> Self {
        Dfa::from_parts(alphabet.clone(), 0, vec![true], vec![0; alphabet.len()])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    #[inline]
    pub fn next(&self, s: usize, a: Symbol) -> usize {
        self.trans[s * self.alphabet.len() + a as usize]
    }

    pub fn run(&self, w: &[Symbol]) -> usize {
        w.iter().fold(self.start, |s, &a| self.next(s, a))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.accepting[self.run(w)]
    }

    fn k(&self) -> usize {
        self.alphabet.len()
    }

    /// Breadth-first order from the start state, symbols in declared order.
    fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.start];
        seen[self.start] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for a in self.alphabet.indices() {
                let t = self.next(s, a);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Restricts to the states listed in `order`, renumbered by position.
    fn renumber(&self, order: &[usize]) -> Dfa {
        let mut id = vec![usize::MAX; self.num_states()];
        for (i, &s) in order.iter().enumerate() {
            id[s] = i;
        }
        let k = self.k();
        let mut trans = Vec::with_capacity(order.len() * k);
        for &s in order {
            for a in self.alphabet.indices() {
                trans.push(id[self.next(s, a)]);
            }
        }
        Dfa::from_parts(
            self.alphabet.clone(),
            0,
            order.iter().map(|&s| self.accepting[s]).collect(),
            trans,
        )
    }

    pub fn trim_unreachable(&self) -> Dfa {
        self.renumber(&self.bfs_order())
    }

    /// Hopcroft partition refinement followed by breadth-first canonical
    /// numbering, so equal languages yield identical automata.
    pub fn minimize(&self) -> Dfa {
        let dfa = self.trim_unreachable();
        let n = dfa.num_states();
        let k = dfa.k();

        let mut inverse: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; k];
        for s in 0..n {
            for a in 0..k {
                inverse[a][dfa.trans[s * k + a]].push(s);
            }
        }

        let acc: Vec<usize> = (0..n).filter(|&s| dfa.accepting[s]).collect();
        let rej: Vec<usize> = (0..n).filter(|&s| !dfa.accepting[s]).collect();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0usize; n];
        for part in [acc, rej] {
            if !part.is_empty() {
                for &s in &part {
                    block_of[s] = blocks.len();
                }
                blocks.push(part);
            }
        }

        let mut in_work: Vec<Vec<bool>> = vec![vec![false; k]; blocks.len()];
        let mut work: Vec<(usize, usize)> = Vec::new();
        if blocks.len() == 2 {
            let smaller = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
            for a in 0..k {
                work.push((smaller, a));
                in_work[smaller][a] = true;
            }
        }

        let mut marked = vec![false; n];
        while let Some((splitter, a)) = work.pop() {
            in_work[splitter][a] = false;
            let mut preds: Vec<usize> = Vec::new();
            for &t in &blocks[splitter] {
                for &p in &inverse[a][t] {
                    if !marked[p] {
                        marked[p] = true;
                        preds.push(p);
                    }
                }
            }
            let mut touched: Vec<usize> = preds.iter().map(|&p| block_of[p]).collect();
            touched.sort_unstable();
            touched.dedup();
            for y in touched {
                let (inside, outside): (Vec<usize>, Vec<usize>) =
                    blocks[y].iter().partition(|&&s| marked[s]);
                if outside.is_empty() {
                    continue;
                }
                let new_id = blocks.len();
                let (keep, moved) = (inside, outside);
                for &s in &moved {
                    block_of[s] = new_id;
                }
                let keep_len = keep.len();
                let moved_len = moved.len();
                blocks[y] = keep;
                blocks.push(moved);
                in_work.push(vec![false; k]);
                for c in 0..k {
                    if in_work[y][c] {
                        in_work[new_id][c] = true;
                        work.push((new_id, c));
                    } else {
                        let pick = if keep_len <= moved_len { y } else { new_id };
                        in_work[pick][c] = true;
                        work.push((pick, c));
                    }
                }
            }
            for p in preds {
                marked[p] = false;
            }
        }

        let m = blocks.len();
        let mut trans = vec![0usize; m * k];
        let mut accepting = vec![false; m];
        for (b, states) in blocks.iter().enumerate() {
            let rep = states[0];
            accepting[b] = dfa.accepting[rep];
            for a in 0..k {
                trans[b * k + a] = block_of[dfa.trans[rep * k + a]];
            }
        }
        let quotient =
            Dfa::from_parts(dfa.alphabet.clone(), block_of[dfa.start], accepting, trans);
        quotient.trim_unreachable()
    }

    /// First word (in shortlex order) accepted by exactly one of the two
    /// automata, or `None` when the languages coincide.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Word>, AutomataError> {
        if self.alphabet != other.alphabet {
            return Err(AutomataError::AlphabetMismatch);
        }
        let start = (self.start, other.start);
        let mut parent: HashMap<(usize, usize), Option<((usize, usize), Symbol)>> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some(pair) = queue.pop_front() {
            if self.accepting[pair.0] != other.accepting[pair.1] {
                let mut word = Vec::new();
                let mut cur = pair;
                while let Some(&Some((prev, a))) = parent.get(&cur) {
                    word.push(a);
                    cur = prev;
                }
                word.reverse();
                return Ok(Some(Word(word)));
            }
            for a in self.alphabet.indices() {
                let next = (self.next(pair.0, a), other.next(pair.1, a));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some((pair, a)));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    pub fn words_by_length(&self, n: usize) -> Result<Vec<u64>, AutomataError> {
        count_words(self, n)
    }

    /// Text export: `states`, `start`, `accept`, then one `trans` line per
    /// state and symbol.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "states {}", self.num_states());
        let _ = writeln!(s, "start {}", self.start);
        s.push_str("accept");
        for (i, &a) in self.accepting.iter().enumerate() {
            if a {
                let _ = write!(s, " {i}");
            }
        }
        s.push('\n');
        for st in 0..self.num_states() {
            for a in self.alphabet.indices() {
                let _ = writeln!(s, "trans {st} {} {}", self.alphabet.token(a), self.next(st, a));
            }
        }
        s
    }

    pub fn from_text(text: &str, alphabet: &Alphabet) -> Result<Dfa, AutomataError> {
        let bad = |m: String| AutomataError::Invalid(m);
        let num = |t: Option<&str>| -> Result<usize, AutomataError> {
            t.and_then(|x| x.parse().ok())
                .ok_or_else(|| AutomataError::Invalid("expected a state number".into()))
        };
        let mut n = None;
        let mut start = None;
        let mut accept: Vec<usize> = Vec::new();
        let mut edges: Vec<(usize, Symbol, usize)> = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("states") => n = Some(num(parts.next())?),
                Some("start") => start = Some(num(parts.next())?),
                Some("accept") => {
                    for p in parts {
                        accept.push(num(Some(p))?);
                    }
                }
                Some("trans") => {
                    let from = num(parts.next())?;
                    let tok = parts.next().unwrap_or("");
                    let sym = alphabet
                        .symbol(tok)
                        .ok_or_else(|| bad(format!("unknown symbol `{tok}`")))?;
                    let to = num(parts.next())?;
                    edges.push((from, sym, to));
                }
                _ => return Err(bad(format!("unexpected line `{line}`"))),
            }
        }
        let n = n.ok_or_else(|| bad("missing `states`".into()))?;
        let start = start.ok_or_else(|| bad("missing `start`".into()))?;
        let k = alphabet.len();
        let mut trans = vec![usize::MAX; n * k];
        for (from, sym, to) in edges {
            if from >= n {
                return Err(bad(format!("state {from} out of range")));
            }
            trans[from * k + sym as usize] = to;
        }
        let mut accepting = vec![false; n];
        for a in accept {
            *accepting
                .get_mut(a)
                .ok_or_else(|| bad(format!("state {a} out of range")))? = true;
        }
        Dfa::new(alphabet.clone(), start, accepting, trans)
    }

    /// States from which some accepting state is reachable.
    fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for a in self.alphabet.indices() {
                rev[self.next(s, a)].push(s);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&s| live[s]).collect();
        while let Some(t) = stack.pop() {
            for &p in &rev[t] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }
}

/// Accepts exactly the words containing none of `factors` as a factor.
///
/// Built from the Aho–Corasick automaton of `factors`: trie states whose
/// failure chain reaches the end of a factor are merged into one sink.
pub fn factor_free_dfa(alphabet: &Alphabet, factors: &[Word]) -> Dfa {
    let k = alphabet.len();
    const NONE: usize = usize::MAX;
    let mut goto: Vec<Vec<usize>> = vec![vec![NONE; k]];
    let mut terminal = vec![false];
    for f in factors {
        let mut s = 0;
        for &a in f.iter() {
            if goto[s][a as usize] == NONE {
                goto.push(vec![NONE; k]);
                terminal.push(false);
                goto[s][a as usize] = goto.len() - 1;
            }
            s = goto[s][a as usize];
        }
        terminal[s] = true;
    }

    let mut fail = vec![0usize; goto.len()];
    let mut queue = VecDeque::new();
    for a in 0..k {
        match goto[0][a] {
            NONE => goto[0][a] = 0,
            c => queue.push_back(c),
        }
    }
    while let Some(s) = queue.pop_front() {
        terminal[s] = terminal[s] || terminal[fail[s]];
        for a in 0..k {
            let c = goto[s][a];
            if c == NONE {
                goto[s][a] = goto[fail[s]][a];
            } else {
                fail[c] = goto[fail[s]][a];
                queue.push_back(c);
            }
        }
    }

    // live trie nodes in index order, then the sink
    let mut id = vec![0usize; goto.len()];
    let mut live = 0;
    for s in 0..goto.len() {
        if !terminal[s] {
            id[s] = live;
            live += 1;
        }
    }
    let sink = live;
    for s in 0..goto.len() {
        if terminal[s] {
            id[s] = sink;
        }
    }
    let n = live + 1;
    let mut trans = vec![sink; n * k];
    for s in (0..goto.len()).filter(|&s| !terminal[s]) {
        for a in 0..k {
            trans[id[s] * k + a] = id[goto[s][a]];
        }
    }
    let mut accepting = vec![true; n];
    accepting[sink] = false;
    Dfa::from_parts(alphabet.clone(), id[0], accepting, trans)
}

/// Product construction over reachable state pairs.
pub fn combine_dfa(op: SetOp, a: &Dfa, b: &Dfa) -> Result<Dfa, AutomataError> {
    if a.alphabet != b.alphabet {
        return Err(AutomataError::AlphabetMismatch);
    }
    let k = a.k();
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(a.start, b.start)];
    ids.insert((a.start, b.start), 0);
    let mut trans = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for s in a.alphabet.indices() {
            let next = (a.next(p, s), b.next(q, s));
            let len = pairs.len();
            let t = *ids.entry(next).or_insert(len);
            if t == len {
                pairs.push(next);
            }
            trans.push(t);
        }
        i += 1;
    }
    debug_assert_eq!(trans.len(), pairs.len() * k);
    let accepting = pairs
        .iter()
        .map(|&(p, q)| op.apply(a.accepting[p], b.accepting[q]))
        .collect();
    Ok(Dfa::from_parts(a.alphabet.clone(), 0, accepting, trans))
}

pub fn minimize_dfa(a: &Dfa) -> Dfa {
    a.minimize()
}

/// Language equality; on inequality, the shortlex-least word in the
/// symmetric difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub counterexample: Option<Word>,
}

pub fn dfa_equivalent(a: &Dfa, b: &Dfa) -> Result<Equivalence, AutomataError> {
    let cx = a.distinguishing_word(b)?;
    Ok(Equivalence {
        equivalent: cx.is_none(),
        counterexample: cx,
    })
}

/// Number of accepted words of each length `0..=n`.
pub fn count_words(a: &Dfa, n: usize) -> Result<Vec<u64>, AutomataError> {
    let states = a.num_states();
    let mut counts = Vec::with_capacity(n + 1);
    // paths[s]: words of the current length leading from start to s
    let mut paths = vec![0u64; states];
    paths[a.start] = 1;
    for length in 0..=n {
        let mut total: u64 = 0;
        for s in 0..states {
            if a.accepting[s] {
                total = total
                    .checked_add(paths[s])
                    .ok_or(AutomataError::CountOverflow { length })?;
            }
        }
        counts.push(total);
        if length == n {
            break;
        }
        let mut next = vec![0u64; states];
        for s in 0..states {
            if paths[s] == 0 {
                continue;
            }
            for sym in a.alphabet.indices() {
                let t = a.next(s, sym);
                next[t] = next[t]
                    .checked_add(paths[s])
                    .ok_or(AutomataError::CountOverflow { length: length + 1 })?;
            }
        }
        paths = next;
    }
    Ok(counts)
}

/// Accepted words of length at most `max_len`, shortlex-sorted.
pub fn enumerate_words(a: &Dfa, max_len: usize) -> Vec<Word> {
    let live = a.live_states();
    let mut out = Vec::new();
    if !live[a.start] {
        return out;
    }
    let mut level: Vec<(Word, usize)> = vec![(Word::empty(), a.start)];
    for len in 0..=max_len {
        out.extend(
            level
                .iter()
                .filter(|(_, s)| a.accepting[*s])
                .map(|(w, _)| w.clone()),
        );
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (w, s) in &level {
            for sym in a.alphabet.indices() {
                let t = a.next(*s, sym);
                if live[t] {
                    next.push((w.appended(sym), t));
                }
            }
        }
        level = next;
    }
    out
}
