//! Todd–Coxeter coset enumeration over the trivial subgroup.
//!
//! HLT strategy: each live coset in turn has every relator scanned and
//! filled, then any remaining gaps in its row are defined. Coincidences are
//! processed immediately with a forwarding array.

use std::fmt::Write as _;

use thiserror::Error;

use crate::alphabet::{Alphabet, Word};
use crate::rewriting::RewritingSystem;

/// A generator or its formal inverse, encoded as a table column:
/// `2 * generator + inverse`.
pub type Letter = usize;

pub fn letter(generator: u8, inverse: bool) -> Letter {
    2 * generator as usize + inverse as usize
}

#[inline]
fn inv(l: Letter) -> Letter {
    l ^ 1
}

pub fn free_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&inv(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("more than {max_cosets} cosets would be defined")]
    ResourceExhausted { max_cosets: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

pub const DEFAULT_MAX_COSETS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Alphabet,
    relators: Vec<Vec<Letter>>,
}

impl GroupPresentation {
    /// Freely reduces each relator and drops the ones that become empty.
    pub fn new(generators: Alphabet, relators: Vec<Vec<Letter>>) -> Self {
        let relators = relators
            .into_iter()
            .map(|r| free_reduce(&r))
            .filter(|r| !r.is_empty())
            .collect();
        GroupPresentation {
            generators,
            relators,
        }
    }

    /// Relators written as tokens, `g^-1` for inverses.
    pub fn parse(generators: Alphabet, relators: &[&str]) -> Result<Self, CosetError> {
        let mut rels = Vec::new();
        for text in relators {
            let mut r = Vec::new();
            for tok in text.split_whitespace() {
                let (name, inverse) = match tok.strip_suffix("^-1") {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                let g = generators
                    .symbol(name)
                    .ok_or_else(|| CosetError::UnknownGenerator(tok.to_string()))?;
                r.push(letter(g, inverse));
            }
            rels.push(r);
        }
        Ok(GroupPresentation::new(generators, rels))
    }

    pub fn generators(&self) -> &Alphabet {
        &self.generators
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }

    pub fn with_relators(&self, relators: Vec<Vec<Letter>>) -> Self {
        GroupPresentation::new(self.generators.clone(), relators)
    }

    pub fn column_name(&self, l: Letter) -> String {
        let name = self.generators.token((l / 2) as u8);
        if l % 2 == 1 {
            format!("{name}^-1")
        } else {
            name.to_string()
        }
    }

    pub fn format_relator(&self, r: &[Letter]) -> String {
        if r.is_empty() {
            return "1".into();
        }
        r.iter()
            .map(|&l| self.column_name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn positive(w: &Word) -> impl DoubleEndedIterator<Item = Letter> + '_ {
    w.iter().map(|&s| letter(s, false))
}

/// One relator `u v⁻¹` per rule `u → v`.
pub fn monoid_to_group_presentation(sys: &RewritingSystem) -> GroupPresentation {
    let relators = sys
        .rules()
        .iter()
        .map(|r| {
            positive(&r.lhs)
                .chain(positive(&r.rhs).rev().map(inv))
                .collect()
        })
        .collect();
    GroupPresentation::new(sys.alphabet().clone(), relators)
}

const UNDEF: u32 = u32::MAX;

struct Enumerator<'a> {
    pres: &'a GroupPresentation,
    cols: usize,
    table: Vec<Vec<u32>>,
    forward: Vec<u32>,
    queue: Vec<u32>,
    max_cosets: usize,
}

impl<'a> Enumerator<'a> {
    fn new(pres: &'a GroupPresentation, max_cosets: usize) -> Self {
        let cols = 2 * pres.generators.len();
        Enumerator {
            pres,
            cols,
            table: vec![vec![UNDEF; cols]],
            forward: vec![0],
            queue: Vec::new(),
            max_cosets,
        }
    }

    fn live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn define(&mut self, c: u32, x: Letter) -> Result<(), CosetError> {
        if self.table.len() >= self.max_cosets {
            return Err(CosetError::ResourceExhausted {
                max_cosets: self.max_cosets,
            });
        }
        let d = self.table.len() as u32;
        self.table.push(vec![UNDEF; self.cols]);
        self.forward.push(d);
        self.table[c as usize][x] = d;
        self.table[d as usize][inv(x)] = c;
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.forward[root as usize] != root {
            root = self.forward[root as usize];
        }
        let mut cur = c;
        while self.forward[cur as usize] != root {
            let next = self.forward[cur as usize];
            self.forward[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.forward[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.table[dead as usize][x];
                if d == UNDEF {
                    continue;
                }
                self.table[d as usize][inv(x)] = UNDEF;
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.table[mu as usize][x];
                let nu_ix = self.table[nu as usize][inv(x)];
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else if nu_ix != UNDEF {
                    self.merge(mu, nu_ix);
                } else {
                    self.table[mu as usize][x] = nu;
                    self.table[nu as usize][inv(x)] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[Letter]) -> Result<(), CosetError> {
        let mut f = c;
        let mut b = c;
        let mut i: usize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f as usize][w[i]] != UNDEF {
                f = self.table[f as usize][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b as usize][inv(w[j as usize])] != UNDEF {
                b = self.table[b as usize][inv(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f as usize][w[i]] = b;
                self.table[b as usize][inv(w[i])] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn run(mut self) -> Result<CosetTable, CosetError> {
        let relators = self.pres.relators.clone();
        let mut c: u32 = 0;
        while (c as usize) < self.table.len() {
            for r in &relators {
                if !self.live(c) {
                    break;
                }
                self.scan_and_fill(c, r)?;
            }
            if self.live(c) {
                for x in 0..self.cols {
                    if self.table[c as usize][x] == UNDEF {
                        self.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        let defined = self.table.len();
        let live: Vec<u32> = (0..defined as u32).filter(|&c| self.live(c)).collect();
        let mut id = vec![UNDEF; defined];
        for (n, &c) in live.iter().enumerate() {
            id[c as usize] = n as u32;
        }
        let mut rows = Vec::with_capacity(live.len());
        for &c in &live {
            let mut row = Vec::with_capacity(self.cols);
            for x in 0..self.cols {
                let t = self.table[c as usize][x];
                let t = self.rep(t);
                row.push(id[t as usize]);
            }
            rows.push(row);
        }
        Ok(CosetTable {
            presentation: self.pres.clone(),
            rows,
            cosets_defined: defined,
        })
    }
}

/// A closed coset table: row `c`, column `l` is the coset `c · l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    presentation: GroupPresentation,
    rows: Vec<Vec<u32>>,
    cosets_defined: usize,
}

impl CosetTable {
    /// Number of cosets; the group order for the trivial subgroup.
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    /// Total cosets defined during enumeration, including ones later
    /// identified by coincidences.
    pub fn cosets_defined(&self) -> usize {
        self.cosets_defined
    }

    pub fn act(&self, c: u32, l: Letter) -> u32 {
        self.rows[c as usize][l]
    }

    pub fn trace(&self, c: u32, w: &[Letter]) -> u32 {
        w.iter().fold(c, |c, &l| self.act(c, l))
    }

    /// Closedness, inverse consistency, and every relator returning to its
    /// start at every coset.
    pub fn verify(&self) -> bool {
        let n = self.rows.len() as u32;
        let consistent = (0..n).all(|c| {
            self.rows[c as usize]
                .iter()
                .enumerate()
                .all(|(l, &d)| d < n && self.act(d, inv(l)) == c)
        });
        consistent
            && (0..n).all(|c| {
                self.presentation
                    .relators
                    .iter()
                    .all(|r| self.trace(c, r) == c)
            })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("coset");
        for l in 0..2 * self.presentation.generators.len() {
            s.push(' ');
            s.push_str(&self.presentation.column_name(l));
        }
        s.push('\n');
        for (c, row) in self.rows.iter().enumerate() {
            let _ = write!(s, "{c}");
            for d in row {
                let _ = write!(s, " {d}");
            }
            s.push('\n');
        }
        s
    }
}

pub fn todd_coxeter(pres: &GroupPresentation, max_cosets: usize) -> Result<CosetTable, CosetError> {
    Enumerator::new(pres, max_cosets.max(1)).run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::rewriting::parse_system;

    fn gens(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn m_presentation() {
        let pres = monoid_to_group_presentation(&builtin::cm_monoid());
        let shown: Vec<String> = pres.relators().iter().map(|r| pres.format_relator(r)).collect();
        // e e e e^-1 and x e y y^-1 reduce freely
        assert_eq!(shown, ["e e", "x e", "x e e y x^-1", "x y"]);
    }

    #[test]
    fn small_presentations() {
        let pres = monoid_to_group_presentation(
            &parse_system("alphabet: a b\nrules:\na b -> 1\n").unwrap(),
        );
        assert_eq!(pres.format_relator(&pres.relators()[0]), "a b");
        let pres =
            monoid_to_group_presentation(&parse_system("alphabet: a\nrules:\na a -> a\n").unwrap());
        assert_eq!(pres.format_relator(&pres.relators()[0]), "a");
    }

    #[test]
    fn m_group_image_is_trivial() {
        let pres = monoid_to_group_presentation(&builtin::cm_monoid());
        let table = todd_coxeter(&pres, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(table.index(), 1);
        assert!(table.verify());
    }

    #[test]
    fn cyclic_three() {
        let pres = GroupPresentation::parse(gens(&["a"]), &["a a a"]).unwrap();
        let t = todd_coxeter(&pres, 100).unwrap();
        assert_eq!(t.index(), 3);
        assert!(t.verify());
    }

    #[test]
    fn klein_four() {
        let pres = GroupPresentation::parse(gens(&["a", "b"]), &["a a", "b b", "a b a b"]).unwrap();
        let t = todd_coxeter(&pres, 100).unwrap();
        assert_eq!(t.index(), 4);
        assert!(t.verify());
    }

    #[test]
    fn infinite_group_exhausts() {
        let pres = GroupPresentation::parse(gens(&["a", "b"]), &["a b a^-1 b^-1"]).unwrap();
        assert_eq!(
            todd_coxeter(&pres, 500),
            Err(CosetError::ResourceExhausted { max_cosets: 500 })
        );
    }

    #[test]
    fn free_reduction_drops_trivial_relators() {
        let pres = GroupPresentation::parse(gens(&["a"]), &["a a^-1", "a a"]).unwrap();
        assert_eq!(pres.relators().len(), 1);
        assert!(GroupPresentation::parse(gens(&["a"]), &["b"]).is_err());
    }

    #[test]
    fn export_format() {
        let pres = GroupPresentation::parse(gens(&["a"]), &["a a"]).unwrap();
        let t = todd_coxeter(&pres, 10).unwrap();
        assert_eq!(t.to_text(), "coset a a^-1\n0 1 1\n1 0 0\n");
    }

    #[test]
    fn symmetric_group_s3() {
        let pres =
            GroupPresentation::parse(gens(&["a", "b"]), &["a a", "b b b", "a b a b"]).unwrap();
        let t = todd_coxeter(&pres, 1000).unwrap();
        assert_eq!(t.index(), 6);
        assert!(t.verify());
    }
}
