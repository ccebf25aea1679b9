//! Alphabets, words and the shortlex order.
//!
//! A [`Word`] is a sequence of symbol indices into an [`Alphabet`]. The
//! declared order of the alphabet's tokens is the order used for shortlex
//! comparison, so `Word`'s `Ord` implementation is shortlex directly.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of a symbol inside its alphabet.
pub type Symbol = u8;

/// Largest number of symbols an alphabet may declare.
pub const MAX_SYMBOLS: usize = Symbol::MAX as usize + 1;

/// Token used for the empty word in every text interface.
pub const IDENTITY_TOKEN: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet is empty")]
    Empty,
    #[error("duplicate alphabet symbol `{0}`")]
    Duplicate(String),
    #[error("invalid symbol token `{0}` (expected letters, digits or underscore)")]
    InvalidToken(String),
    #[error("symbol token `{0}` is reserved")]
    Reserved(String),
    #[error("alphabet has more than {MAX_SYMBOLS} symbols")]
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

/// An ordered set of distinct symbol tokens.
#[derive(Debug, Clone)]
pub struct Alphabet {
    symbols: Vec<String>,
    lookup: HashMap<String, Symbol>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(AlphabetError::Empty);
        }
        if symbols.len() > MAX_SYMBOLS {
            return Err(AlphabetError::TooLarge);
        }
        let mut lookup = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if !is_token(s) {
                return Err(AlphabetError::InvalidToken(s.clone()));
            }
            if s == "0" || s == IDENTITY_TOKEN {
                return Err(AlphabetError::Reserved(s.clone()));
            }
            if lookup.insert(s.clone(), i as Symbol).is_some() {
                return Err(AlphabetError::Duplicate(s.clone()));
            }
        }
        Ok(Alphabet { symbols, lookup })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn token(&self, s: Symbol) -> &str {
        &self.symbols[s as usize]
    }

    pub fn symbol(&self, token: &str) -> Option<Symbol> {
        self.lookup.get(token).copied()
    }

    /// Iterates over all symbol indices in declared order.
    pub fn indices(&self) -> impl Iterator<Item = Symbol> + Clone {
        (0..self.symbols.len()).map(|i| i as Symbol)
    }

    /// True when every token is a single character, which permits
    /// juxtaposed input such as `xeey`.
    pub fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Resolves one whitespace-free chunk of word text into symbols.
    pub(crate) fn resolve_chunk(&self, chunk: &str, out: &mut Vec<Symbol>) -> Result<(), WordError> {
        if chunk == IDENTITY_TOKEN {
            return Ok(());
        }
        if let Some(s) = self.symbol(chunk) {
            out.push(s);
            return Ok(());
        }
        if self.single_char() {
            let mut buf = [0u8; 4];
            let start = out.len();
            for c in chunk.chars() {
                let t: &str = c.encode_utf8(&mut buf);
                if t == IDENTITY_TOKEN {
                    continue;
                }
                match self.symbol(t) {
                    Some(s) => out.push(s),
                    None => {
                        out.truncate(start);
                        return Err(WordError::UnknownSymbol(chunk.to_string()));
                    }
                }
            }
            return Ok(());
        }
        Err(WordError::UnknownSymbol(chunk.to_string()))
    }

    /// Parses whitespace-separated tokens; `1` denotes the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut out = Vec::new();
        for chunk in text.split_whitespace() {
            self.resolve_chunk(chunk, &mut out)?;
        }
        Ok(Word(out))
    }

    /// Renders a word as space-separated tokens, or `1` when empty.
    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return IDENTITY_TOKEN.to_string();
        }
        let mut s = String::new();
        for (i, &c) in w.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(self.token(c));
        }
        s
    }

    pub fn display<'a>(&'a self, w: &'a Word) -> DisplayWord<'a> {
        DisplayWord { alphabet: self, word: w }
    }
}

pub struct DisplayWord<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.format(self.word))
    }
}

/// A finite word; the empty word is the monoid identity.
///
/// Ordering is shortlex: shorter words first, equal lengths compared
/// lexicographically by symbol index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: impl Into<Vec<Symbol>>) -> Self {
        Word(symbols.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self · s`
    pub fn appended(&self, s: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(s);
        Word(v)
    }

    /// `s · self`
    pub fn prepended(&self, s: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(s);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// True when `factor` occurs contiguously in `self`.
    pub fn contains_factor(&self, factor: &[Symbol]) -> bool {
        factor.is_empty() || self.0.windows(factor.len()).any(|win| win == factor)
    }

    /// Largest symbol index used, if any.
    pub fn max_symbol(&self) -> Option<Symbol> {
        self.0.iter().copied().max()
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl std::ops::Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

/// Shortlex comparison of raw symbol slices.
pub fn shortlex_cmp(a: &[Symbol], b: &[Symbol]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All words over an alphabet of `k` symbols with length exactly `n`, in
/// lexicographic order.
pub fn all_words_of_length(k: usize, n: usize) -> Vec<Word> {
    let mut level = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(level.len() * k);
        for w in &level {
            for s in 0..k {
                next.push(w.appended(s as Symbol));
            }
        }
        level = next;
    }
    level
}
