//! Regular expressions over an alphabet's tokens.
//!
//! Grammar, lowest precedence first: union `|`, concatenation by
//! juxtaposition, postfix `*`. Atoms are symbol tokens, `1` (the empty
//! word), `0` (the empty language) and parenthesized expressions.

use thiserror::Error;

use crate::alphabet::{is_token, Alphabet, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegexError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown symbol `{token}` at position {position}")]
    UnknownSymbol { position: usize, token: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegexNode {
    Empty,
    Epsilon,
    Symbol(Symbol),
    Union(Box<RegexNode>, Box<RegexNode>),
    Concat(Box<RegexNode>, Box<RegexNode>),
    Star(Box<RegexNode>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regex {
    pub alphabet: Alphabet,
    pub root: RegexNode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Bar,
    Star,
    Atom(Atom),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Atom {
    Zero,
    One,
    Sym(Symbol),
}

fn atom_for(alphabet: &Alphabet, t: &str) -> Option<Atom> {
    match t {
        "0" => Some(Atom::Zero),
        "1" => Some(Atom::One),
        _ => alphabet.symbol(t).map(Atom::Sym),
    }
}

fn tokenize(text: &str, alphabet: &Alphabet) -> Result<Vec<(usize, Tok)>, RegexError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' | ')' | '|' | '*' => {
                let t = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '|' => Tok::Bar,
                    _ => Tok::Star,
                };
                out.push((pos, t));
                i += 1;
            }
            _ => {
                let start = i;
                while i < chars.len() && is_token(&chars[i].1.to_string()) {
                    i += 1;
                }
                if start == i {
                    return Err(RegexError::Syntax {
                        position: pos,
                        message: format!("unexpected character `{c}`"),
                    });
                }
                let end = chars.get(i).map_or(text.len(), |&(p, _)| p);
                let word = &text[pos..end];
                if let Some(a) = atom_for(alphabet, word) {
                    out.push((pos, Tok::Atom(a)));
                } else if alphabet.single_char() {
                    for (off, ch) in word.char_indices() {
                        match atom_for(alphabet, &ch.to_string()) {
                            Some(a) => out.push((pos + off, Tok::Atom(a))),
                            None => {
                                return Err(RegexError::UnknownSymbol {
                                    position: pos + off,
                                    token: ch.to_string(),
                                })
                            }
                        }
                    }
                } else {
                    return Err(RegexError::UnknownSymbol {
                        position: pos,
                        token: word.to_string(),
                    });
                }
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.at).map(|t| t.1)
    }

    fn position(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn error<T>(&self, message: &str) -> Result<T, RegexError> {
        Err(RegexError::Syntax {
            position: self.position(),
            message: message.to_string(),
        })
    }

    fn union(&mut self) -> Result<RegexNode, RegexError> {
        let mut node = self.concat()?;
        while self.peek() == Some(Tok::Bar) {
            self.at += 1;
            let rhs = self.concat()?;
            node = RegexNode::Union(Box::new(node), Box::new(rhs));
        }
        Ok(node)
    }

    fn concat(&mut self) -> Result<RegexNode, RegexError> {
        let mut node: Option<RegexNode> = None;
        while matches!(self.peek(), Some(Tok::Atom(_)) | Some(Tok::LParen)) {
            let next = self.postfix()?;
            node = Some(match node {
                None => next,
                Some(prev) => RegexNode::Concat(Box::new(prev), Box::new(next)),
            });
        }
        match node {
            Some(n) => Ok(n),
            None => self.error("expected an expression"),
        }
    }

    fn postfix(&mut self) -> Result<RegexNode, RegexError> {
        let mut node = self.atom()?;
        while self.peek() == Some(Tok::Star) {
            self.at += 1;
            node = RegexNode::Star(Box::new(node));
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<RegexNode, RegexError> {
        match self.peek() {
            Some(Tok::Atom(a)) => {
                self.at += 1;
                Ok(match a {
                    Atom::Zero => RegexNode::Empty,
                    Atom::One => RegexNode::Epsilon,
                    Atom::Sym(s) => RegexNode::Symbol(s),
                })
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.union()?;
                if self.peek() != Some(Tok::RParen) {
                    return self.error("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            _ => self.error("expected an expression"),
        }
    }
}

/// Parses `text`; positions in errors are byte offsets into `text`.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex, RegexError> {
    let toks = tokenize(text, alphabet)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let root = p.union()?;
    if p.at != p.toks.len() {
        return p.error("unexpected token");
    }
    Ok(Regex {
        alphabet: alphabet.clone(),
        root,
    })
}

impl RegexNode {
    /// Direct denotational membership, by trying every split. Exponential;
    /// intended as an independent reference for short words.
    pub fn matches(&self, w: &[Symbol]) -> bool {
        match self {
            RegexNode::Empty => false,
            RegexNode::Epsilon => w.is_empty(),
            RegexNode::Symbol(s) => w == [*s],
            RegexNode::Union(a, b) => a.matches(w) || b.matches(w),
            RegexNode::Concat(a, b) => (0..=w.len()).any(|k| a.matches(&w[..k]) && b.matches(&w[k..])),
            RegexNode::Star(a) => {
                w.is_empty() || (1..=w.len()).any(|k| a.matches(&w[..k]) && self.matches(&w[k..]))
            }
        }
    }
}

impl Regex {
    pub fn matches(&self, w: &Word) -> bool {
        self.root.matches(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RegexNode::*;

    fn xye() -> Alphabet {
        Alphabet::new(["x", "y", "e"]).unwrap()
    }

    fn b(n: RegexNode) -> Box<RegexNode> {
        Box::new(n)
    }

    const X: crate::alphabet::Symbol = 0;
    const Y: crate::alphabet::Symbol = 1;
    const E: crate::alphabet::Symbol = 2;

    #[test]
    fn normal_form_shape() {
        let r = parse_regex("( e | y )* ( e | x )*", &xye()).unwrap();
        assert_eq!(
            r.root,
            Concat(
                b(Star(b(Union(b(Symbol(E)), b(Symbol(Y)))))),
                b(Star(b(Union(b(Symbol(E)), b(Symbol(X)))))),
            )
        );
    }

    #[test]
    fn epsilon_branch() {
        let r = parse_regex("1 | x ( e | x )*", &xye()).unwrap();
        assert_eq!(
            r.root,
            Union(
                b(Epsilon),
                b(Concat(b(Symbol(X)), b(Star(b(Union(b(Symbol(E)), b(Symbol(X)))))))),
            )
        );
    }

    #[test]
    fn dangling_union_is_error() {
        let e = parse_regex("x | ", &xye()).unwrap_err();
        assert!(matches!(e, RegexError::Syntax { position: 4, .. }));
    }

    #[test]
    fn other_errors() {
        assert!(matches!(
            parse_regex("x z", &xye()),
            Err(RegexError::UnknownSymbol { position: 2, .. })
        ));
        assert!(matches!(parse_regex("( x", &xye()), Err(RegexError::Syntax { .. })));
        assert!(matches!(parse_regex("x )", &xye()), Err(RegexError::Syntax { .. })));
        assert!(matches!(parse_regex("*", &xye()), Err(RegexError::Syntax { .. })));
        assert!(matches!(parse_regex("()", &xye()), Err(RegexError::Syntax { .. })));
        assert!(matches!(parse_regex("x + y", &xye()), Err(RegexError::Syntax { .. })));
    }

    #[test]
    fn juxtaposition_and_multichar() {
        let a = xye();
        assert_eq!(
            parse_regex("xe*", &a).unwrap().root,
            Concat(b(Symbol(X)), b(Star(b(Symbol(E)))))
        );
        let m = Alphabet::new(["ab", "c"]).unwrap();
        assert_eq!(
            parse_regex("ab c", &m).unwrap().root,
            Concat(b(Symbol(0)), b(Symbol(1)))
        );
        assert!(parse_regex("abc", &m).is_err());
    }

    #[test]
    fn denotation() {
        let a = xye();
        let r = parse_regex("( e | y )* ( e | x )*", &a).unwrap();
        assert!(r.matches(&a.parse_word("y x").unwrap()));
        assert!(r.matches(&a.parse_word("e e").unwrap()));
        assert!(!r.matches(&a.parse_word("x y").unwrap()));
        assert!(!parse_regex("0", &a).unwrap().matches(&Word::empty()));
        assert!(parse_regex("0*", &a).unwrap().matches(&Word::empty()));
    }
}
