//! Line-oriented system files.
//!
//! ```text
//! # comment
//! alphabet: x y e
//! rules:
//! e e e -> e
//! x y -> 1
//! ```

use std::fmt;

use thiserror::Error;

use super::{Rule, RewritingSystem, SystemError};
use crate::alphabet::{Alphabet, AlphabetError, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    Alphabet(AlphabetError),
    UnknownSymbol(String),
    EmptyLhs,
    NotReducing,
    DuplicateLhs { first_line: usize },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::Alphabet(e) => write!(f, "{e}"),
            ParseErrorKind::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            ParseErrorKind::EmptyLhs => f.write_str("empty left-hand side"),
            ParseErrorKind::NotReducing => f.write_str("rule is not shortlex-reducing"),
            ParseErrorKind::DuplicateLhs { first_line } => {
                write!(f, "duplicate left-hand side (first on line {first_line})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn word(alphabet: &Alphabet, text: &str, line: usize) -> Result<Word, ParseError> {
    alphabet.parse_word(text).map_err(|e| match e {
        WordError::UnknownSymbol(s) => err(line, ParseErrorKind::UnknownSymbol(s)),
    })
}

/// Parses a system file. Rule order follows file order.
pub fn parse_system(text: &str) -> Result<RewritingSystem, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut in_rules = false;
    let mut rules: Vec<Rule> = Vec::new();
    let mut rule_lines: Vec<usize> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("alphabet:") {
            if alphabet.is_some() {
                return Err(err(line, ParseErrorKind::Syntax("alphabet declared twice".into())));
            }
            let a = Alphabet::new(rest.split_whitespace())
                .map_err(|e| err(line, ParseErrorKind::Alphabet(e)))?;
            alphabet = Some(a);
            continue;
        }
        if content == "rules:" {
            if alphabet.is_none() {
                return Err(err(line, ParseErrorKind::Syntax("`rules:` before `alphabet:`".into())));
            }
            if in_rules {
                return Err(err(line, ParseErrorKind::Syntax("`rules:` declared twice".into())));
            }
            in_rules = true;
            continue;
        }
        if !in_rules {
            return Err(err(
                line,
                ParseErrorKind::Syntax(format!("unexpected line `{content}`")),
            ));
        }
        let alphabet = alphabet.as_ref().expect("checked at `rules:`");
        let mut sides = content.split("->");
        let (lhs, rhs) = match (sides.next(), sides.next(), sides.next()) {
            (Some(l), Some(r), None) => (l, r),
            _ => {
                return Err(err(
                    line,
                    ParseErrorKind::Syntax("expected exactly one `->`".into()),
                ))
            }
        };
        let lhs = word(alphabet, lhs, line)?;
        let rhs = word(alphabet, rhs, line)?;
        rules.push(Rule::new(lhs, rhs));
        rule_lines.push(line);
    }

    let alphabet = alphabet.ok_or_else(|| {
        err(last_line.max(1), ParseErrorKind::Syntax("missing `alphabet:` line".into()))
    })?;
    if !in_rules {
        return Err(err(last_line.max(1), ParseErrorKind::Syntax("missing `rules:` line".into())));
    }
    RewritingSystem::new(alphabet, rules).map_err(|e| match e {
        SystemError::EmptyLhs { index } => err(rule_lines[index], ParseErrorKind::EmptyLhs),
        SystemError::NotReducing { index } => err(rule_lines[index], ParseErrorKind::NotReducing),
        SystemError::DuplicateLhs { index, first } => err(
            rule_lines[index],
            ParseErrorKind::DuplicateLhs {
                first_line: rule_lines[first],
            },
        ),
        SystemError::SymbolOutOfRange { index } => err(
            rule_lines[index],
            ParseErrorKind::Syntax("symbol out of range".into()),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::CM_MONOID_SYSTEM;

    #[test]
    fn builtin_file_parses() {
        let sys = parse_system(CM_MONOID_SYSTEM).unwrap();
        assert_eq!(sys.rules().len(), 4);
        assert_eq!(sys.alphabet().symbols(), ["x", "y", "e"]);
        assert_eq!(sys.format(&sys.rules()[3].lhs), "x y");
        assert_eq!(sys.format(&sys.rules()[3].rhs), "1");
    }

    #[test]
    fn increasing_rule_rejected() {
        let e = parse_system("alphabet: x y e\nrules:\nx -> x y\n").unwrap_err();
        assert_eq!(e, err(3, ParseErrorKind::NotReducing));
    }

    #[test]
    fn unknown_symbol_rejected() {
        let e = parse_system("alphabet: x y e\nrules:\n\nx z -> x\n").unwrap_err();
        assert_eq!(e, err(4, ParseErrorKind::UnknownSymbol("z".into())));
    }

    #[test]
    fn duplicate_alphabet_symbol() {
        let e = parse_system("alphabet: x x\nrules:\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(matches!(e.kind, ParseErrorKind::Alphabet(AlphabetError::Duplicate(_))));
    }

    #[test]
    fn duplicate_lhs() {
        let e = parse_system("alphabet: a b\nrules:\na b -> a\n# again\na b -> b\n").unwrap_err();
        assert_eq!(e, err(5, ParseErrorKind::DuplicateLhs { first_line: 3 }));
    }

    #[test]
    fn syntax_errors() {
        let e = parse_system("alphabet: a\nrules:\na a\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.line, 3);
        let e = parse_system("rules:\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_system("alphabet: a\nfoo\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_system("alphabet: a b\nrules:\n -> a\n").unwrap_err();
        assert_eq!(e, err(3, ParseErrorKind::EmptyLhs));
    }

    #[test]
    fn empty_rhs_and_comments() {
        let sys = parse_system("alphabet: a b  # two letters\nrules:\na b ->   # cancel\nb a -> 1\n")
            .unwrap();
        assert!(sys.rules().iter().all(|r| r.rhs.is_empty()));
    }

    #[test]
    fn error_message_carries_line() {
        let e = parse_system("alphabet: x y e\nrules:\nx z -> x\n").unwrap_err();
        assert_eq!(e.to_string(), "line 3: unknown symbol `z`");
    }
}
