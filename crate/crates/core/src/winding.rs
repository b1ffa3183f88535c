//! Loop words on the circle and their winding numbers.
//!
//! A word is `refl`, `loop`, `! w`, `(w)` or `w * w`, with `!` binding
//! tighter than `*` and `*` associating to the left.

use std::fmt;

use thiserror::Error;

use crate::diagnostic::{Diagnostic, Span};
use crate::env::Environment;
use crate::int;
use crate::normalize::{normalize, EvalConfig, EvalError};
use crate::syntax::{pretty_print, tokenize, Prim, Tok, Token};
use crate::term::{Context, Term};

const MAX_DEPTH: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Refl,
    Loop,
    Inv(Box<Word>),
    /// At least two factors, composed left to right.
    Concat(Vec<Word>),
}

#[derive(Debug, Error)]
pub enum WindingError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("encode did not reach an integer normal form: {0}")]
    NotAnInteger(String),
}

impl Word {
    pub fn parse(text: &str) -> Result<Word, Diagnostic> {
        let tokens = tokenize(text)?;
        let mut p = WordParser { tokens, pos: 0 };
        let w = p.word(0)?;
        match p.peek() {
            Tok::Eof => Ok(w),
            other => Err(Diagnostic::parse(
                p.span(),
                format!("expected '*' or end of word, found {other}"),
            )),
        }
    }

    /// The path term `base = base` the word denotes.
    pub fn to_term(&self) -> Term {
        match self {
            Word::Refl => Term::Refl(Term::S1Ty.rc(), Term::Base.rc()),
            Word::Loop => Term::Loop,
            Word::Inv(w) => Term::PathInv(w.to_term().rc()),
            Word::Concat(ws) => {
                let mut it = ws.iter();
                let first = it.next().map_or(Word::Refl.to_term(), Word::to_term);
                it.fold(first, |acc, w| Term::PathConcat(acc.rc(), w.to_term().rc()))
            }
        }
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Concat(_) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Refl => f.write_str("refl"),
            Word::Loop => f.write_str("loop"),
            Word::Inv(w) => {
                f.write_str("!")?;
                w.fmt_atom(f)
            }
            Word::Concat(ws) => {
                for (i, w) in ws.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    w.fmt_atom(f)?;
                }
                Ok(())
            }
        }
    }
}

struct WordParser {
    tokens: Vec<Token>,
    pos: usize,
}

impl WordParser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn bump(&mut self) {
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
    }

    fn word(&mut self, depth: usize) -> Result<Word, Diagnostic> {
        let mut factors = vec![self.factor(depth)?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor(depth)?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap_or(Word::Refl)
        } else {
            Word::Concat(factors)
        })
    }

    fn factor(&mut self, depth: usize) -> Result<Word, Diagnostic> {
        if depth > MAX_DEPTH {
            return Err(Diagnostic::parse(self.span(), "word nested too deeply"));
        }
        match self.peek().clone() {
            Tok::Kw(Prim::Loop) => {
                self.bump();
                Ok(Word::Loop)
            }
            Tok::Kw(Prim::Refl) => {
                self.bump();
                // `refl S1 base` is accepted as a spelled-out `refl`
                if *self.peek() == Tok::Kw(Prim::S1) {
                    self.bump();
                    if *self.peek() != Tok::Kw(Prim::Base) {
                        return Err(Diagnostic::parse(
                            self.span(),
                            "expected 'base' after 'refl S1'",
                        ));
                    }
                    self.bump();
                }
                Ok(Word::Refl)
            }
            Tok::Bang => {
                self.bump();
                Ok(Word::Inv(Box::new(self.factor(depth + 1)?)))
            }
            Tok::LParen => {
                self.bump();
                let w = self.word(depth + 1)?;
                if *self.peek() != Tok::RParen {
                    return Err(Diagnostic::parse(
                        self.span(),
                        format!("expected ')', found {}", self.peek()),
                    ));
                }
                self.bump();
                Ok(w)
            }
            other => Err(Diagnostic::parse(
                self.span(),
                format!("expected 'loop', 'refl', '!' or '(' in a loop word, found {other}"),
            )),
        }
    }
}

/// `encode base p`.
pub fn encode_term(path: Term) -> Term {
    Term::App(
        Term::App(Term::Global("encode".into()).rc(), Term::Base.rc()).rc(),
        path.rc(),
    )
}

/// Run `encode` on the word in compute mode and read off the integer.
/// `env` must contain the corpus.
pub fn winding(env: &Environment, word: &Word, step_budget: u64) -> Result<i64, WindingError> {
    let cfg = EvalConfig::compute().with_budget(step_budget);
    let nf = normalize(env, &Context::new(), &encode_term(word.to_term()), cfg)?;
    int::to_i64(&nf).ok_or_else(|| WindingError::NotAnInteger(pretty_print(&nf, &Context::new())))
}
