use std::fmt;

use crate::diagnostic::{Diagnostic, Span};

/// Built-in constants and eliminators of the surface language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Prim {
    U0,
    U1,
    Nat,
    Zero,
    Succ,
    NatRec,
    Unit,
    Tt,
    Void,
    Abort,
    S1,
    Base,
    Loop,
    S1Rec,
    S1Ind,
    Id,
    Refl,
    J,
    Sum,
    Inl,
    Inr,
    Case,
    Fst,
    Snd,
    Coe,
    Ap,
    Ua,
    /// `! p`
    Inv,
    /// `p * q`
    Concat,
}

impl Prim {
    pub const KEYWORDS: [Prim; 27] = [
        Prim::U0,
        Prim::U1,
        Prim::Nat,
        Prim::Zero,
        Prim::Succ,
        Prim::NatRec,
        Prim::Unit,
        Prim::Tt,
        Prim::Void,
        Prim::Abort,
        Prim::S1,
        Prim::Base,
        Prim::Loop,
        Prim::S1Rec,
        Prim::S1Ind,
        Prim::Id,
        Prim::Refl,
        Prim::J,
        Prim::Sum,
        Prim::Inl,
        Prim::Inr,
        Prim::Case,
        Prim::Fst,
        Prim::Snd,
        Prim::Coe,
        Prim::Ap,
        Prim::Ua,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Prim::U0 => "U0",
            Prim::U1 => "U1",
            Prim::Nat => "Nat",
            Prim::Zero => "zero",
            Prim::Succ => "succ",
            Prim::NatRec => "natrec",
            Prim::Unit => "Unit",
            Prim::Tt => "tt",
            Prim::Void => "Void",
            Prim::Abort => "abort",
            Prim::S1 => "S1",
            Prim::Base => "base",
            Prim::Loop => "loop",
            Prim::S1Rec => "S1rec",
            Prim::S1Ind => "S1ind",
            Prim::Id => "Id",
            Prim::Refl => "refl",
            Prim::J => "J",
            Prim::Sum => "Sum",
            Prim::Inl => "inl",
            Prim::Inr => "inr",
            Prim::Case => "case",
            Prim::Fst => "fst",
            Prim::Snd => "snd",
            Prim::Coe => "coe",
            Prim::Ap => "ap",
            Prim::Ua => "ua",
            Prim::Inv => "!",
            Prim::Concat => "*",
        }
    }

    /// Number of arguments a keyword takes before further juxtaposition
    /// becomes ordinary application.
    pub fn arity(self) -> usize {
        match self {
            Prim::U0
            | Prim::U1
            | Prim::Nat
            | Prim::Zero
            | Prim::Unit
            | Prim::Tt
            | Prim::Void
            | Prim::S1
            | Prim::Base
            | Prim::Loop => 0,
            Prim::Succ | Prim::Inl | Prim::Inr | Prim::Fst | Prim::Snd | Prim::Ua | Prim::Inv => 1,
            Prim::Abort | Prim::Refl | Prim::Sum | Prim::Coe | Prim::Ap | Prim::Concat => 2,
            Prim::Id | Prim::S1Rec | Prim::S1Ind => 3,
            Prim::NatRec | Prim::Case => 4,
            Prim::J => 5,
        }
    }

    pub fn from_keyword(s: &str) -> Option<Prim> {
        Prim::KEYWORDS.iter().copied().find(|p| p.keyword() == s)
    }
}

/// Is `s` reserved (a keyword or `def`)?
pub fn is_reserved(s: &str) -> bool {
    s == "def" || Prim::from_keyword(s).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Def,
    Ident(String),
    Kw(Prim),
    Colon,
    ColonEq,
    Semi,
    Backslash,
    Dot,
    LParen,
    RParen,
    Arrow,
    StarStar,
    Star,
    Bang,
    Lt,
    Gt,
    Comma,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Def => f.write_str("'def'"),
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::Kw(p) => write!(f, "'{}'", p.keyword()),
            Tok::Colon => f.write_str("':'"),
            Tok::ColonEq => f.write_str("':='"),
            Tok::Semi => f.write_str("';'"),
            Tok::Backslash => f.write_str("'\\'"),
            Tok::Dot => f.write_str("'.'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::StarStar => f.write_str("'**'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Bang => f.write_str("'!'"),
            Tok::Lt => f.write_str("'<'"),
            Tok::Gt => f.write_str("'>'"),
            Tok::Comma => f.write_str("','"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// On-demand tokenizer. Cloning it is cheap, which the parser uses for
/// lookahead.
#[derive(Clone, Debug)]
pub struct Lexer<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(text: &'a str) -> Self {
        Lexer {
            text,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn peek_char(&self, n: usize) -> Option<char> {
        self.text[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_char(0)?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek_char(0) {
            if c == ' ' || c == '\t' || c == '\r' || c == '\n' {
                self.bump();
            } else if c == '-' && self.peek_char(1) == Some('-') {
                while let Some(c) = self.peek_char(0) {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    pub fn next_token(&mut self) -> Result<Token, Diagnostic> {
        self.skip_trivia();
        let (start, line, col) = (self.pos, self.line, self.col);
        let Some(c) = self.peek_char(0) else {
            return Ok(Token {
                tok: Tok::Eof,
                span: Span::new(start, start, line, col),
            });
        };
        let tok = if is_ident_start(c) {
            while self.peek_char(0).is_some_and(is_ident_continue) {
                self.bump();
            }
            let word = &self.text[start..self.pos];
            if word == "def" {
                Tok::Def
            } else if let Some(p) = Prim::from_keyword(word) {
                Tok::Kw(p)
            } else {
                Tok::Ident(word.to_string())
            }
        } else {
            let peek = self.peek_char(1);
            let (tok, len) = match (c, peek) {
                (':', Some('=')) => (Tok::ColonEq, 2),
                (':', _) => (Tok::Colon, 1),
                ('-', Some('>')) => (Tok::Arrow, 2),
                ('*', Some('*')) => (Tok::StarStar, 2),
                ('*', _) => (Tok::Star, 1),
                (';', _) => (Tok::Semi, 1),
                ('\\', _) => (Tok::Backslash, 1),
                ('.', _) => (Tok::Dot, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('!', _) => (Tok::Bang, 1),
                ('<', _) => (Tok::Lt, 1),
                ('>', _) => (Tok::Gt, 1),
                (',', _) => (Tok::Comma, 1),
                _ => {
                    let span = Span::new(start, start + c.len_utf8(), line, col);
                    let shown = if c.is_control() || c == '\u{fffd}' {
                        format!("{:?}", c)
                    } else {
                        format!("'{c}'")
                    };
                    return Err(Diagnostic::parse(
                        span,
                        format!("unexpected character {shown}"),
                    ));
                }
            };
            for _ in 0..len {
                self.bump();
            }
            tok
        };
        Ok(Token {
            tok,
            span: Span::new(start, self.pos, line, col),
        })
    }
}

/// Split `text` into tokens. The final token is always [`Tok::Eof`].
pub fn tokenize(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    loop {
        let token = lexer.next_token()?;
        let done = token.tok == Tok::Eof;
        tokens.push(token);
        if done {
            return Ok(tokens);
        }
    }
}
