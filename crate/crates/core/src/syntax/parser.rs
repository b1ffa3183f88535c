//! Recursive-descent parser for `.hott` files.
//!
//! ```text
//! module   := decl*
//! decl     := "def" IDENT ":" term ":=" term ";"
//! term     := "\" IDENT+ "." term
//!           | "(" IDENT+ ":" term ")" ("->" | "**") term
//!           | binop (("->" | "**") term)?
//! binop    := unary ("*" unary)*
//! unary    := "!" unary | appspine
//! appspine := atom atom*        -- a keyword head first takes its arity
//! atom     := IDENT | keyword | "<" term "," term ">" | "(" term ")"
//! ```

use crate::diagnostic::{Diagnostic, Span};
use crate::syntax::lexer::{Lexer, Prim, Tok, Token};
use crate::syntax::raw::{Binder, Decl, RawKind, RawTerm};

const MAX_DEPTH: usize = 256;
const STACK_RED_ZONE: usize = 64 * 1024;
const STACK_GROWTH: usize = 1024 * 1024;

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: Token,
    /// End of the previously consumed token.
    last_end: Span,
    depth: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> PResult<Self> {
        let mut lexer = Lexer::new(text);
        let current = lexer.next_token()?;
        Ok(Parser {
            lexer,
            current,
            last_end: Span::default(),
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.current.tok
    }

    fn advance(&mut self) -> PResult<Token> {
        let next = self.lexer.next_token()?;
        let tok = std::mem::replace(&mut self.current, next);
        self.last_end = tok.span;
        Ok(tok)
    }

    /// The `n`-th token after the current one, without consuming anything.
    /// Lexical errors in the lookahead window read as end of input; they are
    /// reported when the parser actually reaches them.
    fn lookahead(&self, n: usize) -> Tok {
        let mut lexer = self.lexer.clone();
        let mut tok = self.current.tok.clone();
        for _ in 0..n {
            tok = match lexer.next_token() {
                Ok(t) => t.tok,
                Err(_) => Tok::Eof,
            };
        }
        tok
    }

    fn error_expected(&self, expected: &[&str]) -> Diagnostic {
        let list = match expected {
            [one] => one.to_string(),
            _ => format!("one of {}", expected.join(", ")),
        };
        Diagnostic::parse(
            self.current.span,
            format!("expected {list}, found {}", self.current.tok),
        )
    }

    fn expect(&mut self, tok: Tok, shown: &str) -> PResult<Token> {
        if *self.peek() == tok {
            self.advance()
        } else {
            Err(self.error_expected(&[shown]))
        }
    }

    fn ident(&mut self) -> PResult<Binder> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.advance()?.span;
                Ok(Binder { name, span })
            }
            _ => Err(self.error_expected(&["identifier"])),
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            Err(Diagnostic::parse(
                self.current.span,
                "expression nested too deeply",
            ))
        } else {
            Ok(())
        }
    }

    fn module(&mut self) -> PResult<Vec<Decl>> {
        let mut decls = Vec::new();
        while *self.peek() != Tok::Eof {
            decls.push(self.decl()?);
        }
        Ok(decls)
    }

    fn decl(&mut self) -> PResult<Decl> {
        let start = self.expect(Tok::Def, "'def'")?.span;
        let name = self.ident()?;
        self.expect(Tok::Colon, "':'")?;
        let declared_type = self.term()?;
        self.expect(Tok::ColonEq, "':='")?;
        let body = self.term()?;
        let end = self.expect(Tok::Semi, "';'")?.span;
        Ok(Decl {
            name: name.name,
            name_span: name.span,
            declared_type,
            body,
            span: start.join(end),
        })
    }

    /// Does the current `(` open a binder group `( IDENT+ :`?
    fn at_binder_group(&self) -> bool {
        if *self.peek() != Tok::LParen {
            return false;
        }
        let mut n = 1;
        loop {
            match self.lookahead(n) {
                Tok::Ident(_) => n += 1,
                Tok::Colon if n > 1 => break,
                _ => return false,
            }
        }
        // `(x : A)` is an ascription unless a binder continuation follows
        // the closing parenthesis
        let mut lexer = self.lexer.clone();
        let mut depth = 1usize;
        loop {
            let tok = match lexer.next_token() {
                Ok(t) => t.tok,
                Err(_) => return true,
            };
            match tok {
                Tok::LParen => depth += 1,
                Tok::RParen if depth == 1 => break,
                Tok::RParen => depth -= 1,
                Tok::Eof => return true,
                _ => {}
            }
        }
        match lexer.next_token() {
            Ok(t) => matches!(t.tok, Tok::Arrow | Tok::StarStar | Tok::LParen),
            Err(_) => true,
        }
    }

    fn term(&mut self) -> PResult<RawTerm> {
        self.enter()?;
        let result = stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || self.term_inner());
        self.depth -= 1;
        result
    }

    fn term_inner(&mut self) -> PResult<RawTerm> {
        if *self.peek() == Tok::Backslash {
            let start = self.advance()?.span;
            let mut binders = vec![self.ident()?];
            while matches!(self.peek(), Tok::Ident(_)) {
                binders.push(self.ident()?);
            }
            self.expect(Tok::Dot, "'.'")?;
            let body = self.term()?;
            let span = start.join(body.span);
            return Ok(binders.into_iter().rev().fold(body, |body, b| {
                RawTerm::new(span, RawKind::Lam(b, Box::new(body)))
            }));
        }

        if self.at_binder_group() {
            let start = self.current.span;
            // one or more groups `(x y : A)`, each binder paired with its domain
            let mut binders = Vec::new();
            while self.at_binder_group() {
                self.advance()?;
                let mut names = Vec::new();
                while matches!(self.peek(), Tok::Ident(_)) {
                    names.push(self.ident()?);
                }
                self.expect(Tok::Colon, "':'")?;
                let dom = self.term()?;
                self.expect(Tok::RParen, "')'")?;
                binders.extend(names.into_iter().map(|b| (b, dom.clone())));
            }
            let sigma = match self.peek() {
                Tok::Arrow => false,
                Tok::StarStar => true,
                _ => return Err(self.error_expected(&["'->'", "'**'"])),
            };
            self.advance()?;
            let cod = self.term()?;
            return Ok(binders.into_iter().rev().fold(cod, |cod, (b, dom)| {
                let span = start.join(cod.span);
                let dom = Box::new(dom);
                let kind = if sigma {
                    RawKind::Sigma(b, dom, Box::new(cod))
                } else {
                    RawKind::Pi(b, dom, Box::new(cod))
                };
                RawTerm::new(span, kind)
            }));
        }

        let lhs = self.binop()?;
        let sigma = match self.peek() {
            Tok::Arrow => false,
            Tok::StarStar => true,
            _ => return Ok(lhs),
        };
        let arrow_span = self.advance()?.span;
        let rhs = self.term()?;
        let span = lhs.span.join(rhs.span);
        let binder = Binder {
            name: "_".into(),
            span: arrow_span,
        };
        let kind = if sigma {
            RawKind::Sigma(binder, Box::new(lhs), Box::new(rhs))
        } else {
            RawKind::Pi(binder, Box::new(lhs), Box::new(rhs))
        };
        Ok(RawTerm::new(span, kind))
    }

    fn binop(&mut self) -> PResult<RawTerm> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.advance()?;
            let rhs = self.unary()?;
            let span = lhs.span.join(rhs.span);
            lhs = RawTerm::new(span, RawKind::Prim(Prim::Concat, vec![lhs, rhs]));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<RawTerm> {
        if *self.peek() == Tok::Bang {
            self.enter()?;
            let start = self.advance()?.span;
            let arg = self.unary()?;
            self.depth -= 1;
            let span = start.join(arg.span);
            return Ok(RawTerm::new(span, RawKind::Prim(Prim::Inv, vec![arg])));
        }
        self.appspine()
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Kw(_) | Tok::Lt | Tok::LParen
        )
    }

    fn appspine(&mut self) -> PResult<RawTerm> {
        let mut head = match self.peek().clone() {
            Tok::Kw(p) if p.arity() > 0 => {
                let kw_span = self.advance()?.span;
                let mut args = Vec::with_capacity(p.arity());
                for _ in 0..p.arity() {
                    if !self.starts_atom() {
                        return Err(Diagnostic::parse(
                            self.current.span,
                            format!(
                                "'{}' expects {} argument(s), found {}",
                                p.keyword(),
                                p.arity(),
                                self.current.tok
                            ),
                        ));
                    }
                    args.push(self.atom()?);
                }
                let span = args.iter().fold(kw_span, |s, a| s.join(a.span));
                RawTerm::new(span, RawKind::Prim(p, args))
            }
            _ => self.atom()?,
        };
        while self.starts_atom() {
            let arg = self.atom()?;
            let span = head.span.join(arg.span);
            head = RawTerm::new(span, RawKind::App(Box::new(head), Box::new(arg)));
        }
        Ok(head)
    }

    fn atom(&mut self) -> PResult<RawTerm> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.advance()?.span;
                Ok(RawTerm::new(span, RawKind::Var(name)))
            }
            Tok::Kw(p) if p.arity() == 0 => {
                let span = self.advance()?.span;
                Ok(RawTerm::new(span, RawKind::Prim(p, vec![])))
            }
            Tok::Kw(p) => Err(Diagnostic::parse(
                self.current.span,
                format!(
                    "'{}' expects {} argument(s); parenthesize it when used as an argument",
                    p.keyword(),
                    p.arity()
                ),
            )),
            Tok::Lt => {
                self.enter()?;
                let start = self.advance()?.span;
                let fst = self.term()?;
                self.expect(Tok::Comma, "','")?;
                let snd = self.term()?;
                let end = self.expect(Tok::Gt, "'>'")?.span;
                self.depth -= 1;
                Ok(RawTerm::new(
                    start.join(end),
                    RawKind::Pair(Box::new(fst), Box::new(snd)),
                ))
            }
            Tok::LParen => {
                self.enter()?;
                let start = self.advance()?.span;
                let inner = self.term()?;
                let result = if *self.peek() == Tok::Colon {
                    self.advance()?;
                    let ty = self.term()?;
                    let end = self.expect(Tok::RParen, "')'")?.span;
                    RawTerm::new(start.join(end), RawKind::Ann(Box::new(inner), Box::new(ty)))
                } else {
                    self.expect(Tok::RParen, "')'")?;
                    inner
                };
                self.depth -= 1;
                Ok(result)
            }
            _ => Err(self.error_expected(&["identifier", "keyword", "'('", "'<'"])),
        }
    }
}

/// Parse a whole `.hott` file into declarations, in source order.
pub fn parse_module(text: &str) -> Result<Vec<Decl>, Diagnostic> {
    Parser::new(text)?.module()
}

/// Parse a single expression; trailing input is an error.
pub fn parse_term(text: &str) -> Result<RawTerm, Diagnostic> {
    let mut parser = Parser::new(text)?;
    let term = parser.term()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error_expected(&["end of input"]));
    }
    Ok(term)
}
