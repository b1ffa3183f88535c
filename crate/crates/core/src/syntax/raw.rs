//! Parser output: named, located, not yet checked.

use crate::diagnostic::Span;
use crate::syntax::lexer::Prim;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binder {
    pub name: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub span: Span,
    pub kind: RawKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawKind {
    Var(String),
    Lam(Binder, Box<RawTerm>),
    App(Box<RawTerm>, Box<RawTerm>),
    /// Dependent function type; the arrow sugar `A -> B` binds `_`.
    Pi(Binder, Box<RawTerm>, Box<RawTerm>),
    Sigma(Binder, Box<RawTerm>, Box<RawTerm>),
    Pair(Box<RawTerm>, Box<RawTerm>),
    /// A keyword or operator applied to exactly `prim.arity()` arguments.
    Prim(Prim, Vec<RawTerm>),
    /// Type ascription `(e : A)`.
    Ann(Box<RawTerm>, Box<RawTerm>),
}

impl RawTerm {
    pub fn new(span: Span, kind: RawKind) -> Self {
        RawTerm { span, kind }
    }

    /// Direct subterms.
    pub fn children(&self) -> Vec<&RawTerm> {
        match &self.kind {
            RawKind::Var(_) => vec![],
            RawKind::Lam(_, b) => vec![b],
            RawKind::App(f, a) | RawKind::Pair(f, a) | RawKind::Ann(f, a) => vec![f, a],
            RawKind::Pi(_, a, b) | RawKind::Sigma(_, a, b) => vec![a, b],
            RawKind::Prim(_, args) => args.iter().collect(),
        }
    }

    /// Do all child spans lie inside their parent's span?
    pub fn spans_nest(&self) -> bool {
        self.children()
            .into_iter()
            .all(|c| self.span.contains(&c.span) && c.spans_nest())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub name_span: Span,
    pub declared_type: RawTerm,
    pub body: RawTerm,
    pub span: Span,
}
