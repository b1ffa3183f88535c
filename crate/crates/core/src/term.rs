//! Core syntax of the kernel.
//!
//! Terms use de Bruijn indices; binders keep a name hint that is only used
//! for printing. Every eliminator carries its motive explicitly, so the
//! checker never has to guess one and the evaluator never needs types.

use std::fmt;
use std::sync::Arc;

/// A name hint or global name.
pub type Name = Arc<str>;

/// Universe level. Only `0` and `1` exist.
pub type Level = u8;

pub type RcTerm = Arc<Term>;

#[derive(Clone, Debug)]
pub enum Term {
    Var(usize),
    /// Reference to a checked top-level definition or kernel postulate.
    Global(Name),

    Lam(Name, RcTerm),
    App(RcTerm, RcTerm),
    Pi(Name, RcTerm, RcTerm),

    Pair(RcTerm, RcTerm),
    ProjL(RcTerm),
    ProjR(RcTerm),
    Sigma(Name, RcTerm, RcTerm),

    Inl(RcTerm),
    Inr(RcTerm),
    SumTy(RcTerm, RcTerm),
    SumCase {
        motive: RcTerm,
        on_inl: RcTerm,
        on_inr: RcTerm,
        scrut: RcTerm,
    },

    NatTy,
    NatZero,
    NatSucc(RcTerm),
    NatRec {
        motive: RcTerm,
        on_zero: RcTerm,
        on_succ: RcTerm,
        scrut: RcTerm,
    },

    UnitTy,
    Star,
    VoidTy,
    VoidElim {
        motive: RcTerm,
        scrut: RcTerm,
    },

    Univ(Level),

    IdTy(RcTerm, RcTerm, RcTerm),
    Refl(RcTerm, RcTerm),
    J {
        motive: RcTerm,
        on_refl: RcTerm,
        lhs: RcTerm,
        rhs: RcTerm,
        path: RcTerm,
    },
    PathInv(RcTerm),
    PathConcat(RcTerm, RcTerm),
    /// `ap fun path`; `cod` is the (non-dependent) codomain of `fun`.
    Ap {
        cod: RcTerm,
        fun: RcTerm,
        path: RcTerm,
    },
    Coe(RcTerm, RcTerm),

    S1Ty,
    Base,
    Loop,
    S1Rec {
        level: Level,
        motive: RcTerm,
        on_base: RcTerm,
        on_loop: RcTerm,
    },
    S1Ind {
        motive: RcTerm,
        on_base: RcTerm,
        on_loop: RcTerm,
    },

    Ua(RcTerm),
}

/// Typing context: a telescope of name hints and core types.
///
/// Entries are stored outermost first; `lookup(i)` resolves de Bruijn index
/// `i`, whose type is scoped over the entries outside it.
#[derive(Clone, Debug, Default)]
pub struct Context {
    entries: Vec<(Name, RcTerm)>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, name: impl Into<Name>, ty: RcTerm) {
        self.entries.push((name.into(), ty));
    }

    pub fn extended(&self, name: impl Into<Name>, ty: RcTerm) -> Self {
        let mut ctx = self.clone();
        ctx.push(name, ty);
        ctx
    }

    /// Name hint and type of de Bruijn index `index`.
    pub fn lookup(&self, index: usize) -> Option<&(Name, RcTerm)> {
        let len = self.entries.len();
        if index < len {
            self.entries.get(len - 1 - index)
        } else {
            None
        }
    }

    /// Entries outermost first.
    pub fn entries(&self) -> &[(Name, RcTerm)] {
        &self.entries
    }

    pub fn names(&self) -> Vec<Name> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }
}

impl Term {
    pub fn rc(self) -> RcTerm {
        Arc::new(self)
    }

    /// Immediate subterms, each paired with the number of binders the
    /// subterm sits under relative to `self`.
    pub fn children(&self) -> Vec<(&RcTerm, usize)> {
        use Term::*;
        match self {
            Var(_) | Global(_) | NatTy | NatZero | UnitTy | Star | VoidTy | Univ(_) | S1Ty
            | Base | Loop => vec![],
            Lam(_, b) => vec![(b, 1)],
            Pi(_, a, b) | Sigma(_, a, b) => vec![(a, 0), (b, 1)],
            App(a, b) | Pair(a, b) | SumTy(a, b) | Refl(a, b) | PathConcat(a, b) | Coe(a, b) => {
                vec![(a, 0), (b, 0)]
            }
            ProjL(a) | ProjR(a) | Inl(a) | Inr(a) | NatSucc(a) | PathInv(a) | Ua(a) => {
                vec![(a, 0)]
            }
            SumCase {
                motive,
                on_inl,
                on_inr,
                scrut,
            } => vec![(motive, 0), (on_inl, 0), (on_inr, 0), (scrut, 0)],
            NatRec {
                motive,
                on_zero,
                on_succ,
                scrut,
            } => vec![(motive, 0), (on_zero, 0), (on_succ, 0), (scrut, 0)],
            VoidElim { motive, scrut } => vec![(motive, 0), (scrut, 0)],
            IdTy(a, x, y) => vec![(a, 0), (x, 0), (y, 0)],
            J {
                motive,
                on_refl,
                lhs,
                rhs,
                path,
            } => vec![(motive, 0), (on_refl, 0), (lhs, 0), (rhs, 0), (path, 0)],
            Ap { cod, fun, path } => vec![(cod, 0), (fun, 0), (path, 0)],
            S1Rec {
                motive,
                on_base,
                on_loop,
                ..
            }
            | S1Ind {
                motive,
                on_base,
                on_loop,
            } => vec![(motive, 0), (on_base, 0), (on_loop, 0)],
        }
    }

    /// Rebuild `self` with replacement children, in the order returned by
    /// [`Term::children`].
    pub fn with_children(&self, new: Vec<RcTerm>) -> Term {
        use Term::*;
        let mut it = new.into_iter();
        let mut next = || it.next().expect("with_children: arity mismatch");
        match self {
            Var(_) | Global(_) | NatTy | NatZero | UnitTy | Star | VoidTy | Univ(_) | S1Ty
            | Base | Loop => self.clone(),
            Lam(n, _) => Lam(n.clone(), next()),
            Pi(n, _, _) => Pi(n.clone(), next(), next()),
            Sigma(n, _, _) => Sigma(n.clone(), next(), next()),
            App(..) => App(next(), next()),
            Pair(..) => Pair(next(), next()),
            SumTy(..) => SumTy(next(), next()),
            Refl(..) => Refl(next(), next()),
            PathConcat(..) => PathConcat(next(), next()),
            Coe(..) => Coe(next(), next()),
            ProjL(_) => ProjL(next()),
            ProjR(_) => ProjR(next()),
            Inl(_) => Inl(next()),
            Inr(_) => Inr(next()),
            NatSucc(_) => NatSucc(next()),
            PathInv(_) => PathInv(next()),
            Ua(_) => Ua(next()),
            SumCase { .. } => SumCase {
                motive: next(),
                on_inl: next(),
                on_inr: next(),
                scrut: next(),
            },
            NatRec { .. } => NatRec {
                motive: next(),
                on_zero: next(),
                on_succ: next(),
                scrut: next(),
            },
            VoidElim { .. } => VoidElim {
                motive: next(),
                scrut: next(),
            },
            IdTy(..) => IdTy(next(), next(), next()),
            J { .. } => J {
                motive: next(),
                on_refl: next(),
                lhs: next(),
                rhs: next(),
                path: next(),
            },
            Ap { .. } => Ap {
                cod: next(),
                fun: next(),
                path: next(),
            },
            S1Rec { level, .. } => S1Rec {
                level: *level,
                motive: next(),
                on_base: next(),
                on_loop: next(),
            },
            S1Ind { .. } => S1Ind {
                motive: next(),
                on_base: next(),
                on_loop: next(),
            },
        }
    }

    /// Rebuild the term bottom-up, handing each variable occurrence to `var`
    /// together with the number of binders crossed so far.
    fn map_vars(&self, depth: usize, var: &mut impl FnMut(usize, usize) -> Term) -> Term {
        match self {
            Term::Var(i) => var(*i, depth),
            _ => {
                let children = self.children();
                if children.is_empty() {
                    return self.clone();
                }
                let new = children
                    .into_iter()
                    .map(|(c, binders)| Arc::new(c.map_vars(depth + binders, var)))
                    .collect();
                self.with_children(new)
            }
        }
    }

    /// Does de Bruijn index `index` occur free in `self`?
    pub fn has_free(&self, index: usize) -> bool {
        match self {
            Term::Var(i) => *i == index,
            _ => self
                .children()
                .into_iter()
                .any(|(c, binders)| c.has_free(index + binders)),
        }
    }

    /// Smallest number of enclosing binders this term needs: one more than
    /// its largest free index, or zero when closed.
    pub fn free_bound(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            _ => self
                .children()
                .into_iter()
                .map(|(c, binders)| c.free_bound().saturating_sub(binders))
                .max()
                .unwrap_or(0),
        }
    }

    /// Names of globals referenced anywhere in the term.
    pub fn globals(&self, out: &mut Vec<Name>) {
        if let Term::Global(n) = self {
            if !out.contains(n) {
                out.push(n.clone());
            }
        }
        for (c, _) in self.children() {
            c.globals(out);
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(|(c, _)| c.size())
            .sum::<usize>()
    }
}

/// Displace every free index `>= cutoff` by `amount`.
///
/// # Panics
///
/// Panics if a free index would become negative; callers guarantee the
/// result stays well scoped.
pub fn shift(t: &Term, cutoff: usize, amount: isize) -> Term {
    try_shift(t, cutoff, amount).unwrap_or_else(|| {
        panic!("internal invariant violation: shifting by {amount} at cutoff {cutoff} underflows a free index")
    })
}

/// Like [`shift`], but returns `None` instead of panicking on underflow.
pub fn try_shift(t: &Term, cutoff: usize, amount: isize) -> Option<Term> {
    let mut ok = true;
    let out = t.map_vars(0, &mut |i, depth| {
        if i >= cutoff + depth {
            match i.checked_add_signed(amount) {
                Some(j) if j >= cutoff + depth => Term::Var(j),
                _ => {
                    ok = false;
                    Term::Var(i)
                }
            }
        } else {
            Term::Var(i)
        }
    });
    ok.then_some(out)
}

/// Substitute `replacement` for index `index`, removing that binder: free
/// indices above `index` move down by one. `replacement` is scoped in the
/// context that remains after the removal.
pub fn subst(t: &Term, index: usize, replacement: &Term) -> Term {
    t.map_vars(0, &mut |i, depth| {
        if i < depth + index {
            Term::Var(i)
        } else if i == depth + index {
            shift(replacement, 0, depth as isize)
        } else {
            Term::Var(i - 1)
        }
    })
}

/// α-equivalence: identical trees, ignoring name hints.
pub fn structural_eq(a: &Term, b: &Term) -> bool {
    use Term::*;
    if std::mem::discriminant(a) != std::mem::discriminant(b) {
        return false;
    }
    let leaves_agree = match (a, b) {
        (Var(i), Var(j)) => i == j,
        (Global(x), Global(y)) => x == y,
        (Univ(i), Univ(j)) => i == j,
        (S1Rec { level: i, .. }, S1Rec { level: j, .. }) => i == j,
        _ => true,
    };
    leaves_agree
        && a.children()
            .into_iter()
            .zip(b.children())
            .all(|((x, _), (y, _))| Arc::ptr_eq(x, y) || structural_eq(x, y))
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        structural_eq(self, other)
    }
}

impl Eq for Term {}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::pretty::pretty_print(self, &Context::new()))
    }
}

/// Shorthands used by the checker and tests when building core terms.
pub mod build {
    use super::*;

    pub fn var(i: usize) -> RcTerm {
        Term::Var(i).rc()
    }
    pub fn global(n: &str) -> RcTerm {
        Term::Global(n.into()).rc()
    }
    pub fn lam(hint: &str, body: RcTerm) -> RcTerm {
        Term::Lam(hint.into(), body).rc()
    }
    pub fn app(f: RcTerm, a: RcTerm) -> RcTerm {
        Term::App(f, a).rc()
    }
    pub fn apps(f: RcTerm, args: impl IntoIterator<Item = RcTerm>) -> RcTerm {
        args.into_iter().fold(f, app)
    }
    pub fn pi(hint: &str, a: RcTerm, b: RcTerm) -> RcTerm {
        Term::Pi(hint.into(), a, b).rc()
    }
    pub fn sigma(hint: &str, a: RcTerm, b: RcTerm) -> RcTerm {
        Term::Sigma(hint.into(), a, b).rc()
    }
    pub fn id(a: RcTerm, x: RcTerm, y: RcTerm) -> RcTerm {
        Term::IdTy(a, x, y).rc()
    }
    pub fn refl(a: RcTerm, x: RcTerm) -> RcTerm {
        Term::Refl(a, x).rc()
    }
    pub fn inv(p: RcTerm) -> RcTerm {
        Term::PathInv(p).rc()
    }
    pub fn concat(p: RcTerm, q: RcTerm) -> RcTerm {
        Term::PathConcat(p, q).rc()
    }
    pub fn ap(cod: RcTerm, fun: RcTerm, path: RcTerm) -> RcTerm {
        Term::Ap { cod, fun, path }.rc()
    }
    pub fn coe(p: RcTerm, t: RcTerm) -> RcTerm {
        Term::Coe(p, t).rc()
    }
    pub fn inl(t: RcTerm) -> RcTerm {
        Term::Inl(t).rc()
    }
    pub fn inr(t: RcTerm) -> RcTerm {
        Term::Inr(t).rc()
    }
    pub fn succ(t: RcTerm) -> RcTerm {
        Term::NatSucc(t).rc()
    }
    pub fn shifted(t: &RcTerm, amount: isize) -> RcTerm {
        shift(t, 0, amount).rc()
    }
}
