//! Core terms back to surface syntax, with minimal parentheses.
//!
//! Binder names come from the hints when they are usable; otherwise fresh
//! names are generated so that the output re-parses to the same core term.

use crate::syntax::lexer::{is_reserved, Prim};
use crate::term::{shift, Context, Name, Term};

const P_TERM: u8 = 0;
const P_BINOP: u8 = 1;
const P_UNARY: u8 = 2;
const P_APP: u8 = 3;
const P_ATOM: u8 = 4;

/// Print `t`, whose free variables are named by `ctx`.
pub fn pretty_print(t: &Term, ctx: &Context) -> String {
    pretty_with_names(t, &ctx.names())
}

/// Print `t` with free variables named by `names` (outermost first).
pub fn pretty_with_names(t: &Term, names: &[Name]) -> String {
    let mut printer = Printer {
        scope: names.iter().map(|n| n.to_string()).collect(),
    };
    printer.go(t, P_TERM)
}

struct Printer {
    scope: Vec<String>,
}

fn usable_hint(hint: &str) -> Option<&str> {
    let mut chars = hint.chars();
    let first = chars.next()?;
    let ok = (first.is_ascii_alphabetic() || first == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && hint != "_"
        && !is_reserved(hint);
    ok.then_some(hint)
}

impl Printer {
    fn paren(s: String, own: u8, wanted: u8) -> String {
        if own < wanted {
            format!("({s})")
        } else {
            s
        }
    }

    /// Pick a name for a binder whose body is `body` (scoped under it).
    fn fresh(&self, hint: &str, body: &Term) -> String {
        let base = usable_hint(hint).unwrap_or("x");
        let mut globals = Vec::new();
        body.globals(&mut globals);
        let taken =
            |n: &str| self.scope.iter().any(|s| s == n) || globals.iter().any(|g| &**g == n);
        if !taken(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !taken(n))
            .expect("unbounded search")
    }

    fn with_binder<R>(&mut self, name: String, f: impl FnOnce(&mut Self) -> R) -> R {
        self.scope.push(name);
        let r = f(self);
        self.scope.pop();
        r
    }

    fn prim(&mut self, p: Prim, args: &[&Term]) -> (String, u8) {
        if args.is_empty() {
            return (p.keyword().to_string(), P_ATOM);
        }
        let mut s = p.keyword().to_string();
        for a in args {
            s.push(' ');
            s.push_str(&self.go(a, P_ATOM));
        }
        (s, P_APP)
    }

    fn binder_type(&mut self, sigma: bool, hint: &Name, dom: &Term, cod: &Term) -> (String, u8) {
        let op = if sigma { "**" } else { "->" };
        if cod.has_free(0) {
            let name = self.fresh(hint, cod);
            let dom = self.go(dom, P_TERM);
            let cod = self.with_binder(name.clone(), |p| p.go(cod, P_TERM));
            (format!("({name} : {dom}) {op} {cod}"), P_TERM)
        } else {
            let dom = self.go(dom, P_BINOP);
            let cod = self.with_binder("_".into(), |p| p.go(cod, P_TERM));
            (format!("{dom} {op} {cod}"), P_TERM)
        }
    }

    fn go(&mut self, t: &Term, prec: u8) -> String {
        use Term::*;
        let (s, own) = match t {
            Var(i) => {
                let len = self.scope.len();
                let s = if *i < len {
                    self.scope[len - 1 - i].clone()
                } else {
                    format!("#{i}")
                };
                (s, P_ATOM)
            }
            Global(n) => (n.to_string(), P_ATOM),
            Lam(..) => {
                let mut names = Vec::new();
                let mut body = t;
                while let Lam(hint, b) = body {
                    let name = if b.has_free(0) {
                        self.fresh(hint, b)
                    } else {
                        "_".to_string()
                    };
                    self.scope.push(name.clone());
                    names.push(name);
                    body = b;
                }
                let body = self.go(body, P_TERM);
                for _ in &names {
                    self.scope.pop();
                }
                (format!("\\{}. {}", names.join(" "), body), P_TERM)
            }
            App(f, a) => {
                let f = self.go(f, P_APP);
                let a = self.go(a, P_ATOM);
                (format!("{f} {a}"), P_APP)
            }
            Pi(h, a, b) => self.binder_type(false, h, a, b),
            Sigma(h, a, b) => self.binder_type(true, h, a, b),
            Pair(a, b) => {
                let a = self.go(a, P_TERM);
                let b = self.go(b, P_TERM);
                (format!("<{a}, {b}>"), P_ATOM)
            }
            ProjL(p) => self.prim(Prim::Fst, &[p]),
            ProjR(p) => self.prim(Prim::Snd, &[p]),
            Inl(a) => self.prim(Prim::Inl, &[a]),
            Inr(a) => self.prim(Prim::Inr, &[a]),
            SumTy(a, b) => self.prim(Prim::Sum, &[a, b]),
            SumCase {
                motive,
                on_inl,
                on_inr,
                scrut,
            } => self.prim(Prim::Case, &[motive, on_inl, on_inr, scrut]),
            NatTy => self.prim(Prim::Nat, &[]),
            NatZero => self.prim(Prim::Zero, &[]),
            NatSucc(n) => self.prim(Prim::Succ, &[n]),
            NatRec {
                motive,
                on_zero,
                on_succ,
                scrut,
            } => self.prim(Prim::NatRec, &[motive, on_zero, on_succ, scrut]),
            UnitTy => self.prim(Prim::Unit, &[]),
            Star => self.prim(Prim::Tt, &[]),
            VoidTy => self.prim(Prim::Void, &[]),
            VoidElim { motive, scrut } => self.prim(Prim::Abort, &[motive, scrut]),
            Univ(0) => self.prim(Prim::U0, &[]),
            Univ(_) => self.prim(Prim::U1, &[]),
            IdTy(a, x, y) => self.prim(Prim::Id, &[a, x, y]),
            Refl(a, x) => self.prim(Prim::Refl, &[a, x]),
            J {
                motive,
                on_refl,
                lhs,
                rhs,
                path,
            } => self.prim(Prim::J, &[motive, on_refl, lhs, rhs, path]),
            PathInv(p) => {
                let p = self.go(p, P_UNARY);
                (format!("! {p}"), P_UNARY)
            }
            PathConcat(p, q) => {
                let p = self.go(p, P_BINOP);
                let q = self.go(q, P_UNARY);
                (format!("{p} * {q}"), P_BINOP)
            }
            Ap { cod, fun, path } => match &**fun {
                // ascribe bodies the checker cannot synthesize
                Lam(hint, body) if matches!(**body, Lam(..) | Pair(..) | Inl(_) | Inr(_)) => {
                    let name = if body.has_free(0) {
                        self.fresh(hint, body)
                    } else {
                        "_".to_string()
                    };
                    self.scope.push(name.clone());
                    let b = self.go(body, P_TERM);
                    let c = self.go(&shift(cod, 0, 1), P_TERM);
                    self.scope.pop();
                    let p = self.go(path, P_ATOM);
                    (format!("ap (\\{name}. ({b} : {c})) {p}"), P_APP)
                }
                _ => self.prim(Prim::Ap, &[fun, path]),
            },
            Coe(p, x) => self.prim(Prim::Coe, &[p, x]),
            S1Ty => self.prim(Prim::S1, &[]),
            Base => self.prim(Prim::Base, &[]),
            Loop => self.prim(Prim::Loop, &[]),
            S1Rec {
                motive,
                on_base,
                on_loop,
                ..
            } => self.prim(Prim::S1Rec, &[motive, on_base, on_loop]),
            S1Ind {
                motive,
                on_base,
                on_loop,
            } => self.prim(Prim::S1Ind, &[motive, on_base, on_loop]),
            Ua(e) => self.prim(Prim::Ua, &[e]),
        };
        Self::paren(s, own, prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::build::*;

    fn show(t: &Term) -> String {
        pretty_print(t, &Context::new())
    }

    #[test]
    fn path_word() {
        let t = Term::PathConcat(Term::Loop.rc(), inv(Term::Loop.rc()));
        assert_eq!(show(&t), "loop * ! loop");
    }

    #[test]
    fn numerals() {
        let t = Term::NatSucc(succ(Term::NatZero.rc()));
        assert_eq!(show(&t), "succ (succ zero)");
    }

    #[test]
    fn hint_regeneration() {
        assert_eq!(show(&Term::Lam("".into(), var(0))), "\\x. x");
        assert_eq!(show(&Term::Lam("y".into(), var(0))), "\\y. y");
        // the inner binder must not capture the outer one
        let t = Term::Lam("x".into(), lam("x", app(var(1), var(0))));
        assert_eq!(show(&t), "\\x x1. x x1");
    }

    #[test]
    fn unused_binders_print_as_underscore_or_arrows() {
        assert_eq!(
            show(&Term::Lam("x".into(), Term::NatZero.rc())),
            "\\_. zero"
        );
        let t = Term::Pi("x".into(), Term::NatTy.rc(), Term::NatTy.rc());
        assert_eq!(show(&t), "Nat -> Nat");
        let t = Term::Pi(
            "x".into(),
            Term::NatTy.rc(),
            id(Term::NatTy.rc(), var(0), var(0)),
        );
        assert_eq!(show(&t), "(x : Nat) -> Id Nat x x");
    }

    #[test]
    fn right_nested_concat_is_parenthesized() {
        let l = Term::Loop.rc();
        let t = Term::PathConcat(l.clone(), concat(l.clone(), l));
        assert_eq!(show(&t), "loop * (loop * loop)");
    }

    #[test]
    fn arrow_domain_that_is_an_arrow() {
        let f = pi("_", Term::NatTy.rc(), Term::NatTy.rc());
        let t = Term::Pi("_".into(), f, Term::NatTy.rc());
        assert_eq!(show(&t), "(Nat -> Nat) -> Nat");
    }

    #[test]
    fn binder_avoids_referenced_global() {
        let t = Term::Lam("encode".into(), app(global("encode"), var(0)));
        assert_eq!(show(&t), "\\encode1. encode encode1");
    }

    #[test]
    fn ap_of_an_injection_is_ascribed() {
        let t = Term::Ap {
            cod: Term::SumTy(Term::NatTy.rc(), Term::UnitTy.rc()).rc(),
            fun: lam("u", Term::Inl(var(0)).rc()),
            path: refl(Term::NatTy.rc(), Term::NatZero.rc()),
        };
        assert_eq!(show(&t), "ap (\\u. (inl u : Sum Nat Unit)) (refl Nat zero)");
        let t = Term::Ap {
            cod: Term::NatTy.rc(),
            fun: lam("u", succ(var(0))),
            path: refl(Term::NatTy.rc(), Term::NatZero.rc()),
        };
        assert_eq!(show(&t), "ap (\\u. succ u) (refl Nat zero)");
    }
}
