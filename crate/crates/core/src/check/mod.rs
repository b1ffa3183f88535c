//! Bidirectional elaboration of raw terms into core terms.
//!
//! Types are kept as values during checking; conversion is decided by the
//! evaluator in standard mode. Every eliminator takes an explicit motive,
//! and a motive is checked by walking it against the telescope of the
//! eliminated type, so its universe level is known without unification.

mod postulates;

use std::sync::Arc;

use crate::diagnostic::{Diagnostic, DiagnosticKind, Span};
use crate::env::{Environment, GlobalEntry};
use crate::normalize::{Closure, Elim, Env, EvalConfig, EvalError, Evaluator, Head, Value};
use crate::syntax::lexer::Prim;
use crate::syntax::pretty::pretty_with_names;
use crate::syntax::raw::{Decl, RawKind, RawTerm};
use crate::term::build::*;
use crate::term::{try_shift, Context, Level, Name, RcTerm, Term};

pub use postulates::{kernel_environment, POSTULATES};

/// Checker switches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// Allow motives that land in `U1`, i.e. eliminators that compute types.
    pub large_elimination: bool,
    pub step_budget: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            large_elimination: true,
            step_budget: crate::normalize::DEFAULT_STEP_BUDGET,
        }
    }
}

impl CheckConfig {
    fn eval_config(&self) -> EvalConfig {
        EvalConfig::default().with_budget(self.step_budget)
    }
}

/// Type errors are diagnostics; mismatches carry both sides in normal form.
pub type TypeError = Diagnostic;

type TcResult<T> = Result<T, Diagnostic>;

/// Local variables in scope: names, types as values, and the environment
/// binding each to a fresh neutral.
#[derive(Clone, Default)]
struct Scope {
    names: Vec<Name>,
    types: Vec<Value>,
    env: Env,
}

impl Scope {
    fn depth(&self) -> usize {
        self.names.len()
    }

    fn bind(&self, name: &str, ty: Value) -> Scope {
        let mut names = self.names.clone();
        let mut types = self.types.clone();
        names.push(name.into());
        types.push(ty);
        Scope {
            names,
            types,
            env: self.env.push(Value::var(self.depth())),
        }
    }

    fn next_var(&self) -> Value {
        Value::var(self.depth())
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        if name == "_" {
            return None;
        }
        self.names.iter().rposition(|n| &**n == name)
    }
}

struct Elab<'e> {
    globals: &'e Environment,
    ev: Evaluator<'e>,
    cfg: CheckConfig,
}

fn budget_error(span: Span) -> impl Fn(EvalError) -> Diagnostic {
    move |e| Diagnostic::error(DiagnosticKind::Budget, span, e.to_string())
}

impl<'e> Elab<'e> {
    fn new(globals: &'e Environment, cfg: CheckConfig) -> Self {
        Elab {
            globals,
            ev: Evaluator::new(globals, cfg.eval_config()),
            cfg,
        }
    }

    fn eval(&self, sc: &Scope, t: &Term, span: Span) -> TcResult<Value> {
        self.ev.eval(&sc.env, t).map_err(budget_error(span))
    }

    fn quote(&self, sc: &Scope, v: &Value, span: Span) -> TcResult<Term> {
        self.ev.readback(sc.depth(), v).map_err(budget_error(span))
    }

    fn apply(&self, f: Value, a: Value, span: Span) -> TcResult<Value> {
        self.ev.apply(f, a).map_err(budget_error(span))
    }

    fn inst(&self, c: &Closure, a: Value, span: Span) -> TcResult<Value> {
        self.ev.apply_closure(c, a).map_err(budget_error(span))
    }

    fn conv(&self, sc: &Scope, a: &Value, b: &Value, span: Span) -> TcResult<bool> {
        self.ev.conv(sc.depth(), a, b).map_err(budget_error(span))
    }

    fn show(&self, sc: &Scope, v: &Value) -> String {
        match self.ev.readback(sc.depth(), v) {
            Ok(t) => pretty_with_names(&t, &sc.names),
            Err(_) => "<too large to normalize>".into(),
        }
    }

    fn mismatch(&self, sc: &Scope, span: Span, expected: &Value, actual: &Value) -> Diagnostic {
        let message = match (expected, actual) {
            (Value::Univ(_), Value::Univ(_)) => "universe mismatch",
            _ => "type mismatch",
        };
        Diagnostic::type_error(span, message)
            .with_expected_actual(self.show(sc, expected), self.show(sc, actual))
    }

    fn expect_conv(
        &self,
        sc: &Scope,
        span: Span,
        expected: &Value,
        actual: &Value,
    ) -> TcResult<()> {
        if self.conv(sc, expected, actual, span)? {
            Ok(())
        } else {
            Err(self.mismatch(sc, span, expected, actual))
        }
    }

    /// Quote a closure's body under a fresh variable and require that the
    /// variable does not occur; returns the body scoped in `sc`.
    fn non_dependent(&self, sc: &Scope, c: &Closure, span: Span) -> TcResult<Option<Term>> {
        let body = self.inst(c, sc.next_var(), span)?;
        let t = self
            .ev
            .readback(sc.depth() + 1, &body)
            .map_err(budget_error(span))?;
        Ok(try_shift(&t, 0, -1))
    }

    fn large_elim_guard(&self, level: Level, span: Span) -> TcResult<()> {
        if level > 0 && !self.cfg.large_elimination {
            Err(Diagnostic::type_error(
                span,
                "large elimination is disabled: this motive lands in U1",
            ))
        } else {
            Ok(())
        }
    }

    // ---- types and universe levels ----

    /// Elaborate a type, returning its universe level.
    fn check_type(&self, sc: &Scope, r: &RawTerm) -> TcResult<(Term, Level)> {
        if let RawKind::Prim(Prim::U1, _) = r.kind {
            return Err(Diagnostic::type_error(
                r.span,
                "U1 has no type; it may only be used as the declared type of a definition",
            ));
        }
        let (t, ty) = self.infer(sc, r)?;
        match ty {
            Value::Univ(l) => Ok((t, l)),
            other => Err(Diagnostic::type_error(
                r.span,
                format!(
                    "expected a type, found a term of type {}",
                    self.show(sc, &other)
                ),
            )),
        }
    }

    /// Universe level of an already checked type value.
    fn level_of(&self, sc: &Scope, ty: &Value, span: Span) -> TcResult<Option<Level>> {
        Ok(match ty {
            Value::Univ(0) => Some(1),
            Value::Univ(_) => None,
            Value::NatTy | Value::UnitTy | Value::VoidTy | Value::S1Ty => Some(0),
            Value::Pi(a, c) | Value::Sigma(a, c) => {
                let la = self.level_of(sc, a, span)?;
                let inner = sc.bind(&c.hint, (**a).clone());
                let b = self.inst(c, sc.next_var(), span)?;
                let lb = self.level_of(&inner, &b, span)?;
                la.zip(lb).map(|(x, y)| x.max(y))
            }
            Value::SumTy(a, b) => {
                let la = self.level_of(sc, a, span)?;
                let lb = self.level_of(sc, b, span)?;
                la.zip(lb).map(|(x, y)| x.max(y))
            }
            Value::IdTy(a, _, _) => self.level_of(sc, a, span)?,
            Value::Neutral(n) => match self.type_of_neutral(sc, n, span)? {
                Some(Value::Univ(l)) => Some(l),
                _ => None,
            },
            _ => None,
        })
    }

    /// Type of a neutral whose head is a variable or postulate. Only used
    /// to find universe levels, so stuck non-variable heads report `None`.
    fn type_of_neutral(
        &self,
        sc: &Scope,
        n: &crate::normalize::Neutral,
        span: Span,
    ) -> TcResult<Option<Value>> {
        let mut cur = match &n.head {
            Head::Var(lvl) => sc.types[*lvl].clone(),
            Head::Postulate(name) => match self.globals.lookup(name) {
                Some(e) => self.eval(&Scope::default(), &e.ty, span)?,
                None => return Ok(None),
            },
            Head::Stuck(_) => return Ok(None),
        };
        let mut head = Value::Neutral(Arc::new(crate::normalize::Neutral {
            head: n.head.clone(),
            spine: vec![],
        }));
        for elim in &n.spine {
            cur = match (elim, &cur) {
                (Elim::App(a), Value::Pi(_, c)) => self.inst(c, (**a).clone(), span)?,
                (Elim::ProjL, Value::Sigma(a, _)) => (**a).clone(),
                (Elim::ProjR, Value::Sigma(_, c)) => {
                    let first = self.ev.proj_l(head.clone()).map_err(budget_error(span))?;
                    self.inst(c, first, span)?
                }
                (Elim::SumCase { motive, .. }, _)
                | (Elim::NatRec { motive, .. }, _)
                | (Elim::S1Ind { motive, .. }, _) => {
                    self.apply((**motive).clone(), head.clone(), span)?
                }
                (Elim::S1Rec { motive, .. }, _) | (Elim::VoidElim { motive }, _) => {
                    (**motive).clone()
                }
                (
                    Elim::J {
                        motive, lhs, rhs, ..
                    },
                    _,
                ) => self
                    .ev
                    .apply_all(
                        (**motive).clone(),
                        [(**lhs).clone(), (**rhs).clone(), head.clone()],
                    )
                    .map_err(budget_error(span))?,
                _ => return Ok(None),
            };
            head = head.stuck(elim.clone());
        }
        Ok(Some(cur))
    }

    /// Check a motive against a telescope of `arity` binders, given as a
    /// Π-chain value whose final codomain is ignored. Returns the motive
    /// and the universe level it lands in.
    fn check_family(
        &self,
        sc: &Scope,
        r: &RawTerm,
        tele: Value,
        arity: usize,
    ) -> TcResult<(Term, Level)> {
        if arity == 0 {
            if let RawKind::Lam(b, _) = &r.kind {
                return Err(Diagnostic::type_error(
                    b.span,
                    format!(
                        "motive binds `{}` but this eliminator provides no more variables",
                        b.name
                    ),
                ));
            }
            return self.check_type(sc, r);
        }
        let Value::Pi(dom, c) = &tele else {
            unreachable!("telescopes are Π-chains")
        };
        if let RawKind::Lam(b, body) = &r.kind {
            let inner = sc.bind(&b.name, (**dom).clone());
            let rest = self.inst(c, sc.next_var(), r.span)?;
            let (t, l) = self.check_family(&inner, body, rest, arity - 1)?;
            return Ok((Term::Lam(b.name.as_str().into(), t.rc()), l));
        }
        let (t, ty) = self.infer(sc, r)?;
        let mut walk_sc = sc.clone();
        let mut ty = ty;
        let mut tele = tele;
        for _ in 0..arity {
            let (Value::Pi(d1, c1), Value::Pi(d2, c2)) = (&ty, &tele) else {
                return Err(self.motive_shape(sc, r, &ty));
            };
            if !self.conv(&walk_sc, d1, d2, r.span)? {
                return Err(self.motive_shape(sc, r, &ty));
            }
            let x = walk_sc.next_var();
            let next_ty = self.inst(c1, x.clone(), r.span)?;
            let next_tele = self.inst(c2, x, r.span)?;
            walk_sc = walk_sc.bind(&c1.hint, (**d1).clone());
            ty = next_ty;
            tele = next_tele;
        }
        match ty {
            Value::Univ(l) => Ok((t, l)),
            _ => Err(self.motive_shape(sc, r, &self.infer(sc, r)?.1)),
        }
    }

    fn motive_shape(&self, sc: &Scope, r: &RawTerm, actual: &Value) -> Diagnostic {
        Diagnostic::type_error(r.span, "motive has the wrong shape for this eliminator")
            .with_expected_actual(
                "a type family over the eliminated type".into(),
                self.show(sc, actual),
            )
    }

    /// `Equiv A B` as a core term, with `a` and `b` scoped in the current context.
    fn equiv_term(a: &RcTerm, b: &RcTerm) -> RcTerm {
        let (a0, b1, a2, b3) = (a.clone(), shifted(b, 1), shifted(a, 2), shifted(b, 3));
        sigma(
            "f",
            pi("_", a0, shifted(b, 1)),
            sigma(
                "g",
                pi("_", b1, a2.clone()),
                sigma(
                    "_",
                    pi(
                        "x",
                        a2,
                        id(shifted(a, 3), app(var(1), app(var(2), var(0))), var(0)),
                    ),
                    pi(
                        "y",
                        b3,
                        id(shifted(b, 4), app(var(3), app(var(2), var(0))), var(0)),
                    ),
                ),
            ),
        )
    }

    // ---- inference ----

    fn infer(&self, sc: &Scope, r: &RawTerm) -> TcResult<(Term, Value)> {
        stacker::maybe_grow(64 * 1024, 1024 * 1024, || self.infer_inner(sc, r))
    }

    fn infer_inner(&self, sc: &Scope, r: &RawTerm) -> TcResult<(Term, Value)> {
        let span = r.span;
        match &r.kind {
            RawKind::Var(name) => self.infer_var(sc, name, span),
            RawKind::Lam(..) => Err(Diagnostic::type_error(
                span,
                "annotation required: cannot infer the type of a lambda",
            )),
            RawKind::Ann(e, ty) => {
                let (tt, _) = self.check_type(sc, ty)?;
                let tyv = self.eval(sc, &tt, ty.span)?;
                let et = self.check(sc, e, &tyv)?;
                Ok((et, tyv))
            }
            RawKind::App(f, a) if matches!(f.kind, RawKind::Lam(..)) => {
                // a redex: the argument's type annotates the binder
                let RawKind::Lam(b, body) = &f.kind else {
                    unreachable!()
                };
                let (at, aty) = self.infer(sc, a)?;
                let inner = sc.bind(&b.name, aty);
                let (bt, bty) = self.infer(&inner, body)?;
                let bq = self.quote(&inner, &bty, body.span)?;
                let av = self.eval(sc, &at, a.span)?;
                let ty = self
                    .ev
                    .eval(&sc.env.push(av), &bq)
                    .map_err(budget_error(span))?;
                let ft = Term::Lam(b.name.as_str().into(), bt.rc());
                Ok((Term::App(ft.rc(), at.rc()), ty))
            }
            RawKind::App(f, a) => {
                let (ft, fty) = self.infer(sc, f)?;
                let Value::Pi(dom, c) = &fty else {
                    return Err(Diagnostic::type_error(
                        f.span,
                        format!(
                            "expected a function, found a term of type {}",
                            self.show(sc, &fty)
                        ),
                    ));
                };
                let at = self.check(sc, a, dom)?;
                let av = self.eval(sc, &at, a.span)?;
                let ty = self.inst(c, av, span)?;
                Ok((Term::App(ft.rc(), at.rc()), ty))
            }
            RawKind::Pi(b, a, body) | RawKind::Sigma(b, a, body) => {
                let (at, la) = self.check_type(sc, a)?;
                let av = self.eval(sc, &at, a.span)?;
                let inner = sc.bind(&b.name, av);
                let (bt, lb) = self.check_type(&inner, body)?;
                let name: Name = b.name.as_str().into();
                let t = if matches!(r.kind, RawKind::Pi(..)) {
                    Term::Pi(name, at.rc(), bt.rc())
                } else {
                    Term::Sigma(name, at.rc(), bt.rc())
                };
                Ok((t, Value::Univ(la.max(lb))))
            }
            RawKind::Pair(a, b) => {
                let (at, aty) = self.infer(sc, a)?;
                let (bt, bty) = self.infer(sc, b)?;
                let bq = self.quote(sc, &bty, b.span)?;
                let c = Closure {
                    hint: "_".into(),
                    env: sc.env.clone(),
                    body: shifted(&bq.rc(), 1),
                };
                Ok((Term::Pair(at.rc(), bt.rc()), Value::Sigma(aty.rc(), c)))
            }
            RawKind::Prim(p, args) => self.infer_prim(sc, *p, args, span),
        }
    }

    fn infer_var(&self, sc: &Scope, name: &str, span: Span) -> TcResult<(Term, Value)> {
        if let Some(lvl) = sc.lookup(name) {
            return Ok((Term::Var(sc.depth() - 1 - lvl), sc.types[lvl].clone()));
        }
        if let Some(entry) = self.globals.lookup(name) {
            let ty = self.eval(&Scope::default(), &entry.ty, span)?;
            return Ok((Term::Global(entry.name.clone()), ty));
        }
        if self.globals.is_poisoned(name) {
            return Err(Diagnostic::type_error(
                span,
                format!("`{name}` refers to a definition that failed to check"),
            ));
        }
        Err(Diagnostic::type_error(
            span,
            format!("unbound identifier `{name}`"),
        ))
    }

    /// Infer a path, returning its type's components `(A, x, y)`.
    fn infer_path(&self, sc: &Scope, r: &RawTerm) -> TcResult<(Term, Value, Value, Value)> {
        let (t, ty) = self.infer(sc, r)?;
        match ty {
            Value::IdTy(a, x, y) => Ok((t, (*a).clone(), (*x).clone(), (*y).clone())),
            other => Err(Diagnostic::type_error(
                r.span,
                format!(
                    "expected a path, found a term of type {}",
                    self.show(sc, &other)
                ),
            )),
        }
    }

    fn infer_prim(
        &self,
        sc: &Scope,
        p: Prim,
        args: &[RawTerm],
        span: Span,
    ) -> TcResult<(Term, Value)> {
        use Prim as P;
        let univ0 = Value::Univ(0);
        Ok(match (p, args) {
            (P::U0, []) => (Term::Univ(0), Value::Univ(1)),
            (P::U1, []) => {
                return Err(Diagnostic::type_error(
                    span,
                    "U1 has no type; it may only be used as the declared type of a definition",
                ))
            }
            (P::Nat, []) => (Term::NatTy, univ0),
            (P::Unit, []) => (Term::UnitTy, univ0),
            (P::Void, []) => (Term::VoidTy, univ0),
            (P::S1, []) => (Term::S1Ty, univ0),
            (P::Zero, []) => (Term::NatZero, Value::NatTy),
            (P::Tt, []) => (Term::Star, Value::UnitTy),
            (P::Base, []) => (Term::Base, Value::S1Ty),
            (P::Loop, []) => (
                Term::Loop,
                Value::IdTy(Value::S1Ty.rc(), Value::Base.rc(), Value::Base.rc()),
            ),
            (P::Succ, [n]) => {
                let nt = self.check(sc, n, &Value::NatTy)?;
                (Term::NatSucc(nt.rc()), Value::NatTy)
            }
            (P::Inl, [_]) | (P::Inr, [_]) => {
                return Err(Diagnostic::type_error(
                    span,
                    format!(
                        "annotation required: cannot infer the type of `{}`; use it where a Sum type is expected",
                        p.keyword()
                    ),
                ))
            }
            (P::Fst, [pr]) | (P::Snd, [pr]) => {
                let (t, ty) = self.infer(sc, pr)?;
                let Value::Sigma(a, c) = &ty else {
                    return Err(Diagnostic::type_error(
                        pr.span,
                        format!("expected a pair, found a term of type {}", self.show(sc, &ty)),
                    ));
                };
                if p == P::Fst {
                    (Term::ProjL(t.rc()), (**a).clone())
                } else {
                    let pv = self.eval(sc, &t, pr.span)?;
                    let first = self.ev.proj_l(pv).map_err(budget_error(span))?;
                    (Term::ProjR(t.rc()), self.inst(c, first, span)?)
                }
            }
            (P::Sum, [a, b]) => {
                let (at, la) = self.check_type(sc, a)?;
                let (bt, lb) = self.check_type(sc, b)?;
                (Term::SumTy(at.rc(), bt.rc()), Value::Univ(la.max(lb)))
            }
            (P::Id, [a, x, y]) => {
                let (at, la) = self.check_type(sc, a)?;
                let av = self.eval(sc, &at, a.span)?;
                let xt = self.check(sc, x, &av)?;
                let yt = self.check(sc, y, &av)?;
                (Term::IdTy(at.rc(), xt.rc(), yt.rc()), Value::Univ(la))
            }
            (P::Refl, [a, x]) => {
                let (at, _) = self.check_type(sc, a)?;
                let av = self.eval(sc, &at, a.span)?;
                let xt = self.check(sc, x, &av)?;
                let xv = self.eval(sc, &xt, x.span)?;
                (
                    Term::Refl(at.rc(), xt.rc()),
                    Value::IdTy(av.rc(), xv.clone().rc(), xv.rc()),
                )
            }
            (P::Abort, [c, v]) => {
                let (ct, level) = self.check_type(sc, c)?;
                self.large_elim_guard(level, c.span)?;
                let vt = self.check(sc, v, &Value::VoidTy)?;
                let cv = self.eval(sc, &ct, c.span)?;
                (
                    Term::VoidElim {
                        motive: ct.rc(),
                        scrut: vt.rc(),
                    },
                    cv,
                )
            }
            (P::NatRec, [c, z, s, n]) => self.infer_natrec(sc, c, z, s, n, span)?,
            (P::Case, [c, f, g, s]) => self.infer_case(sc, c, f, g, s, span)?,
            (P::J, [c, d, x, y, path]) => self.infer_j(sc, c, d, x, y, path, span)?,
            (P::S1Rec, [c, b, l]) => {
                let (ct, level) = self.check_type(sc, c)?;
                self.large_elim_guard(level, c.span)?;
                let cv = self.eval(sc, &ct, c.span)?;
                let bt = self.check(sc, b, &cv)?;
                let bv = self.eval(sc, &bt, b.span)?;
                let loop_ty = Value::IdTy(cv.clone().rc(), bv.clone().rc(), bv.rc());
                let lt = self.check(sc, l, &loop_ty)?;
                let ty = pi("_", Term::S1Ty.rc(), shifted(&ct.clone().rc(), 1));
                (
                    Term::S1Rec {
                        level,
                        motive: ct.rc(),
                        on_base: bt.rc(),
                        on_loop: lt.rc(),
                    },
                    self.eval(sc, &ty, span)?,
                )
            }
            (P::S1Ind, [c, b, l]) => {
                let tele = self.eval(sc, &pi("x", Term::S1Ty.rc(), Term::UnitTy.rc()), span)?;
                let (ct, level) = self.check_family(sc, c, tele, 1)?;
                self.large_elim_guard(level, c.span)?;
                let ct = ct.rc();
                // b : C base; l : Id (C base) (coe (ap C loop) b) b
                let c_base = app(ct.clone(), Term::Base.rc());
                let bt = self.check(sc, b, &self.eval(sc, &c_base, c.span)?)?.rc();
                let transported = coe(
                    ap(Term::Univ(level).rc(), ct.clone(), Term::Loop.rc()),
                    bt.clone(),
                );
                let loop_ty = id(c_base, transported, bt.clone());
                let lt = self.check(sc, l, &self.eval(sc, &loop_ty, l.span)?)?;
                let ty = pi("x", Term::S1Ty.rc(), app(shifted(&ct, 1), var(0)));
                (
                    Term::S1Ind {
                        motive: ct,
                        on_base: bt,
                        on_loop: lt.rc(),
                    },
                    self.eval(sc, &ty, span)?,
                )
            }
            (P::Coe, [path, v]) => {
                let (pt, u, a, b) = self.infer_path(sc, path)?;
                if !matches!(u, Value::Univ(_)) {
                    return Err(Diagnostic::type_error(
                        path.span,
                        format!(
                            "coe needs a path between types, found a path in {}",
                            self.show(sc, &u)
                        ),
                    ));
                }
                let vt = self.check(sc, v, &a)?;
                (Term::Coe(pt.rc(), vt.rc()), b)
            }
            (P::Ap, [f, path]) => self.infer_ap(sc, f, path, span)?,
            (P::Ua, [e]) => {
                let (et, ety) = self.infer(sc, e)?;
                let (a, b) = self.equiv_sides(sc, e, &ety)?;
                let expected = self.eval(sc, &Self::equiv_term(&a.clone().rc(), &b.clone().rc()), e.span)?;
                self.expect_conv(sc, e.span, &expected, &ety)?;
                let ty = Value::IdTy(
                    Value::Univ(0).rc(),
                    self.eval(sc, &a, e.span)?.rc(),
                    self.eval(sc, &b, e.span)?.rc(),
                );
                (Term::Ua(et.rc()), ty)
            }
            (P::Inv, [path]) => {
                let (pt, a, x, y) = self.infer_path(sc, path)?;
                (Term::PathInv(pt.rc()), Value::IdTy(a.rc(), y.rc(), x.rc()))
            }
            (P::Concat, [p1, p2]) => {
                let (t1, a1, x, y1) = self.infer_path(sc, p1)?;
                let (t2, a2, y2, z) = self.infer_path(sc, p2)?;
                self.expect_conv(sc, p2.span, &a1, &a2)?;
                if !self.conv(sc, &y1, &y2, span)? {
                    return Err(Diagnostic::type_error(p2.span, "path endpoints do not match")
                        .with_expected_actual(
                            format!("a path starting at {}", self.show(sc, &y1)),
                            format!("a path starting at {}", self.show(sc, &y2)),
                        ));
                }
                (Term::PathConcat(t1.rc(), t2.rc()), Value::IdTy(a1.rc(), x.rc(), z.rc()))
            }
            _ => unreachable!("the parser applies each primitive to its arity"),
        })
    }

    /// `A` and `B` from a type that should be `Equiv A B`, both in `U0`.
    fn equiv_sides(&self, sc: &Scope, e: &RawTerm, ety: &Value) -> TcResult<(Term, Term)> {
        let not_equiv = || {
            Diagnostic::type_error(e.span, "ua expects an equivalence")
                .with_expected_actual("Equiv A B".into(), self.show(sc, ety))
        };
        let Value::Sigma(f, _) = ety else {
            return Err(not_equiv());
        };
        let Value::Pi(a, c) = &**f else {
            return Err(not_equiv());
        };
        let Some(b) = self.non_dependent(sc, c, e.span)? else {
            return Err(not_equiv());
        };
        let bv = self.eval(sc, &b, e.span)?;
        for side in [&**a, &bv] {
            if self.level_of(sc, side, e.span)? != Some(0) {
                return Err(Diagnostic::type_error(
                    e.span,
                    format!("ua needs types in U0, but {} is not", self.show(sc, side)),
                ));
            }
        }
        Ok((self.quote(sc, a, e.span)?, b))
    }

    fn infer_ap(
        &self,
        sc: &Scope,
        f: &RawTerm,
        path: &RawTerm,
        span: Span,
    ) -> TcResult<(Term, Value)> {
        let (pt, a, x, y) = self.infer_path(sc, path)?;
        let (ft, cod) = if let RawKind::Lam(b, body) = &f.kind {
            // the domain is known from the path; the codomain is inferred
            let inner = sc.bind(&b.name, a.clone());
            let (bt, bty) = self.infer(&inner, body)?;
            let q = self
                .ev
                .readback(inner.depth(), &bty)
                .map_err(budget_error(body.span))?;
            let Some(cod) = try_shift(&q, 0, -1) else {
                return Err(Diagnostic::type_error(
                    f.span,
                    "ap needs a non-dependent function; use apd for dependent ones",
                ));
            };
            (Term::Lam(b.name.as_str().into(), bt.rc()), cod)
        } else {
            let (ft, fty) = self.infer(sc, f)?;
            let Value::Pi(dom, c) = &fty else {
                return Err(Diagnostic::type_error(
                    f.span,
                    format!(
                        "expected a function, found a term of type {}",
                        self.show(sc, &fty)
                    ),
                ));
            };
            self.expect_conv(sc, path.span, dom, &a)?;
            let Some(cod) = self.non_dependent(sc, c, f.span)? else {
                return Err(Diagnostic::type_error(
                    f.span,
                    "ap needs a non-dependent function; use apd for dependent ones",
                ));
            };
            (ft, cod)
        };
        let fv = self.eval(sc, &ft, f.span)?;
        let codv = self.eval(sc, &cod, f.span)?;
        let fx = self.apply(fv.clone(), x, span)?;
        let fy = self.apply(fv, y, span)?;
        Ok((
            Term::Ap {
                cod: cod.rc(),
                fun: ft.rc(),
                path: pt.rc(),
            },
            Value::IdTy(codv.rc(), fx.rc(), fy.rc()),
        ))
    }

    fn infer_natrec(
        &self,
        sc: &Scope,
        c: &RawTerm,
        z: &RawTerm,
        s: &RawTerm,
        n: &RawTerm,
        span: Span,
    ) -> TcResult<(Term, Value)> {
        let tele = self.eval(sc, &pi("n", Term::NatTy.rc(), Term::UnitTy.rc()), span)?;
        let (ct, level) = self.check_family(sc, c, tele, 1)?;
        self.large_elim_guard(level, c.span)?;
        let ct = ct.rc();
        let zt = self.check(
            sc,
            z,
            &self.eval(sc, &app(ct.clone(), Term::NatZero.rc()), z.span)?,
        )?;
        // (k : Nat) -> C k -> C (succ k)
        let step = pi(
            "k",
            Term::NatTy.rc(),
            pi(
                "_",
                app(shifted(&ct, 1), var(0)),
                app(shifted(&ct, 2), succ(var(1))),
            ),
        );
        let st = self.check(sc, s, &self.eval(sc, &step, s.span)?)?;
        let nt = self.check(sc, n, &Value::NatTy)?.rc();
        let ty = self.eval(sc, &app(ct.clone(), nt.clone()), span)?;
        Ok((
            Term::NatRec {
                motive: ct,
                on_zero: zt.rc(),
                on_succ: st.rc(),
                scrut: nt,
            },
            ty,
        ))
    }

    fn infer_case(
        &self,
        sc: &Scope,
        c: &RawTerm,
        f: &RawTerm,
        g: &RawTerm,
        s: &RawTerm,
        span: Span,
    ) -> TcResult<(Term, Value)> {
        let (st, sty) = self.infer(sc, s)?;
        let Value::SumTy(a, b) = &sty else {
            return Err(Diagnostic::type_error(
                s.span,
                format!(
                    "case expects a term of a Sum type, found one of type {}",
                    self.show(sc, &sty)
                ),
            ));
        };
        let sum_t = self.quote(sc, &sty, s.span)?.rc();
        let (a_t, b_t) = (
            self.quote(sc, a, s.span)?.rc(),
            self.quote(sc, b, s.span)?.rc(),
        );
        let tele = self.eval(sc, &pi("s", sum_t, Term::UnitTy.rc()), span)?;
        let (ct, level) = self.check_family(sc, c, tele, 1)?;
        self.large_elim_guard(level, c.span)?;
        let ct = ct.rc();
        let on_l = pi("a", a_t, app(shifted(&ct, 1), inl(var(0))));
        let on_r = pi("b", b_t, app(shifted(&ct, 1), inr(var(0))));
        let ft = self.check(sc, f, &self.eval(sc, &on_l, f.span)?)?;
        let gt = self.check(sc, g, &self.eval(sc, &on_r, g.span)?)?;
        let st = st.rc();
        let ty = self.eval(sc, &app(ct.clone(), st.clone()), span)?;
        Ok((
            Term::SumCase {
                motive: ct,
                on_inl: ft.rc(),
                on_inr: gt.rc(),
                scrut: st,
            },
            ty,
        ))
    }

    #[allow(clippy::too_many_arguments)]
    fn infer_j(
        &self,
        sc: &Scope,
        c: &RawTerm,
        d: &RawTerm,
        x: &RawTerm,
        y: &RawTerm,
        path: &RawTerm,
        span: Span,
    ) -> TcResult<(Term, Value)> {
        let (pt, a, _, _) = self.infer_path(sc, path)?;
        let xt = self.check(sc, x, &a)?.rc();
        let yt = self.check(sc, y, &a)?.rc();
        let a_t = self.quote(sc, &a, path.span)?.rc();
        let xv = self.eval(sc, &xt, x.span)?;
        let yv = self.eval(sc, &yt, y.span)?;
        let expected_path = Value::IdTy(a.clone().rc(), xv.rc(), yv.rc());
        let (_, pty) = self.infer(sc, path)?;
        self.expect_conv(sc, path.span, &expected_path, &pty)?;
        // (x y : A) -> Id A x y -> _
        let tele_t = pi(
            "x",
            a_t.clone(),
            pi(
                "y",
                shifted(&a_t, 1),
                pi("p", id(shifted(&a_t, 2), var(1), var(0)), Term::UnitTy.rc()),
            ),
        );
        let tele = self.eval(sc, &tele_t, span)?;
        let (ct, level) = self.check_family(sc, c, tele, 3)?;
        self.large_elim_guard(level, c.span)?;
        let ct = ct.rc();
        // d : (x : A) -> C x x (refl A x)
        let d_ty = pi(
            "x",
            a_t.clone(),
            apps(
                shifted(&ct, 1),
                [var(0), var(0), refl(shifted(&a_t, 1), var(0))],
            ),
        );
        let dt = self.check(sc, d, &self.eval(sc, &d_ty, d.span)?)?;
        let pt = pt.rc();
        let ty = self.eval(
            sc,
            &apps(ct.clone(), [xt.clone(), yt.clone(), pt.clone()]),
            span,
        )?;
        Ok((
            Term::J {
                motive: ct,
                on_refl: dt.rc(),
                lhs: xt,
                rhs: yt,
                path: pt,
            },
            ty,
        ))
    }

    // ---- checking ----

    fn check(&self, sc: &Scope, r: &RawTerm, ty: &Value) -> TcResult<Term> {
        stacker::maybe_grow(64 * 1024, 1024 * 1024, || self.check_inner(sc, r, ty))
    }

    fn check_inner(&self, sc: &Scope, r: &RawTerm, ty: &Value) -> TcResult<Term> {
        match (&r.kind, ty) {
            (RawKind::Lam(b, body), Value::Pi(dom, c)) => {
                let inner = sc.bind(&b.name, (**dom).clone());
                let cod = self.inst(c, sc.next_var(), r.span)?;
                let bt = self.check(&inner, body, &cod)?;
                Ok(Term::Lam(b.name.as_str().into(), bt.rc()))
            }
            (RawKind::Lam(..), _) => Err(Diagnostic::type_error(
                r.span,
                format!("a lambda cannot have type {}", self.show(sc, ty)),
            )),
            (RawKind::Pair(a, b), Value::Sigma(dom, c)) => {
                let at = self.check(sc, a, dom)?;
                let av = self.eval(sc, &at, a.span)?;
                let bt = self.check(sc, b, &self.inst(c, av, b.span)?)?;
                Ok(Term::Pair(at.rc(), bt.rc()))
            }
            (RawKind::Prim(p @ (Prim::Inl | Prim::Inr), args), Value::SumTy(a, b)) => {
                let side = if *p == Prim::Inl { a } else { b };
                let t = self.check(sc, &args[0], side)?.rc();
                Ok(if *p == Prim::Inl {
                    Term::Inl(t)
                } else {
                    Term::Inr(t)
                })
            }
            (RawKind::Prim(Prim::Inl | Prim::Inr, _), _) => Err(Diagnostic::type_error(
                r.span,
                format!("an injection cannot have type {}", self.show(sc, ty)),
            )),
            (RawKind::Prim(Prim::Ua, args), Value::IdTy(u, a, b))
                if matches!(**u, Value::Univ(0)) =>
            {
                let e = &args[0];
                let a_t = self.quote(sc, a, e.span)?.rc();
                let b_t = self.quote(sc, b, e.span)?.rc();
                let equiv = self.eval(sc, &Self::equiv_term(&a_t, &b_t), e.span)?;
                let et = self.check(sc, e, &equiv)?;
                Ok(Term::Ua(et.rc()))
            }
            (RawKind::Prim(Prim::Ap, args), Value::IdTy(b, _, _))
                if matches!(args[0].kind, RawKind::Lam(..)) =>
            {
                let (f, path) = (&args[0], &args[1]);
                let (pt, a, x, y) = self.infer_path(sc, path)?;
                let RawKind::Lam(binder, body) = &f.kind else {
                    unreachable!()
                };
                if self.infer(&sc.bind(&binder.name, a.clone()), body).is_ok() {
                    let (t, actual) = self.infer(sc, r)?;
                    self.expect_conv(sc, r.span, ty, &actual)?;
                    return Ok(t);
                }
                // the expected type supplies the lambda's codomain
                let a_t = self.quote(sc, &a, path.span)?.rc();
                let cod = self.quote(sc, b, r.span)?;
                let fty = self.eval(sc, &pi("_", a_t, shifted(&cod.clone().rc(), 1)), f.span)?;
                let ft = self.check(sc, f, &fty)?;
                let fv = self.eval(sc, &ft, f.span)?;
                let fx = self.apply(fv.clone(), x, r.span)?;
                let fy = self.apply(fv, y, r.span)?;
                self.expect_conv(sc, r.span, ty, &Value::IdTy(b.clone(), fx.rc(), fy.rc()))?;
                Ok(Term::Ap {
                    cod: cod.rc(),
                    fun: ft.rc(),
                    path: pt.rc(),
                })
            }
            _ => {
                let (t, actual) = self.infer(sc, r)?;
                self.expect_conv(sc, r.span, ty, &actual)?;
                Ok(t)
            }
        }
    }

    // ---- declarations ----

    fn check_decl(&self, d: &Decl) -> TcResult<GlobalEntry> {
        let sc = Scope::default();
        let (ty, tyv) = if let RawKind::Prim(Prim::U1, _) = d.declared_type.kind {
            (Term::Univ(1), Value::Univ(1))
        } else {
            let (t, _) = self.check_type(&sc, &d.declared_type)?;
            let v = self.eval(&sc, &t, d.declared_type.span)?;
            (t, v)
        };
        let body = self.check(&sc, &d.body, &tyv)?;
        Ok(GlobalEntry {
            name: d.name.as_str().into(),
            ty: ty.rc(),
            body: Some(body.rc()),
        })
    }
}

fn scope_of(elab: &Elab<'_>, ctx: &Context) -> TcResult<Scope> {
    let mut sc = Scope::default();
    for (name, ty) in ctx.entries() {
        let v = elab.eval(&sc, ty, Span::default())?;
        sc = sc.bind(name, v);
    }
    Ok(sc)
}

/// Infer the type of `r` in `ctx`: the elaborated term and its type in
/// normal form.
pub fn infer(env: &Environment, ctx: &Context, r: &RawTerm) -> TcResult<(Term, Term)> {
    infer_with(env, ctx, r, CheckConfig::default())
}

pub fn infer_with(
    env: &Environment,
    ctx: &Context,
    r: &RawTerm,
    cfg: CheckConfig,
) -> TcResult<(Term, Term)> {
    let elab = Elab::new(env, cfg);
    let sc = scope_of(&elab, ctx)?;
    let (t, ty) = elab.infer(&sc, r)?;
    let ty = elab.quote(&sc, &ty, r.span)?;
    Ok((t, ty))
}

/// Check `r` against the type `ty`, well-formed in `ctx`.
pub fn check(env: &Environment, ctx: &Context, r: &RawTerm, ty: &Term) -> TcResult<Term> {
    check_with(env, ctx, r, ty, CheckConfig::default())
}

pub fn check_with(
    env: &Environment,
    ctx: &Context,
    r: &RawTerm,
    ty: &Term,
    cfg: CheckConfig,
) -> TcResult<Term> {
    let elab = Elab::new(env, cfg);
    let sc = scope_of(&elab, ctx)?;
    let tyv = elab.eval(&sc, ty, r.span)?;
    elab.check(&sc, r, &tyv)
}

/// Definitional equality in standard mode.
pub fn convertible(
    env: &Environment,
    ctx: &Context,
    a: &Term,
    b: &Term,
) -> Result<bool, EvalError> {
    let ev = Evaluator::new(env, EvalConfig::default());
    let e = Env::fresh(ctx.len());
    let va = ev.eval(&e, a)?;
    let vb = ev.eval(&e, b)?;
    ev.conv(ctx.len(), &va, &vb)
}

/// Check one declaration against `env` without adding it.
pub fn check_decl(env: &Environment, d: &Decl, cfg: CheckConfig) -> TcResult<GlobalEntry> {
    if env.contains(&d.name) {
        return Err(Diagnostic::type_error(
            d.name_span,
            format!("duplicate definition of `{}`", d.name),
        ));
    }
    Elab::new(env, cfg).check_decl(d)
}

/// Check declarations in order, extending `env` with each one that passes.
/// A failed declaration's name is poisoned and checking continues; the
/// returned diagnostics are in source order.
pub fn check_decls(env: &mut Environment, decls: &[Decl], cfg: CheckConfig) -> Vec<Diagnostic> {
    let mut errors = Vec::new();
    for d in decls {
        match check_decl(env, d, cfg) {
            Ok(entry) => env.insert(entry),
            Err(e) => {
                env.poison(d.name.as_str().into());
                errors.push(e);
            }
        }
    }
    errors
}

/// Check a module on top of `env`.
pub fn check_module(
    env: &Environment,
    decls: &[Decl],
    cfg: CheckConfig,
) -> Result<Environment, Vec<Diagnostic>> {
    let mut out = env.clone();
    let errors = check_decls(&mut out, decls, cfg);
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(errors)
    }
}
