//! Normalization by evaluation.
//!
//! Terms evaluate to weak-head [`Value`]s under an environment of values;
//! [`Evaluator::readback`] turns values back into β-normal terms, and
//! [`Evaluator::conv`] decides definitional equality directly on values,
//! with η for functions and pairs and the unit type.
//!
//! Rules that always fire:
//!
//! * β for functions, pairs, `case`, `natrec`; `J` on `refl`;
//! * `refl` is a unit for `!`, `*`, `ap` and `coe`;
//! * `S1rec`/`S1ind` on `base`, and `ap (S1rec C b l) loop = l`;
//! * `coe (ua e) v = fst e v`.
//!
//! With [`EvalConfig::compute_mode`] on, closed loops also compute:
//! `ap` distributes over `*` and `!`, `ap` of a constant function is
//! `refl`, `coe` along `p * q` is `coe q ∘ coe p`, and `coe` along
//! `! (ua e)` applies the inverse stored in `e`. These only fire on terms
//! that are stuck without them.

mod value;

use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::sync::Arc;

use crate::env::Environment;
use crate::term::{Context, Name, RcTerm, Term};

pub use value::{Closure, Elim, Env, Head, Neutral, RcValue, Value};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

const STACK_RED_ZONE: usize = 64 * 1024;
const STACK_GROWTH: usize = 1024 * 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub compute_mode: bool,
    /// Maximum number of rule firings; must be positive.
    pub step_budget: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            compute_mode: false,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

impl EvalConfig {
    pub fn compute() -> Self {
        EvalConfig {
            compute_mode: true,
            ..Self::default()
        }
    }

    pub fn with_budget(self, step_budget: u64) -> Self {
        EvalConfig {
            step_budget: step_budget.max(1),
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("normalization budget of {budget} rule firings exceeded")]
    BudgetExceeded { budget: u64 },
}

pub type EvalResult<T> = Result<T, EvalError>;

/// One normalization session: a global environment, a configuration, and
/// the running step count. Global definitions are unfolded on demand and
/// memoized for the lifetime of the evaluator.
pub struct Evaluator<'e> {
    globals: &'e Environment,
    cfg: EvalConfig,
    steps: Cell<u64>,
    memo: RefCell<HashMap<Name, Value>>,
}

fn rc(v: Value) -> RcValue {
    Arc::new(v)
}

impl<'e> Evaluator<'e> {
    pub fn new(globals: &'e Environment, cfg: EvalConfig) -> Self {
        Evaluator {
            globals,
            cfg: EvalConfig {
                step_budget: cfg.step_budget.max(1),
                ..cfg
            },
            steps: Cell::new(0),
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> EvalConfig {
        self.cfg
    }

    pub fn steps_used(&self) -> u64 {
        self.steps.get()
    }

    fn tick(&self) -> EvalResult<()> {
        let n = self.steps.get() + 1;
        if n > self.cfg.step_budget {
            return Err(EvalError::BudgetExceeded {
                budget: self.cfg.step_budget,
            });
        }
        self.steps.set(n);
        Ok(())
    }

    fn global(&self, name: &Name) -> EvalResult<Value> {
        if let Some(v) = self.memo.borrow().get(name) {
            return Ok(v.clone());
        }
        let entry = self
            .globals
            .lookup(name)
            .unwrap_or_else(|| panic!("internal invariant violation: unknown global `{name}`"));
        let value = match &entry.body {
            Some(body) => {
                self.tick()?;
                self.eval(&Env::new(), body)?
            }
            None => Value::postulate(name.clone()),
        };
        self.memo.borrow_mut().insert(name.clone(), value.clone());
        Ok(value)
    }

    pub fn eval(&self, env: &Env, t: &Term) -> EvalResult<Value> {
        stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || self.eval_inner(env, t))
    }

    fn eval_inner(&self, env: &Env, t: &Term) -> EvalResult<Value> {
        use Term as T;
        let ev = |t: &RcTerm| self.eval(env, t).map(rc);
        let closure = |hint: &Name, body: &RcTerm| Closure {
            hint: hint.clone(),
            env: env.clone(),
            body: body.clone(),
        };
        Ok(match t {
            T::Var(i) => env
                .get(*i)
                .unwrap_or_else(|| panic!("internal invariant violation: unbound index {i}"))
                .clone(),
            T::Global(n) => self.global(n)?,
            T::Lam(h, b) => Value::Lam(closure(h, b)),
            T::App(f, a) => {
                let f = self.eval(env, f)?;
                let a = self.eval(env, a)?;
                self.apply(f, a)?
            }
            T::Pi(h, a, b) => Value::Pi(ev(a)?, closure(h, b)),
            T::Sigma(h, a, b) => Value::Sigma(ev(a)?, closure(h, b)),
            T::Pair(a, b) => Value::Pair(ev(a)?, ev(b)?),
            T::ProjL(p) => self.proj_l(self.eval(env, p)?)?,
            T::ProjR(p) => self.proj_r(self.eval(env, p)?)?,
            T::Inl(a) => Value::Inl(ev(a)?),
            T::Inr(a) => Value::Inr(ev(a)?),
            T::SumTy(a, b) => Value::SumTy(ev(a)?, ev(b)?),
            T::SumCase {
                motive,
                on_inl,
                on_inr,
                scrut,
            } => self.sum_case(
                ev(motive)?,
                ev(on_inl)?,
                ev(on_inr)?,
                self.eval(env, scrut)?,
            )?,
            T::NatTy => Value::NatTy,
            T::NatZero => Value::Zero,
            T::NatSucc(n) => Value::Succ(ev(n)?),
            T::NatRec {
                motive,
                on_zero,
                on_succ,
                scrut,
            } => self.nat_rec(
                ev(motive)?,
                ev(on_zero)?,
                ev(on_succ)?,
                self.eval(env, scrut)?,
            )?,
            T::UnitTy => Value::UnitTy,
            T::Star => Value::Star,
            T::VoidTy => Value::VoidTy,
            T::VoidElim { motive, scrut } => self.eval(env, scrut)?.stuck(Elim::VoidElim {
                motive: ev(motive)?,
            }),
            T::Univ(l) => Value::Univ(*l),
            T::IdTy(a, x, y) => Value::IdTy(ev(a)?, ev(x)?, ev(y)?),
            T::Refl(a, x) => Value::Refl(ev(a)?, ev(x)?),
            T::J {
                motive,
                on_refl,
                lhs,
                rhs,
                path,
            } => self.j(
                ev(motive)?,
                ev(on_refl)?,
                ev(lhs)?,
                ev(rhs)?,
                self.eval(env, path)?,
            )?,
            T::PathInv(p) => self.inv(self.eval(env, p)?)?,
            T::PathConcat(p, q) => self.concat(self.eval(env, p)?, self.eval(env, q)?)?,
            T::Ap { cod, fun, path } => self.ap(ev(cod)?, ev(fun)?, self.eval(env, path)?)?,
            T::Coe(p, x) => self.coe(self.eval(env, p)?, self.eval(env, x)?)?,
            T::S1Ty => Value::S1Ty,
            T::Base => Value::Base,
            T::Loop => Value::Loop,
            T::S1Rec {
                level,
                motive,
                on_base,
                on_loop,
            } => Value::S1Rec {
                level: *level,
                motive: ev(motive)?,
                on_base: ev(on_base)?,
                on_loop: ev(on_loop)?,
            },
            T::S1Ind {
                motive,
                on_base,
                on_loop,
            } => Value::S1Ind {
                motive: ev(motive)?,
                on_base: ev(on_base)?,
                on_loop: ev(on_loop)?,
            },
            T::Ua(e) => Value::Ua(ev(e)?),
        })
    }

    pub fn apply_closure(&self, c: &Closure, arg: Value) -> EvalResult<Value> {
        self.eval(&c.env.push(arg), &c.body)
    }

    pub fn apply(&self, f: Value, arg: Value) -> EvalResult<Value> {
        match f {
            Value::Lam(c) => {
                self.tick()?;
                self.apply_closure(&c, arg)
            }
            Value::S1Rec {
                level,
                motive,
                on_base,
                on_loop,
            } => match arg {
                Value::Base => {
                    self.tick()?;
                    Ok((*on_base).clone())
                }
                other => Ok(other.stuck(Elim::S1Rec {
                    level,
                    motive,
                    on_base,
                    on_loop,
                })),
            },
            Value::S1Ind {
                motive,
                on_base,
                on_loop,
            } => match arg {
                Value::Base => {
                    self.tick()?;
                    Ok((*on_base).clone())
                }
                other => Ok(other.stuck(Elim::S1Ind {
                    motive,
                    on_base,
                    on_loop,
                })),
            },
            other => Ok(other.stuck(Elim::App(rc(arg)))),
        }
    }

    /// Apply to several arguments in turn.
    pub fn apply_all(&self, f: Value, args: impl IntoIterator<Item = Value>) -> EvalResult<Value> {
        args.into_iter().try_fold(f, |f, a| self.apply(f, a))
    }

    pub fn proj_l(&self, p: Value) -> EvalResult<Value> {
        match p {
            Value::Pair(a, _) => {
                self.tick()?;
                Ok((*a).clone())
            }
            other => Ok(other.stuck(Elim::ProjL)),
        }
    }

    pub fn proj_r(&self, p: Value) -> EvalResult<Value> {
        match p {
            Value::Pair(_, b) => {
                self.tick()?;
                Ok((*b).clone())
            }
            other => Ok(other.stuck(Elim::ProjR)),
        }
    }

    fn sum_case(
        &self,
        motive: RcValue,
        on_inl: RcValue,
        on_inr: RcValue,
        scrut: Value,
    ) -> EvalResult<Value> {
        match scrut {
            Value::Inl(a) => {
                self.tick()?;
                self.apply((*on_inl).clone(), (*a).clone())
            }
            Value::Inr(b) => {
                self.tick()?;
                self.apply((*on_inr).clone(), (*b).clone())
            }
            other => Ok(other.stuck(Elim::SumCase {
                motive,
                on_inl,
                on_inr,
            })),
        }
    }

    fn nat_rec(
        &self,
        motive: RcValue,
        on_zero: RcValue,
        on_succ: RcValue,
        scrut: Value,
    ) -> EvalResult<Value> {
        match scrut {
            Value::Zero => {
                self.tick()?;
                Ok((*on_zero).clone())
            }
            Value::Succ(k) => {
                self.tick()?;
                let rec = self.nat_rec(motive, on_zero, on_succ.clone(), (*k).clone())?;
                self.apply_all((*on_succ).clone(), [(*k).clone(), rec])
            }
            other => Ok(other.stuck(Elim::NatRec {
                motive,
                on_zero,
                on_succ,
            })),
        }
    }

    fn j(
        &self,
        motive: RcValue,
        on_refl: RcValue,
        lhs: RcValue,
        rhs: RcValue,
        path: Value,
    ) -> EvalResult<Value> {
        match path {
            Value::Refl(..) => {
                self.tick()?;
                self.apply((*on_refl).clone(), (*lhs).clone())
            }
            other => Ok(other.stuck(Elim::J {
                motive,
                on_refl,
                lhs,
                rhs,
            })),
        }
    }

    pub fn inv(&self, p: Value) -> EvalResult<Value> {
        match p {
            Value::Refl(..) => {
                self.tick()?;
                Ok(p)
            }
            other => Ok(Value::PathInv(rc(other))),
        }
    }

    pub fn concat(&self, p: Value, q: Value) -> EvalResult<Value> {
        match (p, q) {
            (Value::Refl(..), q) => {
                self.tick()?;
                Ok(q)
            }
            (p, Value::Refl(..)) => {
                self.tick()?;
                Ok(p)
            }
            (p, q) => Ok(Value::PathConcat(rc(p), rc(q))),
        }
    }

    pub fn ap(&self, cod: RcValue, fun: RcValue, path: Value) -> EvalResult<Value> {
        match (&*fun, path) {
            (_, Value::Refl(_, x)) => {
                self.tick()?;
                let fx = self.apply((*fun).clone(), (*x).clone())?;
                Ok(Value::Refl(cod, rc(fx)))
            }
            (Value::S1Rec { on_loop, .. }, Value::Loop) => {
                self.tick()?;
                Ok((**on_loop).clone())
            }
            (_, Value::PathConcat(p, q)) if self.cfg.compute_mode => {
                self.tick()?;
                let p = self.ap(cod.clone(), fun.clone(), (*p).clone())?;
                let q = self.ap(cod, fun, (*q).clone())?;
                self.concat(p, q)
            }
            (_, Value::PathInv(p)) if self.cfg.compute_mode => {
                self.tick()?;
                let p = self.ap(cod, fun, (*p).clone())?;
                self.inv(p)
            }
            (Value::Lam(c), _) if self.cfg.compute_mode && !c.body.has_free(0) => {
                self.tick()?;
                let constant = self.apply_closure(c, Value::Star)?;
                Ok(Value::Refl(cod, rc(constant)))
            }
            (_, path) => Ok(Value::Ap {
                cod,
                fun,
                path: rc(path),
            }),
        }
    }

    pub fn coe(&self, path: Value, v: Value) -> EvalResult<Value> {
        match path {
            Value::Refl(..) => {
                self.tick()?;
                Ok(v)
            }
            Value::Ua(e) => {
                self.tick()?;
                let forward = self.proj_l((*e).clone())?;
                self.apply(forward, v)
            }
            Value::PathConcat(p, q) if self.cfg.compute_mode => {
                self.tick()?;
                let mid = self.coe((*p).clone(), v)?;
                self.coe((*q).clone(), mid)
            }
            Value::PathInv(ref inner) if self.cfg.compute_mode => match &**inner {
                Value::Ua(e) => {
                    self.tick()?;
                    let backward = self.proj_l(self.proj_r((**e).clone())?)?;
                    self.apply(backward, v)
                }
                Value::PathConcat(p, q) => {
                    self.tick()?;
                    let mid = self.coe(self.inv((**q).clone())?, v)?;
                    self.coe(self.inv((**p).clone())?, mid)
                }
                Value::PathInv(p) => {
                    self.tick()?;
                    self.coe((**p).clone(), v)
                }
                _ => Ok(Value::Coe(rc(path), rc(v))),
            },
            path => Ok(Value::Coe(rc(path), rc(v))),
        }
    }

    /// Read a value back into a β-normal term at context depth `depth`.
    pub fn readback(&self, depth: usize, v: &Value) -> EvalResult<Term> {
        stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || {
            self.readback_inner(depth, v)
        })
    }

    fn readback_inner(&self, depth: usize, v: &Value) -> EvalResult<Term> {
        use Value as V;
        let rb = |v: &RcValue| self.readback(depth, v).map(Arc::new);
        let under = |c: &Closure| -> EvalResult<RcTerm> {
            let body = self.apply_closure(c, Value::var(depth))?;
            self.readback(depth + 1, &body).map(Arc::new)
        };
        Ok(match v {
            V::Lam(c) => Term::Lam(c.hint.clone(), under(c)?),
            V::Pi(a, c) => Term::Pi(c.hint.clone(), rb(a)?, under(c)?),
            V::Sigma(a, c) => Term::Sigma(c.hint.clone(), rb(a)?, under(c)?),
            V::Pair(a, b) => Term::Pair(rb(a)?, rb(b)?),
            V::Inl(a) => Term::Inl(rb(a)?),
            V::Inr(a) => Term::Inr(rb(a)?),
            V::SumTy(a, b) => Term::SumTy(rb(a)?, rb(b)?),
            V::NatTy => Term::NatTy,
            V::Zero => Term::NatZero,
            V::Succ(n) => Term::NatSucc(rb(n)?),
            V::UnitTy => Term::UnitTy,
            V::Star => Term::Star,
            V::VoidTy => Term::VoidTy,
            V::Univ(l) => Term::Univ(*l),
            V::IdTy(a, x, y) => Term::IdTy(rb(a)?, rb(x)?, rb(y)?),
            V::Refl(a, x) => Term::Refl(rb(a)?, rb(x)?),
            V::S1Ty => Term::S1Ty,
            V::Base => Term::Base,
            V::Loop => Term::Loop,
            V::S1Rec {
                level,
                motive,
                on_base,
                on_loop,
            } => Term::S1Rec {
                level: *level,
                motive: rb(motive)?,
                on_base: rb(on_base)?,
                on_loop: rb(on_loop)?,
            },
            V::S1Ind {
                motive,
                on_base,
                on_loop,
            } => Term::S1Ind {
                motive: rb(motive)?,
                on_base: rb(on_base)?,
                on_loop: rb(on_loop)?,
            },
            V::Ua(e) => Term::Ua(rb(e)?),
            V::PathInv(p) => Term::PathInv(rb(p)?),
            V::PathConcat(p, q) => Term::PathConcat(rb(p)?, rb(q)?),
            V::Ap { cod, fun, path } => Term::Ap {
                cod: rb(cod)?,
                fun: rb(fun)?,
                path: rb(path)?,
            },
            V::Coe(p, x) => Term::Coe(rb(p)?, rb(x)?),
            V::Neutral(n) => self.readback_neutral(depth, n)?,
        })
    }

    fn readback_neutral(&self, depth: usize, n: &Neutral) -> EvalResult<Term> {
        let rb = |v: &RcValue| self.readback(depth, v).map(Arc::new);
        let mut acc = match &n.head {
            Head::Var(lvl) => {
                assert!(
                    *lvl < depth,
                    "internal invariant violation: level {lvl} at depth {depth}"
                );
                Term::Var(depth - 1 - lvl)
            }
            Head::Postulate(name) => Term::Global(name.clone()),
            Head::Stuck(v) => self.readback(depth, v)?,
        };
        for elim in &n.spine {
            let scrut = Arc::new(acc);
            acc = match elim {
                Elim::App(a) => Term::App(scrut, rb(a)?),
                Elim::ProjL => Term::ProjL(scrut),
                Elim::ProjR => Term::ProjR(scrut),
                Elim::SumCase {
                    motive,
                    on_inl,
                    on_inr,
                } => Term::SumCase {
                    motive: rb(motive)?,
                    on_inl: rb(on_inl)?,
                    on_inr: rb(on_inr)?,
                    scrut,
                },
                Elim::NatRec {
                    motive,
                    on_zero,
                    on_succ,
                } => Term::NatRec {
                    motive: rb(motive)?,
                    on_zero: rb(on_zero)?,
                    on_succ: rb(on_succ)?,
                    scrut,
                },
                Elim::VoidElim { motive } => Term::VoidElim {
                    motive: rb(motive)?,
                    scrut,
                },
                Elim::J {
                    motive,
                    on_refl,
                    lhs,
                    rhs,
                } => Term::J {
                    motive: rb(motive)?,
                    on_refl: rb(on_refl)?,
                    lhs: rb(lhs)?,
                    rhs: rb(rhs)?,
                    path: scrut,
                },
                Elim::S1Rec {
                    level,
                    motive,
                    on_base,
                    on_loop,
                } => Term::App(
                    Arc::new(Term::S1Rec {
                        level: *level,
                        motive: rb(motive)?,
                        on_base: rb(on_base)?,
                        on_loop: rb(on_loop)?,
                    }),
                    scrut,
                ),
                Elim::S1Ind {
                    motive,
                    on_base,
                    on_loop,
                } => Term::App(
                    Arc::new(Term::S1Ind {
                        motive: rb(motive)?,
                        on_base: rb(on_base)?,
                        on_loop: rb(on_loop)?,
                    }),
                    scrut,
                ),
            };
        }
        Ok(acc)
    }

    /// Read back at a known type, η-expanding functions and pairs and
    /// collapsing the unit type wherever the type makes the shape known.
    pub fn readback_at(&self, depth: usize, v: &Value, ty: &Value) -> EvalResult<Term> {
        match ty {
            Value::Pi(_, c) => {
                let x = Value::var(depth);
                let body = self.apply(v.clone(), x.clone())?;
                let cod = self.apply_closure(c, x)?;
                let hint = match v {
                    Value::Lam(l) => l.hint.clone(),
                    _ => c.hint.clone(),
                };
                Ok(Term::Lam(
                    hint,
                    Arc::new(self.readback_at(depth + 1, &body, &cod)?),
                ))
            }
            Value::Sigma(dom, c) => {
                let a = self.proj_l(v.clone())?;
                let b = self.proj_r(v.clone())?;
                let cod = self.apply_closure(c, a.clone())?;
                Ok(Term::Pair(
                    Arc::new(self.readback_at(depth, &a, dom)?),
                    Arc::new(self.readback_at(depth, &b, &cod)?),
                ))
            }
            Value::UnitTy => Ok(Term::Star),
            Value::SumTy(l, r) => match v {
                Value::Inl(a) => Ok(Term::Inl(Arc::new(self.readback_at(depth, a, l)?))),
                Value::Inr(b) => Ok(Term::Inr(Arc::new(self.readback_at(depth, b, r)?))),
                _ => self.readback(depth, v),
            },
            _ => self.readback(depth, v),
        }
    }

    /// Definitional equality of two values at context depth `depth`.
    pub fn conv(&self, depth: usize, a: &Value, b: &Value) -> EvalResult<bool> {
        stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || {
            self.conv_inner(depth, a, b)
        })
    }

    fn conv_inner(&self, depth: usize, a: &Value, b: &Value) -> EvalResult<bool> {
        use Value as V;
        let is_fun = |v: &Value| matches!(v, V::Lam(_) | V::S1Rec { .. } | V::S1Ind { .. });
        match (a, b) {
            (
                V::S1Rec {
                    motive: m1,
                    on_base: b1,
                    on_loop: l1,
                    ..
                },
                V::S1Rec {
                    motive: m2,
                    on_base: b2,
                    on_loop: l2,
                    ..
                },
            )
            | (
                V::S1Ind {
                    motive: m1,
                    on_base: b1,
                    on_loop: l1,
                },
                V::S1Ind {
                    motive: m2,
                    on_base: b2,
                    on_loop: l2,
                },
            ) => Ok(self.conv(depth, m1, m2)?
                && self.conv(depth, b1, b2)?
                && self.conv(depth, l1, l2)?),
            _ if is_fun(a) || is_fun(b) => {
                let x = Value::var(depth);
                let fa = self.apply(a.clone(), x.clone())?;
                let fb = self.apply(b.clone(), x)?;
                self.conv(depth + 1, &fa, &fb)
            }
            (V::Pair(a1, b1), V::Pair(a2, b2)) => {
                Ok(self.conv(depth, a1, a2)? && self.conv(depth, b1, b2)?)
            }
            (V::Pair(..), _) | (_, V::Pair(..)) => {
                let (la, lb) = (self.proj_l(a.clone())?, self.proj_l(b.clone())?);
                if !self.conv(depth, &la, &lb)? {
                    return Ok(false);
                }
                let (ra, rb) = (self.proj_r(a.clone())?, self.proj_r(b.clone())?);
                self.conv(depth, &ra, &rb)
            }
            (V::Star, _) | (_, V::Star) => Ok(true),
            (V::Pi(d1, c1), V::Pi(d2, c2)) | (V::Sigma(d1, c1), V::Sigma(d2, c2)) => {
                if !self.conv(depth, d1, d2)? {
                    return Ok(false);
                }
                let x = Value::var(depth);
                let b1 = self.apply_closure(c1, x.clone())?;
                let b2 = self.apply_closure(c2, x)?;
                self.conv(depth + 1, &b1, &b2)
            }
            (V::Inl(x), V::Inl(y))
            | (V::Inr(x), V::Inr(y))
            | (V::Succ(x), V::Succ(y))
            | (V::Ua(x), V::Ua(y))
            | (V::PathInv(x), V::PathInv(y))
            | (V::Refl(_, x), V::Refl(_, y)) => self.conv(depth, x, y),
            (V::SumTy(a1, b1), V::SumTy(a2, b2))
            | (V::PathConcat(a1, b1), V::PathConcat(a2, b2))
            | (V::Coe(a1, b1), V::Coe(a2, b2))
            | (
                V::Ap {
                    fun: a1, path: b1, ..
                },
                V::Ap {
                    fun: a2, path: b2, ..
                },
            ) => Ok(self.conv(depth, a1, a2)? && self.conv(depth, b1, b2)?),
            (V::IdTy(a1, x1, y1), V::IdTy(a2, x2, y2)) => Ok(self.conv(depth, a1, a2)?
                && self.conv(depth, x1, x2)?
                && self.conv(depth, y1, y2)?),
            (V::NatTy, V::NatTy)
            | (V::Zero, V::Zero)
            | (V::UnitTy, V::UnitTy)
            | (V::VoidTy, V::VoidTy)
            | (V::S1Ty, V::S1Ty)
            | (V::Base, V::Base)
            | (V::Loop, V::Loop) => Ok(true),
            (V::Univ(i), V::Univ(j)) => Ok(i == j),
            (V::Neutral(n1), V::Neutral(n2)) => self.conv_neutral(depth, n1, n2),
            _ => Ok(false),
        }
    }

    fn conv_neutral(&self, depth: usize, n1: &Neutral, n2: &Neutral) -> EvalResult<bool> {
        let heads = match (&n1.head, &n2.head) {
            (Head::Var(i), Head::Var(j)) => i == j,
            (Head::Postulate(x), Head::Postulate(y)) => x == y,
            (Head::Stuck(x), Head::Stuck(y)) => self.conv(depth, x, y)?,
            _ => false,
        };
        if !heads || n1.spine.len() != n2.spine.len() {
            return Ok(false);
        }
        for (e1, e2) in n1.spine.iter().zip(&n2.spine) {
            if !self.conv_elim(depth, e1, e2)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn conv_elim(&self, depth: usize, e1: &Elim, e2: &Elim) -> EvalResult<bool> {
        let all = |pairs: &[(&RcValue, &RcValue)]| -> EvalResult<bool> {
            for (x, y) in pairs {
                if !self.conv(depth, x, y)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        match (e1, e2) {
            (Elim::App(a), Elim::App(b)) => self.conv(depth, a, b),
            (Elim::ProjL, Elim::ProjL) | (Elim::ProjR, Elim::ProjR) => Ok(true),
            (
                Elim::SumCase {
                    motive: m1,
                    on_inl: l1,
                    on_inr: r1,
                },
                Elim::SumCase {
                    motive: m2,
                    on_inl: l2,
                    on_inr: r2,
                },
            )
            | (
                Elim::NatRec {
                    motive: m1,
                    on_zero: l1,
                    on_succ: r1,
                },
                Elim::NatRec {
                    motive: m2,
                    on_zero: l2,
                    on_succ: r2,
                },
            )
            | (
                Elim::S1Rec {
                    motive: m1,
                    on_base: l1,
                    on_loop: r1,
                    ..
                },
                Elim::S1Rec {
                    motive: m2,
                    on_base: l2,
                    on_loop: r2,
                    ..
                },
            )
            | (
                Elim::S1Ind {
                    motive: m1,
                    on_base: l1,
                    on_loop: r1,
                },
                Elim::S1Ind {
                    motive: m2,
                    on_base: l2,
                    on_loop: r2,
                },
            ) => all(&[(m1, m2), (l1, l2), (r1, r2)]),
            (Elim::VoidElim { motive: m1 }, Elim::VoidElim { motive: m2 }) => {
                self.conv(depth, m1, m2)
            }
            (
                Elim::J {
                    motive: m1,
                    on_refl: d1,
                    lhs: x1,
                    rhs: y1,
                },
                Elim::J {
                    motive: m2,
                    on_refl: d2,
                    lhs: x2,
                    rhs: y2,
                },
            ) => all(&[(m1, m2), (d1, d2), (x1, x2), (y1, y2)]),
            _ => Ok(false),
        }
    }
}

/// Evaluate `t` in the context `ctx` and read it back: `readback(eval(t))`.
pub fn normalize(
    globals: &Environment,
    ctx: &Context,
    t: &Term,
    cfg: EvalConfig,
) -> EvalResult<Term> {
    let ev = Evaluator::new(globals, cfg);
    let v = ev.eval(&Env::fresh(ctx.len()), t)?;
    ev.readback(ctx.len(), &v)
}

/// Normalize a closed term to a value.
pub fn eval_closed(globals: &Environment, t: &Term, cfg: EvalConfig) -> EvalResult<Value> {
    Evaluator::new(globals, cfg).eval(&Env::new(), t)
}

#[cfg(test)]
mod tests;
