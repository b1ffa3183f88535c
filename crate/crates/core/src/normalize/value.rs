//! Semantic domain of the normalizer.

use std::sync::Arc;

use crate::term::{Level, Name, RcTerm};

/// Values of local variables, innermost last. Persistent, so capturing an
/// environment in a closure is O(1).
#[derive(Clone, Debug, Default)]
pub struct Env {
    node: Option<Arc<EnvNode>>,
}

#[derive(Debug)]
struct EnvNode {
    head: Value,
    tail: Env,
    len: usize,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn len(&self) -> usize {
        self.node.as_ref().map_or(0, |n| n.len)
    }

    pub fn is_empty(&self) -> bool {
        self.node.is_none()
    }

    pub fn push(&self, v: Value) -> Env {
        Env {
            node: Some(Arc::new(EnvNode {
                head: v,
                len: self.len() + 1,
                tail: self.clone(),
            })),
        }
    }

    /// Value of de Bruijn index `i`.
    pub fn get(&self, i: usize) -> Option<&Value> {
        let mut cur = self.node.as_ref()?;
        for _ in 0..i {
            cur = cur.tail.node.as_ref()?;
        }
        Some(&cur.head)
    }

    /// Environment binding `n` fresh variables at levels `0..n`.
    pub fn fresh(n: usize) -> Env {
        (0..n).fold(Env::new(), |env, lvl| env.push(Value::var(lvl)))
    }
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub hint: Name,
    pub env: Env,
    pub body: RcTerm,
}

pub type RcValue = Arc<Value>;

/// Weak-head normal forms.
#[derive(Clone, Debug)]
pub enum Value {
    Lam(Closure),
    Pi(RcValue, Closure),
    Sigma(RcValue, Closure),
    Pair(RcValue, RcValue),
    Inl(RcValue),
    Inr(RcValue),
    SumTy(RcValue, RcValue),
    NatTy,
    Zero,
    Succ(RcValue),
    UnitTy,
    Star,
    VoidTy,
    Univ(Level),
    IdTy(RcValue, RcValue, RcValue),
    Refl(RcValue, RcValue),
    S1Ty,
    Base,
    /// The circle's path constructor.
    Loop,
    /// `S1rec C b l`, a function out of the circle.
    S1Rec {
        level: Level,
        motive: RcValue,
        on_base: RcValue,
        on_loop: RcValue,
    },
    S1Ind {
        motive: RcValue,
        on_base: RcValue,
        on_loop: RcValue,
    },
    Ua(RcValue),
    /// Path operations that no rule could simplify.
    PathInv(RcValue),
    PathConcat(RcValue, RcValue),
    Ap {
        cod: RcValue,
        fun: RcValue,
        path: RcValue,
    },
    Coe(RcValue, RcValue),
    Neutral(Arc<Neutral>),
}

/// A stuck elimination: a head that cannot compute, followed by the
/// eliminations waiting on it (innermost first).
#[derive(Clone, Debug)]
pub struct Neutral {
    pub head: Head,
    pub spine: Vec<Elim>,
}

#[derive(Clone, Debug)]
pub enum Head {
    /// De Bruijn level.
    Var(usize),
    /// A kernel postulate.
    Postulate(Name),
    /// An irreducible non-variable value being eliminated, such as `loop`
    /// under `J`, or a stuck coercion applied to an argument.
    Stuck(RcValue),
}

#[derive(Clone, Debug)]
pub enum Elim {
    App(RcValue),
    ProjL,
    ProjR,
    SumCase {
        motive: RcValue,
        on_inl: RcValue,
        on_inr: RcValue,
    },
    NatRec {
        motive: RcValue,
        on_zero: RcValue,
        on_succ: RcValue,
    },
    VoidElim {
        motive: RcValue,
    },
    J {
        motive: RcValue,
        on_refl: RcValue,
        lhs: RcValue,
        rhs: RcValue,
    },
    S1Rec {
        level: Level,
        motive: RcValue,
        on_base: RcValue,
        on_loop: RcValue,
    },
    S1Ind {
        motive: RcValue,
        on_base: RcValue,
        on_loop: RcValue,
    },
}

impl Value {
    pub fn var(level: usize) -> Value {
        Value::Neutral(Arc::new(Neutral {
            head: Head::Var(level),
            spine: vec![],
        }))
    }

    pub fn postulate(name: Name) -> Value {
        Value::Neutral(Arc::new(Neutral {
            head: Head::Postulate(name),
            spine: vec![],
        }))
    }

    pub fn rc(self) -> RcValue {
        Arc::new(self)
    }

    /// Block `elim` on `self`, which could not reduce it.
    pub fn stuck(self, elim: Elim) -> Value {
        match self {
            Value::Neutral(n) => {
                let mut n = Arc::unwrap_or_clone(n);
                n.spine.push(elim);
                Value::Neutral(Arc::new(n))
            }
            other => Value::Neutral(Arc::new(Neutral {
                head: Head::Stuck(other.rc()),
                spine: vec![elim],
            })),
        }
    }
}
