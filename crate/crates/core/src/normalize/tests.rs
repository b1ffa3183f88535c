use super::*;
use crate::term::build::*;

fn s1() -> RcTerm {
    Term::S1Ty.rc()
}
fn base() -> RcTerm {
    Term::Base.rc()
}
fn lp() -> RcTerm {
    Term::Loop.rc()
}
fn nf(t: &Term, cfg: EvalConfig) -> Term {
    normalize(&Environment::empty(), &Context::new(), t, cfg).unwrap()
}
fn nf0(t: &Term) -> Term {
    nf(t, EvalConfig::default())
}

#[test]
fn beta_and_projections() {
    let t = Term::ProjL(Term::Pair(Term::NatZero.rc(), base()).rc());
    assert_eq!(nf0(&t), Term::NatZero);
    let t = Term::App(lam("x", succ(var(0))), Term::NatZero.rc());
    assert_eq!(nf0(&t), Term::NatSucc(Term::NatZero.rc()));
}

#[test]
fn concat_right_unit() {
    let t = Term::PathConcat(lp(), refl(s1(), base()));
    assert_eq!(nf0(&t), Term::Loop);
}

#[test]
fn refl_units() {
    let r = refl(s1(), base());
    assert_eq!(nf0(&Term::PathInv(r.clone())), *r);
    assert_eq!(nf0(&Term::PathConcat(r.clone(), lp())), Term::Loop);
    assert_eq!(
        nf0(&Term::Coe(refl(Term::Univ(0).rc(), s1()), base())),
        Term::Base
    );
    let f = lam("x", var(0));
    let t = Term::Ap {
        cod: s1(),
        fun: f,
        path: r.clone(),
    };
    assert_eq!(nf0(&t), *r);
}

#[test]
fn j_on_refl() {
    let motive = lam("x", lam("y", lam("p", s1())));
    let on_refl = lam("x", var(0));
    let t = Term::J {
        motive,
        on_refl,
        lhs: base(),
        rhs: base(),
        path: refl(s1(), base()),
    };
    assert_eq!(nf0(&t), Term::Base);
}

#[test]
fn circle_recursion_computes_on_base_and_loop() {
    let rec = Term::S1Rec {
        level: 0,
        motive: Term::NatTy.rc(),
        on_base: Term::NatZero.rc(),
        on_loop: refl(Term::NatTy.rc(), Term::NatZero.rc()),
    }
    .rc();
    assert_eq!(nf0(&Term::App(rec.clone(), base())), Term::NatZero);
    let t = Term::Ap {
        cod: Term::NatTy.rc(),
        fun: rec,
        path: lp(),
    };
    assert_eq!(nf0(&t), *refl(Term::NatTy.rc(), Term::NatZero.rc()));
}

#[test]
fn loop_is_not_refl() {
    let env = Environment::empty();
    let ev = Evaluator::new(&env, EvalConfig::default());
    let a = ev.eval(&Env::new(), &Term::Loop).unwrap();
    let b = ev.eval(&Env::new(), &refl(s1(), base())).unwrap();
    assert!(!ev.conv(0, &a, &b).unwrap());
}

#[test]
fn ua_beta() {
    // an "equivalence" whose first component is succ
    let e = Term::Pair(lam("n", succ(var(0))), Term::Star.rc()).rc();
    let t = Term::Coe(Term::Ua(e).rc(), Term::NatZero.rc());
    assert_eq!(nf0(&t), Term::NatSucc(Term::NatZero.rc()));
}

#[test]
fn compute_rules_only_in_compute_mode() {
    let f = Term::S1Rec {
        level: 0,
        motive: s1(),
        on_base: base(),
        on_loop: lp(),
    }
    .rc();
    let t = Term::Ap {
        cod: s1(),
        fun: f,
        path: concat(lp(), inv(lp())),
    };
    let off = nf0(&t);
    assert!(matches!(off, Term::Ap { .. }));
    let on = nf(&t, EvalConfig::compute());
    assert_eq!(on, Term::PathConcat(lp(), inv(lp())));
}

#[test]
fn coe_along_inverse_ua_uses_inverse_component() {
    let e = Term::Pair(
        lam("n", succ(var(0))),
        Term::Pair(lam("n", Term::NatZero.rc()), Term::Star.rc()).rc(),
    )
    .rc();
    let t = Term::Coe(
        inv(Term::Ua(e).rc()),
        Term::NatSucc(Term::NatZero.rc()).rc(),
    );
    assert!(matches!(nf0(&t), Term::Coe(..)));
    assert_eq!(nf(&t, EvalConfig::compute()), Term::NatZero);
}

#[test]
fn eta_for_functions_pairs_and_unit() {
    let env = Environment::empty();
    let ev = Evaluator::new(&env, EvalConfig::default());
    let genv = Env::fresh(1);
    let f = ev.eval(&genv, &Term::Var(0)).unwrap();
    let eta = ev
        .eval(&genv, &Term::Lam("x".into(), app(var(1), var(0))))
        .unwrap();
    assert!(ev.conv(1, &f, &eta).unwrap());
    let p = ev
        .eval(
            &genv,
            &Term::Pair(Term::ProjL(var(0)).rc(), Term::ProjR(var(0)).rc()),
        )
        .unwrap();
    assert!(ev.conv(1, &f, &p).unwrap());
    assert!(ev.conv(1, &f, &Value::Star).unwrap());
}

#[test]
fn readback_of_neutral_application() {
    let t = Term::App(var(0), base());
    let ctx = Context::new().extended("f", pi("_", s1(), s1()));
    let got = normalize(&Environment::empty(), &ctx, &t, EvalConfig::default()).unwrap();
    assert_eq!(got, t);
}

#[test]
fn readback_at_function_type_eta_expands() {
    let env = Environment::empty();
    let ev = Evaluator::new(&env, EvalConfig::default());
    let genv = Env::fresh(1);
    let f = ev.eval(&genv, &Term::Var(0)).unwrap();
    let ty = ev.eval(&genv, &pi("_", s1(), s1())).unwrap();
    let got = ev.readback_at(1, &f, &ty).unwrap();
    assert_eq!(got, Term::Lam("x".into(), app(var(1), var(0))));
}

#[test]
fn budget_is_enforced() {
    // natrec over a large numeral needs more firings than the budget
    let mut n = Term::NatZero.rc();
    for _ in 0..100 {
        n = succ(n);
    }
    let t = Term::NatRec {
        motive: lam("_", Term::NatTy.rc()),
        on_zero: Term::NatZero.rc(),
        on_succ: lam("k", lam("r", succ(var(0)))),
        scrut: n,
    };
    let err = normalize(
        &Environment::empty(),
        &Context::new(),
        &t,
        EvalConfig::default().with_budget(50),
    )
    .unwrap_err();
    assert_eq!(err, EvalError::BudgetExceeded { budget: 50 });
    assert!(normalize(
        &Environment::empty(),
        &Context::new(),
        &t,
        EvalConfig::default()
    )
    .is_ok());
}

#[test]
fn constant_ap_is_refl_in_compute_mode() {
    let t = Term::Ap {
        cod: Term::NatTy.rc(),
        fun: lam("_", Term::NatZero.rc()),
        path: lp(),
    };
    assert!(matches!(nf0(&t), Term::Ap { .. }));
    assert_eq!(
        nf(&t, EvalConfig::compute()),
        *refl(Term::NatTy.rc(), Term::NatZero.rc())
    );
}

#[test]
fn coe_along_inverse_of_composite() {
    let e = Term::Pair(
        lam("n", succ(var(0))),
        Term::Pair(lam("n", succ(succ(var(0)))), Term::Star.rc()).rc(),
    )
    .rc();
    let u = Term::Ua(e).rc();
    // !(ua e * ua e) runs the second component twice
    let t = Term::Coe(inv(concat(u.clone(), u.clone())), Term::NatZero.rc());
    assert!(matches!(nf0(&t), Term::Coe(..)));
    assert_eq!(nf(&t, EvalConfig::compute()), crate::int::numeral(4));
    let t = Term::Coe(inv(inv(u)), Term::NatZero.rc());
    assert_eq!(
        nf(&t, EvalConfig::compute()),
        Term::NatSucc(Term::NatZero.rc())
    );
}
