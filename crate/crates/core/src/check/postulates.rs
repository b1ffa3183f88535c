//! Constants the kernel provides without a definition.

use crate::env::{Environment, GlobalEntry};
use crate::syntax::parser::parse_term;

use super::{CheckConfig, Elab, Scope};

/// Name and type of each kernel postulate, in surface syntax.
///
/// `funext` is function extensionality. `S1ind_loop_beta` is the loop
/// computation rule of circle induction, stated with `apd` unfolded: the
/// kernel only computes `S1ind` on `base`.
pub const POSTULATES: &[(&str, &str)] = &[
    (
        "funext",
        "(A : U0) (B : A -> U0) (f g : (x : A) -> B x) ->
           ((x : A) -> Id (B x) (f x) (g x)) -> Id ((x : A) -> B x) f g",
    ),
    (
        "S1ind_loop_beta",
        "(C : S1 -> U0) (b : C base) (l : Id (C base) (coe (ap C loop) b) b) ->
           Id (Id (C base) (coe (ap C loop) b) b)
              (J (\\x y p. Id (C y) (coe (ap C p) (S1ind C b l x)) (S1ind C b l y))
                 (\\x. refl (C x) (S1ind C b l x))
                 base base loop)
              l",
    ),
];

/// An environment holding only the kernel postulates.
pub fn kernel_environment() -> Environment {
    let mut env = Environment::empty();
    for (name, text) in POSTULATES {
        let raw = parse_term(text)
            .unwrap_or_else(|d| panic!("internal invariant violation: postulate `{name}`: {d}"));
        let elab = Elab::new(&env, CheckConfig::default());
        let (ty, _) = elab
            .check_type(&Scope::default(), &raw)
            .unwrap_or_else(|d| panic!("internal invariant violation: postulate `{name}`: {d}"));
        env.insert(GlobalEntry {
            name: (*name).into(),
            ty: ty.rc(),
            body: None,
        });
    }
    env
}
