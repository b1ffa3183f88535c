//! Integer normal forms of the corpus type `Int := Sum Nat (Sum Unit Nat)`.
//!
//! `inl n` is `-(n+1)`, `inr (inl tt)` is zero and `inr (inr n)` is `+(n+1)`.

use crate::term::Term;

/// The unfolded `Int` type.
pub fn int_type() -> Term {
    Term::SumTy(
        Term::NatTy.rc(),
        Term::SumTy(Term::UnitTy.rc(), Term::NatTy.rc()).rc(),
    )
}

/// The unary numeral `succ (... zero)`.
pub fn numeral(n: u64) -> Term {
    let mut t = Term::NatZero;
    for _ in 0..n {
        t = Term::NatSucc(t.rc());
    }
    t
}

/// Inverse of [`numeral`]; `None` on anything that is not a closed numeral.
pub fn numeral_value(t: &Term) -> Option<u64> {
    let mut n = 0u64;
    let mut cur = t;
    loop {
        match cur {
            Term::NatZero => return Some(n),
            Term::NatSucc(p) => {
                n = n.checked_add(1)?;
                cur = p;
            }
            _ => return None,
        }
    }
}

pub fn from_i64(n: i64) -> Term {
    match n {
        0 => Term::Inr(Term::Inl(Term::Star.rc()).rc()),
        n if n > 0 => Term::Inr(Term::Inr(numeral(n.unsigned_abs() - 1).rc()).rc()),
        n => Term::Inl(numeral(n.unsigned_abs() - 1).rc()),
    }
}

/// Read a canonical integer normal form back into a machine integer.
pub fn to_i64(t: &Term) -> Option<i64> {
    match t {
        Term::Inl(n) => Some(-(i64::try_from(numeral_value(n)?).ok()?) - 1),
        Term::Inr(r) => match &**r {
            Term::Inl(s) if **s == Term::Star => Some(0),
            Term::Inr(n) => i64::try_from(numeral_value(n)?).ok()?.checked_add(1),
            _ => None,
        },
        _ => None,
    }
}

/// Signed decimal form: `+3`, `0`, `-2`.
pub fn show(n: i64) -> String {
    if n > 0 {
        format!("+{n}")
    } else {
        n.to_string()
    }
}
