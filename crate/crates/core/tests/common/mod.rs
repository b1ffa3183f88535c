//! Helpers shared by the integration tests.

#![allow(dead_code)]

use hottloop_core::check::{check, infer};
use hottloop_core::syntax::{parse_term, pretty_print};
use hottloop_core::{normalize, stdlib, Context, EvalConfig, Term};
use rand::Rng;

/// Elaborate a closed surface expression against the corpus.
pub fn elab(src: &str) -> (Term, Term) {
    let raw = parse_term(src).unwrap_or_else(|d| panic!("{src}: {d}"));
    infer(stdlib::environment(), &Context::new(), &raw).unwrap_or_else(|d| panic!("{src}: {d}"))
}

pub fn nf_term(t: &Term, compute: bool) -> Term {
    let cfg = if compute {
        EvalConfig::compute()
    } else {
        EvalConfig::default()
    };
    normalize(stdlib::environment(), &Context::new(), t, cfg).unwrap()
}

pub fn nf(src: &str, compute: bool) -> Term {
    nf_term(&elab(src).0, compute)
}

/// Loop words as the oracle sees them. Kept separate from the kernel's own
/// word type so the oracle shares no code with the system under test.
#[derive(Clone, Debug)]
pub enum W {
    Refl,
    Loop,
    Inv(Box<W>),
    Cat(Box<W>, Box<W>),
}

impl W {
    /// Exponent sum in the free group on one generator.
    pub fn exponent_sum(&self) -> i64 {
        match self {
            W::Refl => 0,
            W::Loop => 1,
            W::Inv(w) => -w.exponent_sum(),
            W::Cat(a, b) => a.exponent_sum() + b.exponent_sum(),
        }
    }

    /// Number of `loop` letters.
    pub fn letters(&self) -> usize {
        match self {
            W::Refl => 0,
            W::Loop => 1,
            W::Inv(w) => w.letters(),
            W::Cat(a, b) => a.letters() + b.letters(),
        }
    }

    /// Surface syntax; every operand except a left-nested product is
    /// parenthesized.
    pub fn render(&self) -> String {
        match self {
            W::Refl => "refl S1 base".into(),
            W::Loop => "loop".into(),
            W::Inv(w) => format!("! ({})", w.render()),
            W::Cat(a, b) => format!("{} * ({})", a.render_left(false), b.render()),
        }
    }

    /// Word syntax accepted by `hottloop winding`.
    pub fn render_word(&self) -> String {
        match self {
            W::Refl => "refl".into(),
            W::Loop => "loop".into(),
            W::Inv(w) => format!("!({})", w.render_word()),
            W::Cat(a, b) => format!("{} * ({})", a.render_left(true), b.render_word()),
        }
    }

    /// Left operand of `*`, which associates to the left.
    fn render_left(&self, word: bool) -> String {
        match (self, word) {
            (W::Cat(a, b), false) => format!("{} * ({})", a.render_left(false), b.render()),
            (W::Cat(a, b), true) => format!("{} * ({})", a.render_left(true), b.render_word()),
            (_, false) => format!("({})", self.render()),
            (_, true) => format!("({})", self.render_word()),
        }
    }

    /// A flat product of generators and their inverses, left to right.
    pub fn from_letters(signs: &[bool]) -> W {
        let letter = |pos: bool| {
            if pos {
                W::Loop
            } else {
                W::Inv(Box::new(W::Loop))
            }
        };
        let mut it = signs.iter();
        match it.next() {
            None => W::Refl,
            Some(&s) => it.fold(letter(s), |acc, &s| {
                W::Cat(Box::new(acc), Box::new(letter(s)))
            }),
        }
    }
}

/// Every flat word of exactly `n` letters, as sign vectors.
pub fn all_sign_vectors(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n).map(move |bits| (0..n).map(|i| bits >> i & 1 == 1).collect())
}

/// A random word tree with at most `max_letters` letters, mixing inverses of
/// composites and stray `refl`s.
pub fn random_word(rng: &mut impl Rng, max_letters: usize) -> W {
    let n = rng.gen_range(0..=max_letters);
    tree(rng, n)
}

fn tree(rng: &mut impl Rng, n: usize) -> W {
    let w = match n {
        0 => W::Refl,
        1 => {
            if rng.gen_bool(0.15) {
                W::Cat(Box::new(W::Loop), Box::new(W::Refl))
            } else {
                W::Loop
            }
        }
        _ => {
            let k = rng.gen_range(1..n);
            W::Cat(Box::new(tree(rng, k)), Box::new(tree(rng, n - k)))
        }
    };
    if rng.gen_bool(0.3) {
        W::Inv(Box::new(w))
    } else {
        w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ty {
    Nat,
    Int,
    S1,
    Omega,
}

/// A random closed surface term of type `ty`, built only from corpus and
/// kernel constructions whose typing is known by construction.
pub fn random_typed(rng: &mut impl Rng, ty: Ty, depth: usize) -> String {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    let sub = |rng: &mut _, t| random_typed(rng, t, depth.saturating_sub(1));
    match ty {
        Ty::Nat if leaf => numeral(rng.gen_range(0..3)),
        Ty::Nat => match rng.gen_range(0..7) {
            0 => format!("succ ({})", sub(rng, Ty::Nat)),
            1 => format!(
                "natrec (\\_. Nat) ({}) (\\k r. succ r) ({})",
                sub(rng, Ty::Nat),
                numeral(rng.gen_range(0..3))
            ),
            2 => {
                let b = sub(rng, Ty::Nat);
                format!("S1rec Nat ({b}) (refl Nat ({b})) ({})", sub(rng, Ty::S1))
            }
            3 => format!(
                "transport S1 (\\_. Nat) base base ({}) ({})",
                sub(rng, Ty::Omega),
                sub(rng, Ty::Nat)
            ),
            4 => format!("unpos ({})", sub(rng, Ty::Int)),
            5 => format!("predNat ({})", sub(rng, Ty::Nat)),
            _ => format!(
                "case (\\_. Nat) (\\x. x) (\\_. zero) (inl_fn Nat Unit ({}))",
                sub(rng, Ty::Nat)
            ),
        },
        Ty::Int if leaf => int_literal(rng.gen_range(-3..=3)),
        Ty::Int => match rng.gen_range(0..6) {
            0 => format!("succInt ({})", sub(rng, Ty::Int)),
            1 => format!("predInt ({})", sub(rng, Ty::Int)),
            2 => format!("encode base ({})", sub(rng, Ty::Omega)),
            3 => format!(
                "transport S1 Cover base base ({}) ({})",
                sub(rng, Ty::Omega),
                sub(rng, Ty::Int)
            ),
            4 => format!(
                "coe (ap Cover ({})) ({})",
                sub(rng, Ty::Omega),
                sub(rng, Ty::Int)
            ),
            _ => format!("winding ({})", sub(rng, Ty::Omega)),
        },
        Ty::S1 if leaf => "base".into(),
        Ty::S1 => match rng.gen_range(0..2) {
            0 => format!("S1rec S1 base loop ({})", sub(rng, Ty::S1)),
            _ => format!(
                "S1rec S1 base ({}) ({})",
                sub(rng, Ty::Omega),
                sub(rng, Ty::S1)
            ),
        },
        Ty::Omega if leaf => if rng.gen_bool(0.7) {
            "loop"
        } else {
            "refl S1 base"
        }
        .into(),
        Ty::Omega => match rng.gen_range(0..7) {
            0 => format!("({}) * ({})", sub(rng, Ty::Omega), sub(rng, Ty::Omega)),
            1 => format!("! ({})", sub(rng, Ty::Omega)),
            2 => format!("loopPow ({})", sub(rng, Ty::Int)),
            3 => format!("decode base ({})", sub(rng, Ty::Int)),
            4 => format!(
                "ap (S1rec S1 base ({})) ({})",
                sub(rng, Ty::Omega),
                sub(rng, Ty::Omega)
            ),
            5 => format!("inv S1 base base ({})", sub(rng, Ty::Omega)),
            _ => format!(
                "concat S1 base base base ({}) ({})",
                sub(rng, Ty::Omega),
                sub(rng, Ty::Omega)
            ),
        },
    }
}

fn numeral(n: usize) -> String {
    (0..n).fold("zero".to_string(), |acc, _| format!("succ ({acc})"))
}

/// Surface spelling of an integer, written out by hand from the encoding
/// `inl n = -(n+1)`, `inr (inl tt) = 0`, `inr (inr n) = n+1`.
pub fn int_literal(n: i64) -> String {
    match n {
        0 => "zeroInt".into(),
        n if n > 0 => format!("pos ({})", numeral(n as usize - 1)),
        n => format!("negsucc ({})", numeral((-n) as usize - 1)),
    }
}

/// One-step contractions of the overlap between the refl rules for path
/// operations and the compute-mode distribution of `ap`. Returns
/// `(reduce the refl first, distribute ap first)`.
pub fn critical_pair(t: &Term) -> Option<(Term, Term)> {
    let Term::Ap { cod, fun, path } = t else {
        return None;
    };
    let ap = |p: &hottloop_core::RcTerm| {
        Term::Ap {
            cod: cod.clone(),
            fun: fun.clone(),
            path: p.clone(),
        }
        .rc()
    };
    match &**path {
        Term::PathConcat(r, p) if matches!(**r, Term::Refl(..)) => {
            Some(((*ap(p)).clone(), Term::PathConcat(ap(r), ap(p))))
        }
        Term::PathConcat(p, r) if matches!(**r, Term::Refl(..)) => {
            Some(((*ap(p)).clone(), Term::PathConcat(ap(p), ap(r))))
        }
        Term::PathInv(r) if matches!(**r, Term::Refl(..)) => {
            Some(((*ap(r)).clone(), Term::PathInv(ap(r))))
        }
        _ => None,
    }
}

/// Functions out of the circle used to build critical pairs.
pub const CIRCLE_FUNCTIONS: &[&str] = &[
    "S1rec S1 base loop",
    "S1rec S1 base (loop * loop)",
    "S1rec S1 base (! loop)",
    "S1rec S1 base (refl S1 base)",
    "S1rec Nat zero (refl Nat zero)",
    "Cover",
    "\\x. x",
    "\\_. base",
];

/// At least `min` critical-pair instances as surface terms.
pub fn critical_pair_sources(rng: &mut impl Rng, min: usize) -> Vec<String> {
    let mut out = Vec::new();
    while out.len() < min {
        for f in CIRCLE_FUNCTIONS {
            let p = random_word(rng, 6).render();
            out.push(format!("ap ({f}) (refl S1 base * ({p}))"));
            out.push(format!("ap ({f}) (({p}) * refl S1 base)"));
            out.push(format!("ap ({f}) (! (refl S1 base))"));
        }
    }
    out
}

/// The core crate's directory, from either crate's tests.
pub fn core_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../core")
}

/// Closed subterms of the corpus whose type the checker can synthesize,
/// with that type, plus every definition body at its declared type.
pub fn closed_subterms() -> Vec<(String, Term, Term)> {
    let env = stdlib::environment();
    let ctx = Context::new();
    let mut out = Vec::new();
    for e in env.entries() {
        let Some(body) = &e.body else { continue };
        let mut stack = vec![body.clone()];
        while let Some(t) = stack.pop() {
            for (c, _) in t.children() {
                stack.push(c.clone());
            }
            if t.free_bound() > 0 || matches!(&*t, Term::Global(_)) || t.size() < 3 {
                continue;
            }
            let Ok(raw) = parse_term(&pretty_print(&t, &ctx)) else {
                continue;
            };
            if let Ok((_, ty)) = infer(env, &ctx, &raw) {
                out.push((e.name.to_string(), (*t).clone(), ty));
            }
        }
        out.push((e.name.to_string(), (**body).clone(), (*e.ty).clone()));
    }
    out
}

/// Normalize `t`, print it, re-parse it and check it against `ty`.
pub fn recheck(t: &Term, ty: &Term, cfg: EvalConfig) -> Result<(), String> {
    let env = stdlib::environment();
    let ctx = Context::new();
    let n = normalize(env, &ctx, t, cfg).map_err(|e| e.to_string())?;
    let printed = pretty_print(&n, &ctx);
    let raw = parse_term(&printed).map_err(|e| format!("{printed}: {e}"))?;
    check(env, &ctx, &raw, ty).map_err(|e| format!("{printed}: {e}"))?;
    Ok(())
}

pub fn negative_files() -> Vec<std::path::PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(core_dir().join("tests/negative"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "hott"))
        .collect();
    files.sort();
    files
}

/// The `-- expect: LINE:COL` marker of a negative file.
pub fn expected_position(text: &str) -> (usize, usize) {
    let marker = text
        .lines()
        .find_map(|l| l.strip_prefix("-- expect: "))
        .expect("missing expect marker");
    let (l, c) = marker.trim().split_once(':').unwrap();
    (l.parse().unwrap(), c.parse().unwrap())
}

/// A checked definition as source text.
pub fn render_entry(e: &hottloop_core::GlobalEntry) -> String {
    let ctx = Context::new();
    let body = e.body.as_ref().expect("corpus entries have bodies");
    format!(
        "def {} : {} := {};",
        e.name,
        pretty_print(&e.ty, &ctx),
        pretty_print(body, &ctx)
    )
}
