//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Oracles come from `common`, which shares no code with the
//! kernel's own word or integer handling.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use hottloop_core::check::{check_decl, check_decls, kernel_environment, CheckConfig};
use hottloop_core::int::from_i64;
use hottloop_core::syntax::{parse_module, pretty_print, tokenize};
use hottloop_core::{driver, stdlib, Context, DiagnosticKind, EvalConfig, Term};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const CORPUS_LIMIT: Duration = Duration::from_secs(10);
const WINDING_LIMIT: Duration = Duration::from_secs(60);
const CORPUS_FILES: [&str; 5] = ["prelude", "coprod_codes", "integers", "pi1s1", "hedberg"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hottloop(args: &[String]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hottloop"))
        .args(args)
        .output()
        .unwrap()
}

fn cli(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("hottloop").chain(args.iter().copied());
    let code = hottloop::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn show(t: &Term) -> String {
    pretty_print(t, &Context::new())
}

fn corpus_check() -> Outcome {
    let mut args = vec!["check".to_string(), "-v".to_string()];
    args.extend(CORPUS_FILES.iter().map(|f| {
        core_dir()
            .join(format!("stdlib/{f}.hott"))
            .display()
            .to_string()
    }));
    let start = Instant::now();
    let o = hottloop(&args);
    let took = start.elapsed();
    ensure(o.status.code() == Some(0), || {
        format!(
            "exit {:?}: {}",
            o.status.code(),
            String::from_utf8_lossy(&o.stderr)
        )
    })?;
    let out = String::from_utf8_lossy(&o.stdout).into_owned();
    let env =
        stdlib::load(CheckConfig::default()).map_err(|e| format!("{} diagnostics", e.len()))?;
    let defs = env.entries().filter(|e| e.body.is_some()).count();
    ensure(defs >= 40, || format!("{defs} definitions"))?;
    for name in ["omega1_equiv_int", "inj_inl", "disjoint", "int_is_set"] {
        ensure(out.lines().any(|l| l == format!("ok {name}")), || {
            format!("{name} not checked")
        })?;
    }
    ensure(took < CORPUS_LIMIT, || format!("took {took:.2?}"))?;
    Ok(format!(
        "{defs} definitions, standard mode, {took:.2?} (limit {CORPUS_LIMIT:?})"
    ))
}

fn winding_soundness() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut one = |w: &W| -> Result<(), String> {
        let text = w.render_word();
        let (code, out) = cli(&["winding", &text]);
        let want = format!("{}\n", w.exponent_sum());
        ensure(code == 0 && out == want, || {
            format!("winding {text:?} gave {out:?} (exit {code}), oracle {want:?}")
        })?;
        checked += 1;
        Ok(())
    };
    for n in 0..=12 {
        for signs in all_sign_vectors(n) {
            one(&W::from_letters(&signs))?;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for _ in 0..500 {
        let w = random_word(&mut rng, 50);
        ensure(w.letters() <= 50, || "generator exceeded 50 letters".into())?;
        one(&w)?;
    }
    let took = start.elapsed();
    ensure(took < WINDING_LIMIT, || format!("took {took:.2?}"))?;
    Ok(format!(
        "{checked} words equal the exponent sum exactly, {took:.2?} (limit {WINDING_LIMIT:?})"
    ))
}

fn round_trips() -> Outcome {
    for n in -50..=50 {
        let got = nf(
            &format!("encode base (decode base ({}))", show(&from_i64(n))),
            true,
        );
        ensure(got == from_i64(n), || {
            format!("encode (decode {n}) = {}", show(&got))
        })?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    for _ in 0..200 {
        let w = random_word(&mut rng, 30);
        let lhs = nf(&format!("decode base (encode base ({}))", w.render()), true);
        let rhs = nf(
            &format!("loopPow ({})", int_literal(w.exponent_sum())),
            true,
        );
        ensure(lhs == rhs, || {
            format!("decode (encode {}) differs from loopPow", w.render())
        })?;
    }
    Ok("101 integers and 200 words (at most 30 letters)".into())
}

fn coproduct_theorems() -> Outcome {
    let got = show(&nf(
        "inj_inl Nat Unit zero zero (refl (Sum Nat Unit) (inl zero))",
        false,
    ));
    ensure(got == "refl Nat zero", || format!("inj_inl refl = {got}"))?;
    let bad = core_dir()
        .join("tests/negative/bad_disjoint.hott")
        .display()
        .to_string();
    let o = hottloop(&["check".into(), bad]);
    ensure(o.status.code() == Some(1), || {
        format!("bad_disjoint exit {:?}", o.status.code())
    })?;
    let cfg = CheckConfig {
        large_elimination: false,
        ..CheckConfig::default()
    };
    let mut env = kernel_environment();
    let mut failed = Vec::new();
    for (name, text) in stdlib::FILES {
        let errs = driver::load_source(&mut env, name, text, cfg);
        if errs.iter().any(|e| e.message.contains("large elimination")) {
            failed.push(name);
        }
    }
    for need in ["coprod_codes.hott", "pi1s1.hott"] {
        ensure(failed.contains(&need), || {
            format!("{need} checks without large elimination")
        })?;
    }
    Ok(format!(
        "inj_inl refl = refl; bad_disjoint exits 1; without large elimination {failed:?} fail"
    ))
}

fn conservativity_and_confluence() -> Outcome {
    const TYPES: [Ty; 4] = [Ty::Nat, Ty::Int, Ty::S1, Ty::Omega];
    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let mut premise = 0;
    for _ in 0..1000 {
        let ty = TYPES[rng.gen_range(0..TYPES.len())];
        let src = random_typed(&mut rng, ty, 4);
        let (t, _) = elab(&src);
        let (off, on) = (nf_term(&t, false), nf_term(&t, true));
        ensure(nf_term(&off, true) == on, || {
            format!("staged normalization differs on {src}")
        })?;
        if nf_term(&off, true) == off {
            premise += 1;
            ensure(on == off, || format!("modes differ on {src}"))?;
        }
    }
    ensure(premise >= 300, || {
        format!("only {premise} terms fully normal in standard mode")
    })?;
    let mut rng = StdRng::seed_from_u64(0x5eed_0012);
    let sources = critical_pair_sources(&mut rng, 50);
    ensure(sources.len() >= 50, || {
        format!("{} critical pairs", sources.len())
    })?;
    for src in &sources {
        let (t, _) = elab(src);
        let (l, r) = critical_pair(&t).ok_or_else(|| format!("{src} is not an overlap"))?;
        let whole = nf_term(&t, true);
        ensure(
            nf_term(&l, true) == whole && nf_term(&r, true) == whole,
            || format!("{src} diverges"),
        )?;
    }
    Ok(format!(
        "1000 terms ({premise} standard-normal agree exactly), {} critical pairs join",
        sources.len()
    ))
}

fn subject_reduction() -> Outcome {
    let all = closed_subterms();
    ensure(all.len() >= 100, || format!("only {} samples", all.len()))?;
    for (owner, t, ty) in &all {
        recheck(t, ty, EvalConfig::default()).map_err(|e| format!("in {owner}: {e}"))?;
    }
    Ok(format!(
        "{} corpus subterms re-check after normalization",
        all.len()
    ))
}

fn parser_round_trip() -> Outcome {
    let cfg = CheckConfig::default();
    let mut env = kernel_environment();
    let mut count = 0;
    for (file, text) in stdlib::FILES {
        for d in parse_module(text).map_err(|e| e.to_string())? {
            let first = check_decl(&env, &d, cfg).map_err(|e| format!("{file}: {e}"))?;
            let printed = render_entry(&first);
            let reparsed = parse_module(&printed).map_err(|e| format!("{printed}: {e}"))?;
            let second =
                check_decl(&env, &reparsed[0], cfg).map_err(|e| format!("{printed}: {e}"))?;
            ensure(first.ty == second.ty && first.body == second.body, || {
                format!("{} changed", d.name)
            })?;
            ensure(render_entry(&second) == printed, || {
                format!("{} prints differently", d.name)
            })?;
            ensure(check_decls(&mut env, &[d], cfg).is_empty(), || {
                format!("{file} failed")
            })?;
            count += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for _ in 0..10_000 {
        let len = rng.gen_range(0..64);
        let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
        let text = String::from_utf8_lossy(&bytes);
        if let Err(d) = tokenize(&text) {
            ensure(d.kind == DiagnosticKind::Parse, || {
                format!("{text:?} gave {d}")
            })?;
        }
    }
    Ok(format!(
        "{count} declarations idempotent; 10000 random byte strings tokenized without a crash"
    ))
}

fn negative_corpus() -> Outcome {
    let files = negative_files();
    ensure(files.len() >= 15, || format!("only {} files", files.len()))?;
    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(path).unwrap();
        let mut env = kernel_environment();
        let errs = driver::load_source(&mut env, &name, &text, CheckConfig::default());
        let first = errs.first().ok_or_else(|| format!("{name} accepted"))?;
        let want = expected_position(&text);
        ensure((first.line(), first.col()) == want, || {
            format!("{name}: {first}, expected {want:?}")
        })?;
        let tokens = tokenize(&text).map_err(|e| e.to_string())?;
        ensure(
            tokens.iter().any(|t| t.span.start == first.span.start),
            || format!("{name}: not at a token"),
        )?;
    }
    Ok(format!(
        "{} files rejected at the pinned token",
        files.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("corpus check", corpus_check),
        ("winding soundness", winding_soundness),
        ("round trips", round_trips),
        (
            "coproduct theorems and large elimination",
            coproduct_theorems,
        ),
        (
            "conservativity and confluence",
            conservativity_and_confluence,
        ),
        ("subject reduction", subject_reduction),
        ("parser round trip and fuzzing", parser_round_trip),
        ("negative corpus", negative_corpus),
    ];
    // keep panic messages inside the FAIL line
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {}. {title}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {}. {title}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
