//! The `hottloop` command line: check files, normalize expressions, and
//! compute winding numbers of loop words.
//!
//! [`run`] does all the work against caller-supplied output streams so the
//! commands can be driven in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use hottloop_core::check::{self, kernel_environment, CheckConfig};
use hottloop_core::normalize::DEFAULT_STEP_BUDGET;
use hottloop_core::syntax::{parse_term, pretty_print};
use hottloop_core::winding::{winding, WindingError, Word};
use hottloop_core::{
    driver, int, normalize, stdlib, Context, Diagnostic, DiagnosticKind, EvalConfig, Span, Term,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_TYPE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_IO: i32 = 4;

pub fn exit_code(kind: DiagnosticKind) -> i32 {
    match kind {
        DiagnosticKind::Type => EXIT_TYPE,
        DiagnosticKind::Parse => EXIT_PARSE,
        DiagnosticKind::Budget => EXIT_BUDGET,
        DiagnosticKind::Io => EXIT_IO,
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "hottloop",
    version,
    about = "Checker for a small homotopy type theory with a circle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Type-check source files in order, each seeing the definitions of the ones before it.
    Check {
        /// Print `ok <name>` for every declaration that checks.
        #[arg(short, long)]
        verbose: bool,
        /// Reject motives that land in U1.
        #[arg(long)]
        no_large_elim: bool,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Infer the type of an expression and print its normal form.
    Normalize {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        /// Enable the circle computation rules.
        #[arg(short, long)]
        compute: bool,
        #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
        budget: u64,
        /// Use only the kernel postulates, not the standard library.
        #[arg(long)]
        no_prelude: bool,
        /// Print integers in constructor form.
        #[arg(long)]
        raw: bool,
    },
    /// Winding number of a word over loop, refl, ! and *.
    Winding {
        word: String,
        #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
        budget: u64,
    },
}

/// Run the command line `args` (including the program name) and return the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_PARSE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match cli.command {
        Command::Check {
            verbose,
            no_large_elim,
            files,
        } => {
            let cfg = CheckConfig {
                large_elimination: !no_large_elim,
                ..CheckConfig::default()
            };
            run_check(&files, cfg, verbose, out, err)
        }
        Command::Normalize {
            expr,
            compute,
            budget,
            no_prelude,
            raw,
        } => {
            let cfg = EvalConfig {
                compute_mode: compute,
                ..EvalConfig::default()
            }
            .with_budget(budget);
            run_normalize(&expr, cfg, !no_prelude, raw, out, err)
        }
        Command::Winding { word, budget } => run_winding(&word, budget, out, err),
    }
}

fn report(err: &mut dyn Write, diags: &[Diagnostic]) -> i32 {
    for d in diags {
        let _ = writeln!(err, "{d}");
    }
    diags
        .iter()
        .map(|d| d.kind)
        .max()
        .map_or(EXIT_OK, exit_code)
}

/// Check `files` in order on top of the kernel postulates.
pub fn run_check(
    files: &[PathBuf],
    cfg: CheckConfig,
    verbose: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut env = kernel_environment();
    let mut diags = Vec::new();
    for path in files {
        let name = path.display().to_string();
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                let d = Diagnostic::error(
                    DiagnosticKind::Io,
                    Span::default(),
                    format!("cannot open {name}: {e}"),
                );
                diags.push(d.with_file(name));
                continue;
            }
        };
        let before = env.len();
        diags.extend(driver::load_source(&mut env, &name, &text, cfg));
        if verbose {
            for entry in env.entries().skip(before) {
                let _ = writeln!(out, "ok {}", entry.name);
            }
        }
    }
    report(err, &diags)
}

/// The environment expressions are checked in.
fn expr_environment(prelude: bool) -> hottloop_core::Environment {
    if prelude {
        stdlib::environment().clone()
    } else {
        kernel_environment()
    }
}

/// Normalize a closed expression and print `nf : type`.
pub fn run_normalize(
    expr: &str,
    cfg: EvalConfig,
    prelude: bool,
    raw: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let tag = |d: Diagnostic| vec![d.with_file("<expr>")];
    let env = expr_environment(prelude);
    let ctx = Context::new();
    let parsed = match parse_term(expr) {
        Ok(r) => r,
        Err(d) => return report(err, &tag(d)),
    };
    let (t, ty) = match check::infer(&env, &ctx, &parsed) {
        Ok(r) => r,
        Err(d) => return report(err, &tag(d)),
    };
    let nf = match normalize(&env, &ctx, &t, cfg) {
        Ok(nf) => nf,
        Err(e) => {
            let d = Diagnostic::error(DiagnosticKind::Budget, parsed.span, e.to_string());
            return report(err, &tag(d));
        }
    };
    let _ = writeln!(out, "{}", render(&nf, &ty, prelude && !raw));
    EXIT_OK
}

fn render(nf: &Term, ty: &Term, fold_int: bool) -> String {
    let ctx = Context::new();
    if fold_int && *ty == int::int_type() {
        if let Some(n) = int::to_i64(nf) {
            return format!("{} : Int", int::show(n));
        }
        return format!("{} : Int", pretty_print(nf, &ctx));
    }
    format!("{} : {}", pretty_print(nf, &ctx), pretty_print(ty, &ctx))
}

/// Print the winding number of `word`.
pub fn run_winding(word: &str, budget: u64, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let w = match Word::parse(word) {
        Ok(w) => w,
        Err(d) => return report(err, &[d.with_file("<word>")]),
    };
    match winding(stdlib::environment(), &w, budget) {
        Ok(n) => {
            let _ = writeln!(out, "{n}");
            EXIT_OK
        }
        Err(WindingError::Eval(e)) => {
            let _ = writeln!(err, "<word>: error: {e}");
            EXIT_BUDGET
        }
        Err(e @ WindingError::NotAnInteger(_)) => {
            let _ = writeln!(err, "<word>: error: {e}");
            EXIT_TYPE
        }
    }
}
