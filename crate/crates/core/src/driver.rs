//! Parsing and checking whole sources into an environment.

use crate::check::{check_decls, CheckConfig};
use crate::diagnostic::Diagnostic;
use crate::env::Environment;
use crate::syntax::parse_module;

/// Parse `text` and check its declarations into `env`. A parse error stops
/// the file; type errors are collected per declaration. Every diagnostic is
/// tagged with `file`.
pub fn load_source(
    env: &mut Environment,
    file: &str,
    text: &str,
    cfg: CheckConfig,
) -> Vec<Diagnostic> {
    match parse_module(text) {
        Ok(decls) => check_decls(env, &decls, cfg)
            .into_iter()
            .map(|d| d.with_file(file))
            .collect(),
        Err(d) => vec![d.with_file(file)],
    }
}
