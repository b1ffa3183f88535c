//! The shipped `.hott` corpus, embedded in the binary.

use std::sync::OnceLock;

use crate::check::CheckConfig;
use crate::diagnostic::Diagnostic;
use crate::driver::load_source;
use crate::env::Environment;

/// Corpus files in dependency order, as `(file name, source)`.
pub const FILES: [(&str, &str); 5] = [
    ("prelude.hott", include_str!("../stdlib/prelude.hott")),
    (
        "coprod_codes.hott",
        include_str!("../stdlib/coprod_codes.hott"),
    ),
    ("integers.hott", include_str!("../stdlib/integers.hott")),
    ("pi1s1.hott", include_str!("../stdlib/pi1s1.hott")),
    ("hedberg.hott", include_str!("../stdlib/hedberg.hott")),
];

/// Check the whole corpus on top of the kernel postulates.
pub fn load(cfg: CheckConfig) -> Result<Environment, Vec<Diagnostic>> {
    let mut env = crate::check::kernel_environment();
    let mut errors = Vec::new();
    for (name, text) in FILES {
        errors.extend(load_source(&mut env, name, text, cfg));
    }
    if errors.is_empty() {
        Ok(env)
    } else {
        Err(errors)
    }
}

/// The corpus checked with the default configuration, shared process-wide.
///
/// # Panics
///
/// Panics if the shipped corpus does not check.
pub fn environment() -> &'static Environment {
    static ENV: OnceLock<Environment> = OnceLock::new();
    ENV.get_or_init(|| match load(CheckConfig::default()) {
        Ok(env) => env,
        Err(errors) => {
            let shown: Vec<String> = errors.iter().map(|e| e.to_string()).collect();
            panic!("the standard corpus does not check:\n{}", shown.join("\n"))
        }
    })
}
