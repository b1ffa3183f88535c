//! Kernel of a small proof checker for a fragment of homotopy type theory:
//! core terms, the surface language, normalization and type checking.

// Diagnostics carry positions and printed terms; errors are rare, so they stay unboxed.
#![allow(clippy::result_large_err)]
pub mod check;
pub mod diagnostic;
pub mod driver;
pub mod env;
pub mod int;
pub mod normalize;
pub mod stdlib;
pub mod syntax;
pub mod term;
pub mod winding;

pub use diagnostic::{Diagnostic, DiagnosticKind, Severity, Span};
pub use env::{Environment, GlobalEntry};
pub use normalize::{normalize, EvalConfig, EvalError, Evaluator};
pub use term::{Context, Level, Name, RcTerm, Term};
