//! Surface language: tokens, raw terms, parser and pretty-printer.

pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod raw;

pub use lexer::{tokenize, Prim, Tok, Token};
pub use parser::{parse_module, parse_term};
pub use pretty::{pretty_print, pretty_with_names};
pub use raw::{Binder, Decl, RawKind, RawTerm};
