//! Text front end for causal multiteam models: a concrete formula grammar
//! with spans and pretty-printing, and parsers/writers for signature,
//! model, and description files.

pub mod error;
pub mod files;
pub mod lex;
pub mod parse;
pub mod print;
pub mod span;

pub use error::{CliError, CliResult};
pub use files::{
    parse_description, parse_model, parse_signature, write_description, write_model,
    write_signature,
};
pub use parse::{parse_co_formula, parse_formula, parse_intervention};
pub use print::{print_co, print_formula, print_rational};
pub use span::SourceSpan;
