//! Text formats: the polynomial grammar, the canonical printer, problem files,
//! JSON reports, and the built-in fixture corpus.

pub mod fixtures;
mod parse;
mod print;
pub mod problem;
pub mod report;

pub use parse::{parse_poly, ParseError, ParseErrorKind, MAX_EXPONENT};
pub use print::{print_canonical, print_jet};
pub use problem::{Problem, ProblemError, ProblemFile};
