//! Text and JSON boundary: the expression parser, the canonical printer and
//! the JSON documents read and written by the command line tool.

pub mod json;
pub mod parse;
pub mod print;

pub use parse::{parse, parse_series, Signature};
pub use print::scalar_text;
