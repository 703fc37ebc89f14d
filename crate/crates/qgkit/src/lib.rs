//! Parser, file formats, configuration and command-line front end for
//! [`qgkit_core`].

pub mod cli;
pub mod config;
pub mod output;
pub mod parse;
pub mod relfile;

pub use cli::{run, Outcome};
pub use parse::{parse_expression, parse_scalar, ParseError};
