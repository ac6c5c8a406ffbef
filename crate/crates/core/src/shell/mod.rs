//! Expression parser, file emitters and the command line.

pub mod cli;
pub mod emit;
pub mod parser;
