//! Definition language and command implementations behind the `problema`
//! binary.

pub mod args;
pub mod ast;
pub mod commands;
pub mod diag;
pub mod lexer;
pub mod parser;
pub mod predicate;
pub mod report;
pub mod tm;
pub mod workspace;
