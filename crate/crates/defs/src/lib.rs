//! A small definition-list calculator language: a position-tracking
//! lexer, a precedence-driven parser and a dynamically typed
//! tree-walking interpreter, plus the batch driver used by the `defs`
//! binary.
//!
//! A program is a sequence of `name = expression` definitions; each one
//! is evaluated against an association-list environment and echoed as
//! `name=value`. The optional grammar extension adds definition-level
//! conditionals and `while ... do ... end` loops.

pub mod cli;
pub mod interp;
pub mod lexer;
pub mod parser;
pub mod syntax;

pub use cli::{run, RunConfig};
pub use interp::{eval_program, initial_env, Env, RunError, Value};
pub use lexer::{scan_all, LexicalError, Token, TokenKind};
pub use parser::{parse_expression, parse_program, ParseError};
pub use syntax::{ast_to_text, Def, Exp, Pgm, Pos};
