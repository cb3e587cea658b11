//! Batch driver: read a source file (or stdin), run lex -> parse -> eval,
//! results on stdout, positioned errors on stderr, exit code by failure
//! stage.

use crate::interp::{eval_program, initial_env, Env, WriteSink};
use crate::lexer::scan_all;
use crate::parser::parse_program;
use crate::syntax::{ast_to_text, Pos};
use std::io::{Read, Write};

pub const EXIT_OK: i32 = 0;
pub const EXIT_LEXICAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;
pub const EXIT_SYSTEM: i32 = 4;

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    /// Source path, `-` for stdin.
    pub input: String,
    pub ext: bool,
    /// Print the token stream instead of evaluating.
    pub dump_tokens: bool,
    /// Print the parsed program instead of evaluating.
    pub dump_ast: bool,
    /// Start from an empty environment instead of the prelude.
    pub no_prelude: bool,
}

pub enum ErrorKind {
    Lexical,
    Parse,
    Runtime,
    System,
}

/// Fixed stderr message formats.
pub fn render_error(kind: ErrorKind, message: &str, pos: Pos) -> String {
    match kind {
        ErrorKind::Lexical => format!("Lexical error: {message} at {pos}"),
        ErrorKind::Parse => format!("Parse-error at {pos}"),
        ErrorKind::Runtime => format!("Runtime error: {message} at {pos}"),
        ErrorKind::System => format!("Exception: {message}"),
    }
}

fn read_source(input: &str) -> std::io::Result<Vec<u8>> {
    if input == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        std::fs::read(input)
    }
}

/// Run the pipeline described by `config`, writing program output to
/// `out` and error messages to `err`; returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let source = match read_source(&config.input) {
        Ok(s) => s,
        Err(e) => {
            let msg = render_error(ErrorKind::System, &e.to_string(), Pos::new(1, 0));
            let _ = writeln!(err, "{msg}");
            return EXIT_SYSTEM;
        }
    };

    let tokens = match scan_all(&source, config.ext) {
        Ok(t) => t,
        Err(e) => {
            let msg = render_error(ErrorKind::Lexical, &e.message, e.pos);
            let _ = writeln!(err, "{msg}");
            return EXIT_LEXICAL;
        }
    };

    if config.dump_tokens {
        for tok in &tokens {
            let _ = writeln!(out, "{}", tok.dump_line());
        }
        return EXIT_OK;
    }

    let pgm = match parse_program(&tokens, config.ext) {
        Ok(p) => p,
        Err(e) => {
            let msg = render_error(ErrorKind::Parse, "", e.pos);
            let _ = writeln!(err, "{msg}");
            return EXIT_PARSE;
        }
    };

    if config.dump_ast {
        let _ = write!(out, "{}", ast_to_text(&pgm));
        return EXIT_OK;
    }

    let env = if config.no_prelude {
        Env::empty()
    } else {
        initial_env()
    };
    let mut sink = WriteSink(&mut *out);
    match eval_program(&pgm, env, &mut sink) {
        Ok(_) => EXIT_OK,
        Err(e) => {
            let msg = render_error(ErrorKind::Runtime, &e.message, e.pos);
            let _ = writeln!(err, "{msg}");
            EXIT_RUNTIME
        }
    }
}
