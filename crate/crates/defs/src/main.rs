use clap::error::ErrorKind as ClapErrorKind;
use clap::Parser;
use defs::cli::{run, RunConfig, EXIT_SYSTEM};

/// Interpreter for the definition-list calculator language.
#[derive(Parser, Debug)]
#[command(name = "defs", disable_version_flag = true)]
struct Args {
    /// Source file, or `-` for standard input
    file: String,

    /// Enable the grammar extension (conditional definitions and while loops)
    #[arg(long)]
    ext: bool,

    /// Start with an empty environment instead of the prelude
    #[arg(long)]
    no_prelude: bool,

    /// Print the token stream and exit without evaluating
    #[arg(long, conflicts_with = "dump_ast")]
    dump_tokens: bool,

    /// Print the parsed program and exit without evaluating
    #[arg(long)]
    dump_ast: bool,
}

fn main() {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if matches!(e.kind(), ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion) => {
            print!("{e}");
            std::process::exit(0);
        }
        Err(e) => {
            eprint!("{e}");
            std::process::exit(EXIT_SYSTEM);
        }
    };

    let config = RunConfig {
        input: args.file,
        ext: args.ext,
        dump_tokens: args.dump_tokens,
        dump_ast: args.dump_ast,
        no_prelude: args.no_prelude,
    };
    let code = run(&config, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
