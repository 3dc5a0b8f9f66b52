use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bezout::cli::{self, Command, Options, EXIT_INPUT};
use bezout::{ModulusBound, TermOrder};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bezout",
    version,
    about = "Construct, parametrize and certify Bezout identities over Q(i)"
)]
struct Args {
    #[command(subcommand)]
    command: Cmd,

    /// Input document (defaults to stdin).
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Output file (defaults to stdout).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Order::Grevlex)]
    order: Order,

    #[arg(long = "modulus-bound", global = true, value_enum, default_value_t = Modulus::Sum)]
    modulus_bound: Modulus,

    #[arg(long, global = true)]
    pretty: bool,

    /// Log glue stages to stderr.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Decide whether the generators have no common zero.
    Certify,
    /// Produce a verified Bezout certificate.
    Solve,
    /// Apply y = x + aH.
    Shift,
    /// Recover H from two solutions.
    Diff,
    /// Run the nested-polydisk gluing construction.
    Glue,
    /// Re-check a glue trace from scratch.
    Verify,
}

#[derive(ValueEnum, Clone, Copy)]
enum Order {
    Grevlex,
    Grlex,
    Lex,
}

#[derive(ValueEnum, Clone, Copy)]
enum Modulus {
    Sum,
    Sqrt,
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let level = if args.verbose {
        log::LevelFilter::Debug
    } else {
        log::LevelFilter::Warn
    };
    env_logger::Builder::new().filter_level(level).init();

    let command = match args.command {
        Cmd::Certify => Command::Certify,
        Cmd::Solve => Command::Solve,
        Cmd::Shift => Command::Shift,
        Cmd::Diff => Command::Diff,
        Cmd::Glue => Command::Glue,
        Cmd::Verify => Command::Verify,
    };
    let opts = Options {
        order: match args.order {
            Order::Grevlex => TermOrder::GrevLex,
            Order::Grlex => TermOrder::GrLex,
            Order::Lex => TermOrder::Lex,
        },
        modulus_bound: match args.modulus_bound {
            Modulus::Sum => ModulusBound::Sum,
            Modulus::Sqrt => ModulusBound::Sqrt,
        },
        pretty: args.pretty,
    };

    let input = match read_input(&args.input) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let outcome = cli::run(command, &input, &opts);
    eprint!("{}", outcome.stderr);
    let written = match &args.output {
        Some(p) => std::fs::write(p, &outcome.stdout),
        None => std::io::stdout().write_all(outcome.stdout.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_INPUT as u8);
    }
    ExitCode::from(outcome.code as u8)
}
