use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use delpezzo_core::corpus::CorpusConfig;
use delpezzo_core::report::{self, Emitted, Format, Status};

/// Classify degree-one del Pezzo surfaces and broken components from
/// branch data given as JSON.
///
/// Exit status: 0 success, 1 crosscheck disagreement, 2 rejected input
/// (unstable, incompatible, not realizable), 3 structurally invalid input,
/// 4 unreadable or malformed input.
#[derive(Debug, Parser)]
#[command(name = "delpezzo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fibers, stable pair and GIT verdict of a cubic on the quadric cone.
    ClassifyCone(InputArgs),
    /// Branch-curve fiber types against the Weierstrass valuation table.
    Crosscheck(InputArgs),
    /// Gluing fiber, special divisor and interior fibers of one component.
    ClassifyComponent(InputArgs),
    /// Glue the two components of `{"components": [..]}`.
    Glue(InputArgs),
    /// Seeded corpus of random cubics with aggregate invariants.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest absolute value of a coefficient.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    height: u32,
    /// Number of accepted samples.
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

fn with_input(name: &'static str, args: &InputArgs, run: fn(&str, Format) -> Emitted) -> Emitted {
    let format = args.output.format.into();
    match fs::read_to_string(&args.input) {
        Ok(text) => run(&text, format),
        Err(e) => report::unreadable_input(name, format!("{}: {e}", args.input.display()), format),
    }
}

fn emit(emitted: &Emitted, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, &emitted.body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", emitted.body);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Status::Parse.code() as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (emitted, out) = match &cli.command {
        Command::ClassifyCone(a) => (with_input("classify-cone", a, report::run_classify_cone), &a.output.out),
        Command::Crosscheck(a) => (with_input("crosscheck", a, report::run_crosscheck), &a.output.out),
        Command::ClassifyComponent(a) => {
            (with_input("classify-component", a, report::run_classify_component), &a.output.out)
        }
        Command::Glue(a) => (with_input("glue", a, report::run_glue), &a.output.out),
        Command::Corpus(a) => {
            let config = CorpusConfig {
                seed: a.seed,
                height: a.height,
                count: a.count,
            };
            (report::run_corpus_report(&config, a.output.format.into()), &a.output.out)
        }
    };
    if let Err(e) = emit(&emitted, out.as_ref()) {
        eprintln!("error: {e:#}");
        return ExitCode::from(Status::Parse.code() as u8);
    }
    ExitCode::from(emitted.status.code() as u8)
}
