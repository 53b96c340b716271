use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use omegalim::cli::{self, Command, CommandRequest, OutputFormat};

#[derive(Parser)]
#[command(name = "omegalim", version, about = "Limits of sequences as numbers in w")]
struct Args {
    /// Number of terms kept in expansions.
    #[arg(long, global = true, env = "OMEGALIM_DEPTH", default_value_t = cli::DEFAULT_DEPTH as u32,
          value_parser = clap::value_parser!(u32).range(1..))]
    depth: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    output: Format,

    /// Shorthand for `--output json`.
    #[arg(long, global = true)]
    json: bool,

    /// Print the variable as ω.
    #[arg(long, global = true)]
    unicode: bool,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Sub {
    /// Limit of a sequence in n, truncated to the depth.
    Limit {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Leading term of the limit.
    Lead {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Order two values in w.
    Compare {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Ordered chain of a generation of prototypes.
    Table {
        #[arg(long, short)]
        generation: u32,
    },
    /// Evaluate at a finite index.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// A number, `exp(m)` or `exp^h(m)`.
        #[arg(long)]
        at: String,
    },
    /// Pick the leading term of sampled data among candidates.
    Fit {
        /// CSV or JSON samples; `-` reads stdin.
        file: PathBuf,
        /// Comma-separated prototypes.
        #[arg(long)]
        candidates: String,
    },
    /// Check a symbolic comparison against numeric evaluation.
    Check {
        a: String,
        b: String,
        /// Comma-separated indices.
        #[arg(long)]
        schedule: Option<String>,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.command {
        Sub::Limit { expr } => Command::Limit { expr },
        Sub::Lead { expr } => Command::Lead { expr },
        Sub::Compare { a, b } => Command::Compare { a, b },
        Sub::Table { generation } => Command::Table { generation },
        Sub::Eval { expr, at } => Command::Eval { expr, at },
        Sub::Fit { file, candidates } => Command::Fit { file, candidates },
        Sub::Check { a, b, schedule } => Command::Check { a, b, schedule },
    };
    let output = match (args.json, args.output) {
        (true, _) | (_, Format::Json) => OutputFormat::Json,
        _ => OutputFormat::Text,
    };
    let req = CommandRequest { command, depth: args.depth as usize, output, unicode: args.unicode };
    let out = cli::run(&req);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
