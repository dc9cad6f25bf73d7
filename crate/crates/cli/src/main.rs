//! `khdetect`: Khovanov homology of PD codes, knot table scans and the
//! five-dimensional classification run.

mod cache;
mod commands;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cache::ResultCache;
use commands::{CliError, Output, ScanOptions, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "khdetect", version, about = "Khovanov homology and knot detection checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Homology of one diagram.
    Compute {
        #[arg(long)]
        pd: String,
        /// Unreduced theory instead of reduced.
        #[arg(long)]
        unreduced: bool,
        #[arg(long, default_value_t = 14)]
        max_crossings: usize,
    },
    /// Reduced homology of every entry in a JSON knot table, as TSV.
    Scan {
        table: PathBuf,
        /// Total dimension the hypothesis asks for.
        #[arg(long, default_value_t = 5)]
        dim: u64,
        /// Only print entries supported in a single delta grading.
        #[arg(long)]
        thin: bool,
        /// Recompute cache hits and report divergence.
        #[arg(long, conflicts_with = "no_cache")]
        verify_cache: bool,
        #[arg(long)]
        no_cache: bool,
        #[arg(long, default_value_t = 14)]
        max_crossings: usize,
    },
    /// Run the classification of knot Floer shapes and print the JSON report.
    Classify {
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        dim: i64,
        #[arg(long, default_value_t = khdetect::hfk::DEFAULT_GENUS_BOUND, allow_negative_numbers = true)]
        genus_bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the PD code of the mirror diagram.
    Mirror {
        #[arg(long)]
        pd: String,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Compute { pd, unreduced, max_crossings } => commands::compute(&pd, !unreduced, max_crossings),
        Command::Scan { table, dim, thin, verify_cache, no_cache, max_crossings } => {
            let opts = ScanOptions {
                dim,
                thin_only: thin,
                verify_cache,
                cache: (!no_cache).then(ResultCache::from_env),
                max_crossings,
            };
            commands::scan(&table, &opts)
        }
        Command::Classify { dim, genus_bound, out } => commands::classify_cmd(dim, genus_bound, out.as_deref()),
        Command::Mirror { pd } => commands::mirror(&pd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let (out, code) = match run(cli) {
        Ok(o) => {
            let code = o.code;
            (o, code)
        }
        Err(e) => {
            let code = e.exit_code();
            (Output { stderr: vec![format!("error: {e}")], ..Default::default() }, code)
        }
    };
    let _ = std::io::stdout().lock().write_all(out.stdout.as_bytes());
    let mut err = std::io::stderr().lock();
    for line in &out.stderr {
        let _ = writeln!(err, "{line}");
    }
    ExitCode::from(code as u8)
}
