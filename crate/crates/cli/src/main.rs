use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use motzkin_cli::cache::Cache;
use motzkin_cli::commands::{default_cache_dir, load_polynomial, load_problem};
use motzkin_cli::parse::{parse_polynomial, OptionOverrides};
use motzkin_cli::{CliError, Format, Output, Session};

/// Exact densities of sets avoiding prescribed differences.
#[derive(Parser, Debug)]
#[command(name = "motzkin", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Largest Følner box radius.
    #[arg(long, global = true, value_name = "N")]
    max_folner: Option<u32>,
    /// Largest `|G|·(R-1)` for the window-state solver.
    #[arg(long, global = true, value_name = "B")]
    state_bits: Option<u32>,
    /// Grid size of the cosine linear program.
    #[arg(long, global = true, value_name = "G")]
    grid: Option<u32>,
    /// Coefficient radius of the dual lattice search.
    #[arg(long, global = true, value_name = "R")]
    dual_radius: Option<u32>,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory [default: $XDG_CACHE_HOME/motzkin or ~/.cache/motzkin].
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
    /// Flat `key=value` reports for density, bounds and batch.
    #[arg(long, global = true)]
    kv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact density when a complete method applies, else the best bounds.
    Density { file: PathBuf },
    /// Every applicable bound, with witnesses.
    Bounds { file: PathBuf },
    /// Sturm certificate for `1 + Σ c_k cos(2πkt)`.
    Certify {
        /// Polynomial file with `terms`, `support`/`coefficients` or `fejer`.
        #[arg(required_unless_present_any = ["terms", "fejer"])]
        file: Option<PathBuf>,
        /// Inline terms, e.g. `1:1553/6048, 3:209/252, 8:9/28`.
        #[arg(long, conflicts_with_all = ["file", "fejer"])]
        terms: Option<String>,
        /// The Fejér kernel of order N.
        #[arg(long, value_name = "N", conflicts_with = "file")]
        fejer: Option<u64>,
    },
    /// A verified extremal construction.
    Construct { file: PathBuf },
    /// `density` for several problem files.
    Batch {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

fn session(g: &Global) -> Session {
    let flags = OptionOverrides {
        max_folner: g.max_folner,
        state_bits: g.state_bits,
        grid: g.grid,
        dual_radius: g.dual_radius,
        ..OptionOverrides::default()
    };
    let cache = if g.no_cache {
        None
    } else {
        g.cache_dir.clone().or_else(default_cache_dir).map(Cache::new)
    };
    let format = if g.kv { Format::KeyValue } else { Format::Text };
    Session::new(flags, cache, format)
}

fn run(cli: &Cli) -> Result<(Output, bool), CliError> {
    let s = session(&cli.global);
    let done = |out: Output| (out, true);
    Ok(match &cli.command {
        Command::Density { file } => done(s.density(&load_problem(file)?)?),
        Command::Bounds { file } => done(s.bounds(&load_problem(file)?)?),
        Command::Construct { file } => done(s.construct(&load_problem(file)?)?),
        Command::Certify { file, terms, fejer } => {
            let c = match (file, terms, fejer) {
                (Some(f), _, _) => load_polynomial(f)?,
                (None, Some(t), _) => parse_polynomial(&format!("terms = {t}")).map_err(|source| CliError::Parse {
                    path: "--terms".into(),
                    source,
                })?,
                (None, None, Some(n)) => parse_polynomial(&format!("fejer = {n}")).map_err(|source| CliError::Parse {
                    path: "--fejer".into(),
                    source,
                })?,
                (None, None, None) => unreachable!("clap requires an input"),
            };
            done(s.certify(&c))
        }
        Command::Batch { files } => s.batch(files),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            for m in &out.messages {
                eprintln!("{m}");
            }
            print!("{}", out.body);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
