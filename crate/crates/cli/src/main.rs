use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod errors;

use errors::exit_code;

#[derive(Parser, Debug)]
#[command(name = "wsat", version, about = "Weak saturation numbers of graphs and trees")]
struct Cli {
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, env = "WSAT_THREADS", value_parser = clap::value_parser!(u16).range(1..=256))]
    threads: Option<u16>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
    G6,
    Text,
}

#[derive(Args, Debug)]
pub struct PatternArg {
    /// Pattern graph F, e.g. `path:4`, `cat:2,0,1`, `edges:4;0-1,1-2,2-3`.
    #[arg(long)]
    pub pattern: String,
}

#[derive(Args, Debug)]
pub struct HostArg {
    /// Host graph in the same notation as patterns.
    #[arg(long)]
    pub graph: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closure of a host under F-bootstrap percolation.
    Closure {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        pattern: PatternArg,
        /// Also run the process in a random order from this seed and compare.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Whether a host is weakly F-saturated.
    Saturated {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Exact w-sat(n, F) by sweeping core classes.
    Exact {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=64))]
        n: u16,
        /// Largest edge count tried.
        #[arg(long, value_parser = clap::value_parser!(u16).range(0..=10))]
        max_edges: Option<u16>,
    },
    /// Limit estimate of w-sat(n, T) for a tree T.
    Limit {
        #[command(flatten)]
        pattern: PatternArg,
        /// Largest host size tried; defaults to v(T) + 6.
        #[arg(long, value_parser = clap::value_parser!(u16).range(2..=64))]
        max_n: Option<u16>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(2..=10))]
        window: u16,
    },
    /// Closed-form bounds that apply to F.
    Formulas {
        #[command(flatten)]
        pattern: PatternArg,
        /// Evaluate the bounds at this host size.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Build a weakly saturated graph with a replayable certificate.
    Construct {
        #[command(flatten)]
        pattern: PatternArg,
        /// Host size; defaults to the construction's threshold.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=1024))]
        n: Option<u16>,
        #[arg(long, value_enum, default_value_t = commands::ConstructKind::Auto)]
        rule: commands::ConstructKind,
        /// Adjacent non-pendant pair `u,w` for the pair construction.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Decide whether a tree is good.
    Classify {
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// List trees on n vertices or cores with m edges, one per class.
    Enumerate {
        #[arg(value_enum)]
        kind: commands::EnumerateKind,
        /// Vertex count for trees.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=12))]
        n: Option<u16>,
        /// Edge count for cores.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=10))]
        max_edges: Option<u16>,
        /// Vertex bound for cores.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=20))]
        max_n: Option<u16>,
    },
    /// Run a claim's experiment and compare predictions with computation.
    Reproduce {
        #[arg(long)]
        claim: String,
        /// `key=value` pairs, comma separated or repeated.
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        /// Seed for randomized claims.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Replay a certificate file.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
        /// Accept a valid run that does not end at the complete graph.
        #[arg(long)]
        partial: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Closure { .. } => "closure",
            Command::Saturated { .. } => "saturated",
            Command::Exact { .. } => "exact",
            Command::Limit { .. } => "limit",
            Command::Formulas { .. } => "formulas",
            Command::Construct { .. } => "construct",
            Command::Classify { .. } => "classify",
            Command::Enumerate { .. } => "enumerate",
            Command::Reproduce { .. } => "reproduce",
            Command::Verify { .. } => "verify",
        }
    }
}

/// What a subcommand produced: renderings plus the process status.
pub struct Emitted {
    pub json: String,
    pub csv: Option<String>,
    pub g6: Option<String>,
    pub dot: Option<String>,
    pub text: String,
    /// `false` maps to exit code 1.
    pub ok: bool,
}

impl Emitted {
    fn render(&self, format: Format) -> Option<&str> {
        match format {
            Format::Json => Some(&self.json),
            Format::Text => Some(&self.text),
            Format::Csv => self.csv.as_deref(),
            Format::G6 => self.g6.as_deref(),
            Format::Dot => self.dot.as_deref(),
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let threads = cli.threads.map(usize::from);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().context("building the worker pool")?;
    let exec = if threads == Some(1) {
        wsat_core::Execution::Sequential
    } else {
        wsat_core::Execution::default()
    };
    let name = cli.command.name();
    let emitted = pool.install(|| commands::dispatch(cli.command, exec))?;
    let body = emitted
        .render(cli.format)
        .ok_or_else(|| {
            let format = cli.format.to_possible_value().expect("no skipped variants");
            errors::usage(format!("--format {} is not available for `{name}`", format.get_name()))
        })?;
    let mut body = body.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(emitted.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
