use std::path::PathBuf;
use std::process::ExitCode;

use acyclic_edge_coloring::commands::{self, Format, Report, RunConfig};
use acyclic_edge_coloring::generate::{CorpusSpec, Family};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Acyclic edge coloring of triangle-free 1-planar graphs.
#[derive(Parser)]
#[command(name = "aec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Palette size (default: max degree + 16).
    #[arg(long, global = true)]
    kappa: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Repair moves per attempt (default: 50 * |E|).
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true, default_value_t = 8)]
    restarts: usize,
    /// Output directory for instances, colorings and witnesses.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a corpus of drawings.
    Gen {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        n_min: usize,
        #[arg(long, default_value_t = 60)]
        n_max: usize,
        /// One of quadrangulation, subdivided-quadrangulation,
        /// grid-with-crossings, gear, named (default: all, round robin).
        #[arg(long)]
        family: Option<String>,
    },
    /// Color instances with the constructive colorer.
    Color { inputs: Vec<PathBuf> },
    /// Exact acyclic chromatic index of small instances.
    Exact { inputs: Vec<PathBuf> },
    /// Check a coloring file against a graph.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Run the discharging rules on drawings.
    Discharge { inputs: Vec<PathBuf> },
    /// Evaluate the structural conditions.
    Audit { inputs: Vec<PathBuf> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = cli.common;
    let config = RunConfig {
        kappa: c.kappa,
        seed: c.seed,
        budget: c.budget,
        restarts: c.restarts,
        format: match c.format {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        },
        out: c.out,
    };
    let report = match cli.command {
        Command::Gen { count, n_min, n_max, family } => {
            let family = match family.map(|f| f.parse::<Family>()).transpose() {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let spec = CorpusSpec { count, n_min, n_max, family, seed: config.seed };
            commands::cmd_gen(&spec, &config)
        }
        Command::Color { inputs } => commands::cmd_color(&inputs, &config),
        Command::Exact { inputs } => commands::cmd_exact(&inputs, &config),
        Command::Verify { graph, coloring } => commands::cmd_verify(&graph, &coloring, &config),
        Command::Discharge { inputs } => commands::cmd_discharge(&inputs, &config),
        Command::Audit { inputs } => commands::cmd_audit(&inputs, &config),
    };
    let Report { output, status } = report;
    print!("{output}");
    ExitCode::from(status.code() as u8)
}
