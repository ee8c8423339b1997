use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use vortexprox::descriptors::{MatchMode, MatchPolicy, ProbeId};
use vortexprox::proximity::Relation;
use vortexprox_cli::commands::{self, Context, Universe};
use vortexprox_cli::report::{Report, Timings};
use vortexprox_cli::CliError;

/// Proximal vortex cycles and vortex nerves on planar cell complexes.
///
/// Exit status: 0 when the report has no failures, 1 when it does, 2 on
/// errors (unreadable input, bad arguments). Set VORTEXPROX_EPS_GEO to
/// override the incidence tolerance.
#[derive(Parser)]
#[command(name = "vortexprox", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add wall-clock timings to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Any,
    All,
}

impl From<Mode> for MatchMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Any => MatchMode::Any,
            Mode::All => MatchMode::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Rel {
    Conn,
    Sconn,
    Dsconn,
}

impl From<Rel> for Relation {
    fn from(r: Rel) -> Self {
        match r {
            Rel::Conn => Relation::Conn,
            Rel::Sconn => Relation::Sconn,
            Rel::Dsconn => Relation::Dsconn,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum UniverseArg {
    Skeletons,
    Cycles,
    Vortices,
    Nerves,
}

impl From<UniverseArg> for Universe {
    fn from(u: UniverseArg) -> Self {
        match u {
            UniverseArg::Skeletons => Universe::Skeletons,
            UniverseArg::Cycles => Universe::Cycles,
            UniverseArg::Vortices => Universe::Vortices,
            UniverseArg::Nerves => Universe::Nerves,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Structural validation of every entity.
    Validate { path: PathBuf },
    /// Feature vectors per entity.
    Features {
        path: PathBuf,
        /// Comma separated probe names; default: every applicable probe.
        #[arg(long)]
        probes: Option<String>,
    },
    /// Descriptive connectedness between the entities of two documents.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        probes: String,
        #[arg(long, value_enum, default_value_t = Mode::Any)]
        mode: Mode,
    },
    /// Nerve detection over all vortex cycles.
    Nerves { path: PathBuf },
    /// Anchored Leader clusters with per-cluster CW checks.
    Clusters {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Rel::Conn)]
        relation: Rel,
        /// Required for dsconn.
        #[arg(long)]
        probes: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Any)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = UniverseArg::Skeletons)]
        universe: UniverseArg,
    },
    /// Betti numbers of the nerve and of the union of the 2-cells.
    Betti {
        path: PathBuf,
        #[arg(long, default_value_t = 512)]
        resolution: usize,
    },
    /// Nerve theorem check on the 2-cells.
    NerveTheorem {
        path: PathBuf,
        #[arg(long, default_value_t = 512)]
        resolution: usize,
    },
    /// Fuzz the proximity axioms over the skeletons.
    Axioms {
        path: PathBuf,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a seeded random valid complex document.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn probes(list: &str) -> Result<Vec<ProbeId>, CliError> {
    Ok(ProbeId::parse_list(list)?)
}

fn run(ctx: &Context, command: Command) -> Result<Report, CliError> {
    match command {
        Command::Validate { path } => commands::validate(ctx, &path),
        Command::Features { path, probes: p } => {
            let p = p.as_deref().map(probes).transpose()?;
            commands::features(ctx, &path, p.as_deref())
        }
        Command::Compare { a, b, probes: p, mode } => commands::compare(ctx, &a, &b, &probes(&p)?, mode.into()),
        Command::Nerves { path } => commands::nerves(ctx, &path),
        Command::Clusters {
            path,
            relation,
            probes: p,
            mode,
            universe,
        } => {
            let policy = match p {
                Some(p) => Some(MatchPolicy::new(&probes(&p)?, mode.into())?),
                None => None,
            };
            commands::clusters(ctx, &path, relation.into(), policy, universe.into())
        }
        Command::Betti { path, resolution } => commands::betti_cmd(ctx, &path, resolution),
        Command::NerveTheorem { path, resolution } => commands::nerve_theorem(ctx, &path, resolution),
        Command::Axioms { path, samples, seed } => commands::axioms(ctx, &path, samples, seed),
        Command::Generate { .. } => unreachable!("handled before dispatch"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Generate { seed } = cli.command {
        print!("{}", commands::generate(seed).emit());
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let outcome = Context::from_env().and_then(|ctx| run(&ctx, cli.command));
    match outcome {
        Ok(mut report) => {
            if cli.timings {
                report.timings = Some(Timings {
                    total_ms: start.elapsed().as_secs_f64() * 1e3,
                });
            }
            match cli.format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            for f in &report.failures {
                eprintln!("{} [{}] {}", f.entity, f.code, f.message);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(2)
        }
    }
}
