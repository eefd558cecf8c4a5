use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use realflag_core::catalog::DEFAULT_N;
use realflag_core::linalg::DEFAULT_TOL;
use realflag_core::sphericality::DEFAULT_SAMPLES;

use crate::cache::cache_dir;
use crate::commands::{self, Outcome, Sampling, Session};
use crate::error::AppResult;
use crate::report::{ErrorBody, ErrorReport, SCHEMA};

#[derive(Debug, Parser)]
#[command(name = "realflag", version, about = "Open-orbit checks for subalgebras of real rank-one Lie algebras")]
pub struct Cli {
    /// Directory for the f4 cache (default: $REALFLAG_CACHE_DIR or .realflag-cache).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

impl From<SamplingArgs> for Sampling {
    fn from(a: SamplingArgs) -> Self {
        Sampling { samples: a.samples, seed: a.seed, tol: a.tol }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sphericality report for a catalog pair or a spec file.
    Check {
        #[arg(long, required_unless_present = "spec_file", conflicts_with = "spec_file")]
        pair: Option<String>,
        #[arg(long)]
        spec_file: Option<PathBuf>,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
    },
    /// Orbit structure of subalgebras inside the minimal parabolic.
    Orbits {
        #[command(subcommand)]
        mode: OrbitsCommand,
    },
    /// List the named pairs.
    Catalog {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
    },
    Reduce {
        #[command(subcommand)]
        mode: ReduceCommand,
    },
    F4 {
        #[command(subcommand)]
        mode: F4Command,
    },
    Batch {
        #[command(subcommand)]
        mode: BatchCommand,
    },
    Algebra {
        #[command(subcommand)]
        mode: AlgebraCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrbitsCommand {
    /// Number and types of orbits on the flag manifold.
    Count {
        #[arg(long)]
        pair: String,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Compare orbit dimensions of `--pair` and a larger `--sup`.
    Coincide {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        sup: String,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// Induced pair for one simple root; `--alpha` indexes the simple roots.
    Step {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        alpha: usize,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum F4Command {
    /// Build or load f4 and run its invariant checks.
    Verify {
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum BatchCommand {
    /// Check every catalog entry against its expectation.
    Verify {
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCommand {
    /// Print a named algebra in the JSON interchange format.
    Export {
        #[arg(long)]
        name: String,
    },
}

fn dispatch(cli: Cli) -> AppResult<Outcome> {
    let dir = cache_dir(cli.cache_dir.as_deref());
    match cli.command {
        Command::Check { pair, spec_file, sampling, n } => match (pair, spec_file) {
            (Some(p), _) => commands::check_pair(&Session::new(dir, n), &p, sampling.into()),
            (None, Some(f)) => commands::check_spec_file(&f, sampling.into()),
            (None, None) => unreachable!("clap requires one of --pair and --spec-file"),
        },
        Command::Orbits { mode } => {
            let session = Session::new(dir, DEFAULT_N);
            match mode {
                OrbitsCommand::Count { pair, sampling } => commands::orbit_count(&session, &pair, sampling.into()),
                OrbitsCommand::Coincide { pair, sup, sampling } => {
                    commands::orbit_coincide(&session, &pair, &sup, sampling.into())
                }
            }
        }
        Command::Catalog { json, n } => commands::catalog_cmd(n, json),
        Command::Reduce { mode: ReduceCommand::Step { pair, alpha, sampling } } => {
            commands::reduce(&Session::new(dir, DEFAULT_N), &pair, alpha, sampling.into())
        }
        Command::F4 { mode: F4Command::Verify { samples, seed } } => {
            commands::f4_verify(&Session::new(dir, DEFAULT_N), samples, seed)
        }
        Command::Batch { mode: BatchCommand::Verify { n, json, sampling } } => {
            commands::batch(&Session::new(dir, n), n, sampling.into(), json)
        }
        Command::Algebra { mode: AlgebraCommand::Export { name } } => {
            commands::export_algebra(&Session::new(dir, DEFAULT_N), &name)
        }
    }
}

/// Runs a parsed command line. Failures become a JSON error object on
/// stdout, a message on stderr, and exit code 2 or 3.
pub fn run(cli: Cli) -> Outcome {
    match dispatch(cli) {
        Ok(out) => out,
        Err(e) => {
            let body = ErrorReport { schema: SCHEMA, error: ErrorBody { kind: e.kind().into(), message: e.to_string() } };
            Outcome {
                code: e.exit_code(),
                stdout: commands::to_pretty(&body).unwrap_or_default(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}
