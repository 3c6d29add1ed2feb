//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{run, Command};
use crate::config::{FloatList, IntList, RunConfig};
use crate::error::{CliError, CliResult};
use crate::format::Format;

pub const THREADS_ENV: &str = "KMWEYL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "kmweyl", version, about = "Weyl orbits, invariants and Calogero potentials of extended A-series algebras")]
pub struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub output: Option<Format>,
    /// TOML file with default values for any flag.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Args)]
pub struct AlgebraArg {
    /// Algebra as aNmM, e.g. a2m2 for (A₂)₋₂.
    #[arg(long)]
    pub algebra: Option<String>,
}

#[derive(Debug, Args)]
pub struct WordArg {
    /// Comma-separated labels, applied right to left.
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Orbit of a root under a word, one row per power.
    Orbit {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        word: WordArg,
        /// Root coefficients in label order.
        #[arg(long, allow_hyphen_values = true)]
        seed: Option<String>,
        /// Powers lo:hi.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// Order of a word, or "infinite".
    Order {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        word: WordArg,
        #[arg(long)]
        h_max: Option<u64>,
    },
    /// Minimal recurrence of the powers of a word and its characteristic roots.
    Recurrence {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        word: WordArg,
        /// Acceptance threshold of the closed-form check.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Basis of the Weyl-invariant polynomials of one degree.
    Invariants {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Checks W(σ₋) + W(σ₊) = 2 − K for a bicolour factorization.
    Kostant {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// First half of the factorization; defaults to the bicolouration.
        #[arg(long, allow_hyphen_values = true)]
        minus: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        plus: Option<String>,
    },
    /// Coxeter angles from the Cartan spectrum.
    Angles {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        h_max: Option<u64>,
    },
    /// Real roots inside per-label coefficient bounds.
    Roots {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// lo:hi per label, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        bounds: Option<String>,
    },
    /// Calogero potential tools.
    Potential {
        #[command(subcommand)]
        command: PotentialCmd,
    },
    /// Labels, edges and Cartan matrix of a diagram.
    Diagram {
        #[command(flatten)]
        algebra: AlgebraArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum PotentialCmd {
    /// Matches Diophantine terms against Coxeter orbits.
    Match {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// affine, hyperbolic or lorentzian.
        #[arg(long)]
        mode: Option<String>,
        /// Upper coefficient bound of the free labels.
        #[arg(long)]
        level: Option<i64>,
        /// Orbit powers |k| ≤ kwindow.
        #[arg(long)]
        kwindow: Option<i64>,
        #[arg(long)]
        g: Option<f64>,
    },
    /// Evaluates a closed form at a point.
    Eval {
        /// affine-closed, partial-1, partial-2, partial-v1, partial-v2 or partial-v1v2.
        #[arg(long)]
        form: Option<String>,
        /// Ambient coordinates, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<f64>,
    },
}

fn ints(s: Option<String>) -> Option<IntList> {
    s.map(IntList::Text)
}

impl Cli {
    /// The subcommand and the flag values as a config layer.
    pub fn into_parts(self) -> (Command, RunConfig, Option<PathBuf>) {
        let mut c = RunConfig { output: self.output, ..RunConfig::default() };
        let cmd = match self.command {
            Cmd::Orbit { algebra, word, seed, range } => {
                c.algebra = algebra.algebra;
                c.word = ints(word.word);
                c.seed = ints(seed);
                c.range = range;
                Command::Orbit
            }
            Cmd::Order { algebra, word, h_max } => {
                c.algebra = algebra.algebra;
                c.word = ints(word.word);
                c.h_max = h_max;
                Command::Order
            }
            Cmd::Recurrence { algebra, word, tolerance } => {
                c.algebra = algebra.algebra;
                c.word = ints(word.word);
                c.tolerance = tolerance;
                Command::Recurrence
            }
            Cmd::Invariants { algebra, degree } => {
                c.algebra = algebra.algebra;
                c.degree = degree;
                Command::Invariants
            }
            Cmd::Kostant { algebra, minus, plus } => {
                c.algebra = algebra.algebra;
                c.minus = ints(minus);
                c.plus = ints(plus);
                Command::Kostant
            }
            Cmd::Angles { algebra, h_max } => {
                c.algebra = algebra.algebra;
                c.h_max = h_max;
                Command::Angles
            }
            Cmd::Roots { algebra, bounds } => {
                c.algebra = algebra.algebra;
                c.bounds = bounds;
                Command::Roots
            }
            Cmd::Potential { command: PotentialCmd::Match { algebra, mode, level, kwindow, g } } => {
                c.algebra = algebra.algebra;
                c.mode = mode;
                c.level = level;
                c.kwindow = kwindow;
                c.coupling = g;
                Command::PotentialMatch
            }
            Cmd::Potential { command: PotentialCmd::Eval { form, q, g } } => {
                c.form = form;
                c.q = q.map(FloatList::Text);
                c.coupling = g;
                Command::PotentialEval
            }
            Cmd::Diagram { algebra } => {
                c.algebra = algebra.algebra;
                Command::Diagram
            }
        };
        (cmd, c, self.config)
    }
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => b = b.num_threads(n),
            _ => return Err(CliError::Validation(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
        }
    }
    b.build().map_err(|e| CliError::Validation(format!("thread pool: {e}")))
}

/// Parses `argv`, runs the subcommand and returns the report.
pub fn execute(cli: Cli) -> CliResult<String> {
    let (cmd, flags, path) = cli.into_parts();
    let base = match path {
        Some(p) => RunConfig::load(&p)?,
        None => RunConfig::default(),
    };
    let cfg = base.overlay(flags);
    thread_pool()?.install(|| run(cmd, &cfg))
}

/// Full command-line entry point; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("kmweyl: {e}");
            e.exit_code()
        }
    }
}
