use std::ops::Range;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use refdyn_core::billiards::Word;
use refdyn_core::germs::DEFAULT_TRUNCATION;
use refdyn_core::report::{self, RunReport, SystemChoice, TriangleOptions};

#[derive(Parser)]
#[command(name = "refdyn", version, about = "Dynamical degrees of compositions of reflections on cubic hypersurfaces")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Decimal digits of every printed enclosure.
    #[arg(long, default_value_t = 9, global = true)]
    precision: u32,
    /// Record wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce a degree tuple with its certificates.
    Reproduce {
        #[command(subcommand)]
        target: Target,
    },
    /// Pointwise reflections on a cubic surface with a line and conic.
    Billiard {
        #[command(subcommand)]
        cmd: BilliardCmd,
    },
    /// Curve traits under the triangle reflections.
    Germ {
        #[command(subcommand)]
        cmd: GermCmd,
    },
    /// Orbits on an elliptic plane section.
    Elliptic {
        #[command(subcommand)]
        cmd: EllipticCmd,
    },
    /// Degree transition systems.
    Transition {
        #[command(subcommand)]
        cmd: TransitionCmd,
    },
}

#[derive(Subcommand)]
enum Target {
    /// N reflection points in very general position.
    General {
        #[arg(long)]
        n: u32,
        /// Steps of the elliptic avoidance check.
        #[arg(long, default_value_t = 200)]
        horizon: usize,
    },
    /// Two points on a line and one on the residual conic.
    ConicLine,
    /// Vertices of a triangle of lines.
    Triangle {
        #[arg(long, default_value_t = 60)]
        steps: usize,
        #[arg(long, default_value_t = 10)]
        draws: usize,
        #[arg(long, default_value_t = 30)]
        series_steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncation: usize,
    },
}

#[derive(Subcommand)]
enum BilliardCmd {
    Build {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Orbit {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start point `(x0:x1:x2:x3)` on the surface; defaults to `a + 2b`.
        #[arg(long)]
        start: Option<String>,
        /// Word in p, q, r; the rightmost letter acts first.
        #[arg(long, default_value = "pqrpqr")]
        word: String,
        #[arg(long, default_value_t = 12)]
        steps: usize,
    },
    Check {
        #[arg(long, conflicts_with = "seed_range")]
        seed: Option<u64>,
        /// Half-open range `a..b`.
        #[arg(long, default_value = "0..1000")]
        seed_range: String,
        #[arg(long, default_value_t = 300)]
        horizon: usize,
    },
}

#[derive(Subcommand)]
enum GermCmd {
    Evolve {
        #[arg(long, default_value_t = 30)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncation: usize,
    },
    Pairs {
        #[arg(long, default_value_t = 60)]
        steps: usize,
    },
}

#[derive(Subcommand)]
enum EllipticCmd {
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        horizon: usize,
    },
}

#[derive(Subcommand)]
enum TransitionCmd {
    Growth {
        #[arg(long, default_value = "conic-line")]
        system: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// JSON transition system `{"period": k, "matrices": [...]}`; overrides --system.
        #[arg(long)]
        matrix_file: Option<PathBuf>,
        /// Entry whose growth fills the ratio column (with --matrix-file).
        #[arg(long, default_value_t = 0)]
        tracked: usize,
    },
}

fn parse_range(s: &str) -> Result<Range<u64>> {
    let (a, b) = s.split_once("..").with_context(|| format!("seed range {s:?} is not of the form a..b"))?;
    let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
    if a >= b {
        bail!("empty seed range {s:?}");
    }
    Ok(a..b)
}

fn run(cmd: &Command, digits: u32) -> Result<RunReport> {
    Ok(match cmd {
        Command::Reproduce { target } => match target {
            Target::General { n, horizon } => report::reproduce_general(*n, digits, *horizon)?,
            Target::ConicLine => report::reproduce_conic_line(digits)?,
            Target::Triangle { steps, draws, series_steps, seed, truncation } => {
                let opts = TriangleOptions {
                    steps: *steps,
                    draws: *draws,
                    series_steps: *series_steps,
                    seed: *seed,
                    truncation: *truncation,
                };
                report::reproduce_triangle(digits, &opts)?
            }
        },
        Command::Billiard { cmd } => match cmd {
            BilliardCmd::Build { seed } => report::billiard_build(*seed)?.0,
            BilliardCmd::Orbit { seed, start, word, steps } => {
                let w: Word = word.parse().with_context(|| format!("bad word {word:?}"))?;
                report::billiard_orbit(*seed, start.as_deref(), &w, *steps)?
            }
            BilliardCmd::Check { seed, seed_range, horizon } => {
                let range = match seed {
                    Some(s) => *s..s + 1,
                    None => parse_range(seed_range)?,
                };
                report::billiard_check(range, *horizon, digits)?
            }
        },
        Command::Germ { cmd } => match cmd {
            GermCmd::Evolve { steps, seed, truncation } => report::germ_evolve(*steps, *seed, *truncation)?,
            GermCmd::Pairs { steps } => report::germ_pairs(*steps)?,
        },
        Command::Elliptic { cmd: EllipticCmd::Check { n, horizon } } => report::elliptic_check(*n, *horizon)?,
        Command::Transition { cmd: TransitionCmd::Growth { system, steps, matrix_file, tracked } } => match matrix_file {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let sys = report::parse_system(&text)?;
                if *tracked >= sys.dim() {
                    bail!("--tracked {tracked} out of range for dimension {}", sys.dim());
                }
                let v0 = refdyn_core::StateVector::basis(sys.dim(), *tracked);
                report::transition_growth_with(&path.display().to_string(), &sys, &v0, *tracked, *steps, digits)?
            }
            None => report::transition_growth(system.parse::<SystemChoice>()?, *steps, digits)?,
        },
    })
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("REFDYN_THREADS") {
        let n: usize = v.parse().with_context(|| format!("REFDYN_THREADS={v:?} is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| {
        let t0 = Instant::now();
        let mut r = run(&cli.command, cli.common.precision)?;
        if cli.common.timing {
            r.timing_ms = Some(t0.elapsed().as_millis() as u64);
        }
        let text = match cli.common.format {
            Format::Json => r.to_json() + "\n",
            Format::Csv => r.to_csv(),
        };
        match &cli.common.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => print!("{text}"),
        }
        Ok(r.passed())
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
