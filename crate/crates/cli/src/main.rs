use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypcascade::cascade::{DirectionPolicy, ModelParams};
use hypcascade::verify::SuiteOptions;
use hypcascade_cli::archive::RunArchive;
use hypcascade_cli::commands::{self, ModelChoice};
use hypcascade_cli::CliError;

#[derive(Parser)]
#[command(name = "hypcascade", version, about = "Splitting particles in the hyperbolic plane")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate cascades and write a run archive.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "run.json")]
        out: PathBuf,
        /// Stamp the archive with the wall clock instead of SOURCE_DATE_EPOCH.
        #[arg(long)]
        stamp_now: bool,
    },
    /// Closed-form mean curve and its companions as CSV.
    Analyze {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value = "curve.csv")]
        out: PathBuf,
    },
    /// Mean cosh-distance of splinter k as CSV.
    Splinter {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value = "splinter.csv")]
        out: PathBuf,
    },
    /// Run verification checks; exit status 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Monte Carlo replications per case.
        #[arg(long, default_value_t = 100_000)]
        reps: u64,
        /// Relative perturbation injected into every reference value.
        #[arg(long, default_value_t = 0.0)]
        perturb: f64,
        #[arg(long, default_value = "verify-report.json")]
        out: PathBuf,
    },
    /// Draw splinter trajectories as SVG.
    Plot {
        #[command(flatten)]
        model_args: ModelArgs,
        /// Take parameters from a run archive instead of the flags.
        #[arg(long)]
        archive: Option<PathBuf>,
        /// Replication to draw.
        #[arg(long, default_value_t = 0)]
        rep: u64,
        #[arg(long, value_enum, default_value_t = ModelArg::Both)]
        model: ModelArg,
        /// Annotate each splinter with its mass.
        #[arg(long)]
        labels: bool,
        #[arg(long, default_value = "plot.svg")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    reps: u64,
    #[arg(long, value_enum, default_value_t = PolicyArg::Random)]
    policy: PolicyArg,
    #[arg(long, default_value_t = 0.01)]
    path_dt: f64,
}

impl ModelArgs {
    fn params(&self) -> ModelParams {
        ModelParams {
            c: self.c,
            lambda: self.lambda,
            horizon: self.t,
            seed: self.seed,
            reps: self.reps,
            direction_policy: self.policy.into(),
            path_dt: self.path_dt,
        }
    }
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 5.0)]
    t_max: f64,
    #[arg(long, default_value_t = 0.05)]
    dt: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Random,
    Cw,
    Ccw,
    Alt,
}

impl From<PolicyArg> for DirectionPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Random => DirectionPolicy::Random,
            PolicyArg::Cw => DirectionPolicy::Clockwise,
            PolicyArg::Ccw => DirectionPolicy::Counterclockwise,
            PolicyArg::Alt => DirectionPolicy::Alternating,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Halfplane,
    Disk,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Mc,
    Ode,
    Laplace,
    Gnk,
    Limit3c,
    Geometry,
    All,
}

impl SuiteArg {
    fn name(self) -> &'static str {
        match self {
            SuiteArg::Mc => "mc",
            SuiteArg::Ode => "ode",
            SuiteArg::Laplace => "laplace",
            SuiteArg::Gnk => "gnk",
            SuiteArg::Limit3c => "limit3c",
            SuiteArg::Geometry => "geometry",
            SuiteArg::All => "all",
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Simulate { model, out, stamp_now } => {
            print!("{}", commands::simulate(&model.params(), &out, stamp_now)?);
        }
        Command::Analyze { curve, out } => {
            commands::analyze(curve.c, curve.lambda, curve.t_max, curve.dt, &out)?;
        }
        Command::Splinter { k, curve, out } => {
            commands::splinter(k, curve.c, curve.lambda, curve.t_max, curve.dt, &out)?;
        }
        Command::Verify { suite, seed, reps, perturb, out } => {
            if !perturb.is_finite() {
                return Err(CliError::Usage("--perturb must be finite".into()));
            }
            let options = SuiteOptions { seed, mc_reps: reps, perturb, ..SuiteOptions::default() };
            let (table, pass) = commands::verify(suite.name(), options, &out)?;
            print!("{table}");
            if !pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Plot { model_args, archive, rep, model, labels, out } => {
            let choice = match model {
                ModelArg::Halfplane => ModelChoice::HalfPlane,
                ModelArg::Disk => ModelChoice::Disk,
                ModelArg::Both => ModelChoice::Both,
            };
            let written = match archive {
                Some(path) => {
                    let a = RunArchive::read(&path)?;
                    let stored = a
                        .runs
                        .iter()
                        .find(|r| r.replication == rep)
                        .ok_or_else(|| CliError::Usage(format!("archive has no replication {rep}")))?;
                    commands::plot(&a.params, rep, Some(&stored.events), choice, labels, &out)?
                }
                None => commands::plot(&model_args.params(), rep, None, choice, labels, &out)?,
            };
            for p in written {
                println!("wrote {}", p.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
