//! `hetnet`: command-line front end.
//!
//! Exit codes: 0 success, 1 validation or analysis failure, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use heteroclinic::netspec::{NetworkSpec, Preset};
use heteroclinic::network::Realizability;
use heteroclinic::report::{self, AnalysisError, Report};
use heteroclinic::simulation::IntegratorConfig;
use heteroclinic::switching::GridSpec;

#[derive(Parser)]
#[command(name = "hetnet", version, about = "Heteroclinic network analysis and simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Network file (TOML).
    file: Option<PathBuf>,
    /// Built-in network instead of a file: kirk-silber, house or bowtie.
    #[arg(long, conflicts_with = "file")]
    preset: Option<String>,
    /// Directory for CSV/JSON output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// Grid points per relevant coordinate.
    #[arg(long)]
    grid: Option<usize>,
    /// Largest coordinate value on the grid.
    #[arg(long)]
    grid_eps: Option<f64>,
    /// Ratio between the deepest and the shallowest log level.
    #[arg(long)]
    depth: Option<f64>,
}

impl GridArgs {
    fn resolve(&self, base: GridSpec) -> GridSpec {
        GridSpec {
            per_axis: self.grid.unwrap_or(base.per_axis),
            eps: self.grid_eps.unwrap_or(base.eps),
            depth: self.depth.unwrap_or(base.depth),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Analysis {
    CommonConnection,
    House,
    Bowtie,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the graph can be realized by the simplex method.
    Validate(Source),
    /// Print the coefficient matrix and eigenvalue table.
    Build(Source),
    /// Run a switching analysis.
    Analyze {
        #[arg(value_enum)]
        analysis: Analysis,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        grid: GridArgs,
        /// Number of turn exponents listed (bowtie).
        #[arg(long, default_value_t = 10)]
        terms: u32,
    },
    /// Integrate the ODE: a seeded ensemble for the bowtie, or one
    /// trajectory from `--x0`.
    Simulate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Radius of the equilibrium balls.
        #[arg(long)]
        eps: Option<f64>,
        /// Letters of the L/R word compared.
        #[arg(long)]
        letters: Option<usize>,
        #[arg(long)]
        t_max: Option<f64>,
        /// Comma-separated initial condition.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x0: Option<Vec<f64>>,
    },
    /// Search a log-spaced grid for a point following a path.
    Shadow {
        #[command(flatten)]
        source: Source,
        /// Comma-separated node walk, e.g. 3,1,2,4.
        #[arg(long, value_delimiter = ',', required = true)]
        path: Vec<usize>,
        #[command(flatten)]
        grid: GridArgs,
    },
}

enum Failure {
    Validation(String),
    Usage(String),
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Usage(m) => Failure::Usage(m),
            other => Failure::Validation(other.to_string()),
        }
    }
}

fn load(source: &Source) -> Result<NetworkSpec, Failure> {
    match (&source.file, &source.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            NetworkSpec::parse(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
        }
        (None, Some(name)) => {
            let p: Preset = name.parse().map_err(|e: heteroclinic::netspec::SpecError| Failure::Usage(e.to_string()))?;
            Ok(NetworkSpec::preset(p))
        }
        _ => Err(Failure::Usage("give a network file or --preset".into())),
    }
}

fn emit(report: &Report, out: &Option<PathBuf>) -> Result<(), Failure> {
    print!("{}", report.text);
    if let Some(dir) = out {
        report.write_to(dir).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", dir.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate(source) => {
            let spec = load(&source)?;
            let (verdict, r) = report::validate(&spec)?;
            emit(&r, &source.out)?;
            if verdict != Realizability::Realizable {
                return Err(Failure::Validation("graph is not realizable".into()));
            }
        }
        Command::Build(source) => {
            let spec = load(&source)?;
            emit(&report::build(&spec)?, &source.out)?;
        }
        Command::Analyze { analysis, source, grid, terms } => {
            let spec = load(&source)?;
            let r = match analysis {
                Analysis::CommonConnection => {
                    let base = spec.analysis().map(|a| a.grid()).unwrap_or_default();
                    report::analyze_common_connection(&spec, Some(grid.resolve(base)))?
                }
                Analysis::House => report::analyze_house(&spec)?,
                Analysis::Bowtie => report::analyze_bowtie(&spec, terms)?,
            };
            emit(&r, &source.out)?;
        }
        Command::Simulate { source, runs, seed, eps, letters, t_max, x0 } => {
            let spec = load(&source)?;
            let sim = spec.simulation.clone().unwrap_or_default();
            let mut cfg = sim.ensemble();
            cfg.runs = runs.unwrap_or(cfg.runs);
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.eps = eps.unwrap_or(cfg.eps);
            cfg.letters = letters.unwrap_or(cfg.letters);
            if let Some(t) = t_max {
                cfg.integrator.t_max = t;
            }
            let r = match x0.or(sim.x0) {
                Some(x0) => {
                    let icfg = IntegratorConfig { t_max: t_max.or(sim.t_max).unwrap_or(1e3), ..Default::default() };
                    if !(cfg.eps > 0.0 && cfg.eps < std::f64::consts::FRAC_1_SQRT_2) {
                        return Err(Failure::Usage(format!("eps {} must lie in (0, sqrt(2)/2)", cfg.eps)));
                    }
                    report::simulate_single(&spec, &x0, cfg.eps, &icfg)?
                }
                None => report::simulate_ensemble(&spec, &cfg)?,
            };
            emit(&r, &source.out)?;
        }
        Command::Shadow { source, path, grid } => {
            let spec = load(&source)?;
            let base = spec.analysis().map(|a| a.grid()).unwrap_or_default();
            let (_, r) = report::shadow(&spec, &path, &grid.resolve(base))?;
            emit(&r, &source.out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}
