//! Command-line front end: Uhlmann and interferometric phases for qubit
//! precession, the two-photon Franson fringe simulation, parameter sweeps,
//! and the built-in invariant suite.
//!
//! Exit codes: 0 success, 1 argument or validation error, 2 numerical
//! failure (indeterminate phase, degenerate spectrum, orthogonal supports).

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use geophase_cli::commands::{self, FransonScenario, Method, Scenario};
use geophase_cli::records::{self, Record};
use geophase_cli::checks;

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERIC: u8 = 2;

#[derive(Parser)]
#[command(
    name = "geophase",
    version,
    about = "Mixed-state geometric phases for precessing qubits and the Franson two-photon experiment",
    after_help = "Angles are radians unless --degrees is given. GEOPHASE_TOLERANCE overrides the\n\
                  numerics tolerance (advanced use). The ancilla waveplate orientation is placed\n\
                  in the quadrant of the system plate (continuous in r down to r = 0)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Uhlmann phase of a precessing qubit (discrete, closed, or spectral route)
    Uhlmann(UhlmannCmd),
    /// Interferometric mixed-state phase of a precessing qubit
    Interferometric(InterferometricCmd),
    /// Two-photon Franson coincidence fringe over a chi grid
    Franson(FransonCmd),
    /// Sweep one scenario parameter, one record per value
    Sweep(SweepCmd),
    /// Run the built-in invariant suite
    Check(CheckCmd),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Discrete,
    Closed,
    Spectral,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Discrete => Method::Discrete,
            MethodArg::Closed => Method::Closed,
            MethodArg::Spectral => Method::Spectral,
        }
    }
}

#[derive(Args)]
struct OutputOpts {
    /// Output file (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Interpret angle inputs (tau, theta, alpha, angular sweep bounds) as degrees
    #[arg(long)]
    degrees: bool,
}

#[derive(Args)]
struct ScenarioOpts {
    /// Bloch length r in [0, 1]
    #[arg(long)]
    r: f64,
    /// Precession axis x component
    #[arg(long)]
    nx: f64,
    /// Precession axis z component; defaults to +sqrt(1 - nx^2)
    #[arg(long)]
    nz: Option<f64>,
    /// Evolution parameter tau
    #[arg(long)]
    tau: f64,
}

#[derive(Args)]
struct UhlmannCmd {
    #[command(flatten)]
    scenario: ScenarioOpts,
    /// Evaluation route
    #[arg(long, value_enum, default_value = "discrete")]
    method: MethodArg,
    /// Path resolution for the discrete route
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct InterferometricCmd {
    #[command(flatten)]
    scenario: ScenarioOpts,
    /// Evaluation route (spectral sum or qubit closed form)
    #[arg(long, value_enum, default_value = "spectral")]
    method: MethodArg,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct FransonCmd {
    /// Schmidt/Bloch parameter of the source, in [0, 1]
    #[arg(long)]
    r: f64,
    /// Waveplate angle from the vertical axis
    #[arg(long)]
    theta: f64,
    /// Waveplate precession angle (2*pi for the cyclic case)
    #[arg(long)]
    alpha: f64,
    /// Number of chi settings, evenly spaced over [0, 2*pi)
    #[arg(long = "chi-points", default_value_t = 16)]
    chi_points: usize,
    /// Poisson samples per point (1 = ideal interference law)
    #[arg(long, default_value_t = 1)]
    samples: u32,
    /// Seed for the counting noise
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SweepTarget {
    Uhlmann,
    Interferometric,
    Franson,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SweepParam {
    R,
    Nx,
    Tau,
    Theta,
    Alpha,
}

impl SweepParam {
    fn name(self) -> &'static str {
        match self {
            SweepParam::R => "r",
            SweepParam::Nx => "nx",
            SweepParam::Tau => "tau",
            SweepParam::Theta => "theta",
            SweepParam::Alpha => "alpha",
        }
    }

    fn is_angle(self) -> bool {
        matches!(self, SweepParam::Tau | SweepParam::Theta | SweepParam::Alpha)
    }
}

#[derive(Args)]
struct SweepCmd {
    /// Command whose scenario is swept
    #[arg(long, value_enum)]
    command: SweepTarget,
    /// Parameter to sweep
    #[arg(long, value_enum)]
    param: SweepParam,
    /// First parameter value
    #[arg(long)]
    from: f64,
    /// Last parameter value
    #[arg(long)]
    to: f64,
    /// Number of grid points (>= 2)
    #[arg(long)]
    points: usize,
    /// Bloch length r (required unless swept)
    #[arg(long)]
    r: Option<f64>,
    /// Precession axis x component (uhlmann/interferometric)
    #[arg(long)]
    nx: Option<f64>,
    /// Precession axis z component; defaults to +sqrt(1 - nx^2)
    #[arg(long)]
    nz: Option<f64>,
    /// Evolution parameter tau (uhlmann/interferometric)
    #[arg(long)]
    tau: Option<f64>,
    /// Waveplate angle theta (franson)
    #[arg(long)]
    theta: Option<f64>,
    /// Waveplate precession angle alpha (franson)
    #[arg(long)]
    alpha: Option<f64>,
    /// Evaluation route (uhlmann: discrete/closed/spectral; interferometric: spectral/closed)
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Path resolution for the discrete route
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    /// Poisson samples per point for franson (1 = ideal)
    #[arg(long, default_value_t = 1)]
    samples: u32,
    /// Seed for franson counting noise
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct CheckCmd {
    /// Seed for the randomized properties
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Numeric(geophase::Error),
}

impl From<geophase::Error> for Failure {
    fn from(e: geophase::Error) -> Self {
        Failure::Numeric(e)
    }
}

fn to_radians(x: f64, degrees: bool) -> f64 {
    if degrees {
        x * PI / 180.0
    } else {
        x
    }
}

fn run_uhlmann_cmd(cmd: &UhlmannCmd) -> Result<Vec<Record>, Failure> {
    let tau = to_radians(cmd.scenario.tau, cmd.output.degrees);
    let scen = Scenario::resolve(cmd.scenario.r, cmd.scenario.nx, cmd.scenario.nz, tau)
        .map_err(Failure::Usage)?;
    if cmd.steps == 0 {
        return Err(Failure::Usage("--steps must be at least 1".into()));
    }
    let rec = commands::run_uhlmann(&scen, cmd.method.into(), cmd.steps)?;
    Ok(vec![rec])
}

fn run_interferometric_cmd(cmd: &InterferometricCmd) -> Result<Vec<Record>, Failure> {
    if cmd.method == MethodArg::Discrete {
        return Err(Failure::Usage(
            "interferometric supports --method spectral or closed".into(),
        ));
    }
    let tau = to_radians(cmd.scenario.tau, cmd.output.degrees);
    let scen = Scenario::resolve(cmd.scenario.r, cmd.scenario.nx, cmd.scenario.nz, tau)
        .map_err(Failure::Usage)?;
    let rec = commands::run_interferometric(&scen, cmd.method.into())?;
    Ok(vec![rec])
}

fn run_franson_cmd(cmd: &FransonCmd) -> Result<Vec<Record>, Failure> {
    if cmd.chi_points < 3 {
        return Err(Failure::Usage("--chi-points must be at least 3".into()));
    }
    if !(0.0..=1.0).contains(&cmd.r) {
        return Err(Failure::Usage(format!("--r {} must lie in [0, 1]", cmd.r)));
    }
    let scen = FransonScenario {
        r: cmd.r,
        theta: to_radians(cmd.theta, cmd.output.degrees),
        alpha: to_radians(cmd.alpha, cmd.output.degrees),
        chi_points: cmd.chi_points,
        samples: cmd.samples.max(1),
        seed: cmd.seed,
    };
    Ok(commands::run_franson(&scen)?)
}

fn sweep_grid(cmd: &SweepCmd) -> Result<Vec<f64>, Failure> {
    if cmd.points < 2 {
        return Err(Failure::Usage("--points must be at least 2".into()));
    }
    let degrees = cmd.output.degrees && cmd.param.is_angle();
    let (from, to) = (to_radians(cmd.from, degrees), to_radians(cmd.to, degrees));
    let mut grid: Vec<f64> = (0..cmd.points)
        .map(|i| from + (to - from) * i as f64 / (cmd.points - 1) as f64)
        .collect();
    // records are emitted in ascending parameter order
    grid.sort_by(f64::total_cmp);
    Ok(grid)
}

fn require(value: Option<f64>, flag: &str) -> Result<f64, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("sweep requires --{flag} for this command")))
}

fn run_sweep_cmd(cmd: &SweepCmd) -> Result<Vec<Record>, Failure> {
    let grid = sweep_grid(cmd)?;
    let degrees = cmd.output.degrees;
    let mut out = Vec::with_capacity(grid.len());
    match cmd.command {
        SweepTarget::Uhlmann | SweepTarget::Interferometric => {
            if matches!(cmd.param, SweepParam::Theta | SweepParam::Alpha) {
                return Err(Failure::Usage(format!(
                    "parameter {} applies to franson sweeps only",
                    cmd.param.name()
                )));
            }
            let method: Method = cmd
                .method
                .unwrap_or(if cmd.command == SweepTarget::Uhlmann {
                    MethodArg::Discrete
                } else {
                    MethodArg::Spectral
                })
                .into();
            for &value in &grid {
                let r = if cmd.param == SweepParam::R { value } else { require(cmd.r, "r")? };
                let nx = if cmd.param == SweepParam::Nx { value } else { require(cmd.nx, "nx")? };
                let nz = if cmd.param == SweepParam::Nx { None } else { cmd.nz };
                let tau = if cmd.param == SweepParam::Tau {
                    value
                } else {
                    to_radians(require(cmd.tau, "tau")?, degrees)
                };
                let scen = Scenario::resolve(r, nx, nz, tau).map_err(Failure::Usage)?;
                let rec = match cmd.command {
                    SweepTarget::Uhlmann => commands::run_uhlmann(&scen, method, cmd.steps)?,
                    _ => commands::run_interferometric(&scen, method)?,
                };
                out.push(rec);
            }
        }
        SweepTarget::Franson => {
            if matches!(cmd.param, SweepParam::Nx | SweepParam::Tau) {
                return Err(Failure::Usage(format!(
                    "parameter {} does not apply to franson sweeps",
                    cmd.param.name()
                )));
            }
            for &value in &grid {
                let r = if cmd.param == SweepParam::R { value } else { require(cmd.r, "r")? };
                let theta = if cmd.param == SweepParam::Theta {
                    value
                } else {
                    to_radians(require(cmd.theta, "theta")?, degrees)
                };
                let alpha = if cmd.param == SweepParam::Alpha {
                    value
                } else {
                    to_radians(require(cmd.alpha, "alpha")?, degrees)
                };
                if !(0.0..=1.0).contains(&r) {
                    return Err(Failure::Usage(format!("swept r {r} must lie in [0, 1]")));
                }
                let scen = FransonScenario {
                    r,
                    theta,
                    alpha,
                    chi_points: 16,
                    samples: cmd.samples.max(1),
                    seed: cmd.seed,
                };
                out.push(commands::run_franson_summary(&scen)?);
            }
        }
    }
    Ok(out)
}

fn emit(records: &[Record], output: &OutputOpts) -> std::io::Result<()> {
    let text = match output.format {
        FormatArg::Csv => records::to_csv(records),
        FormatArg::Json => records::to_json(records),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Vec<Record>, Option<&OutputOpts>), Failure> {
    match &cli.command {
        Command::Uhlmann(cmd) => Ok((run_uhlmann_cmd(cmd)?, Some(&cmd.output))),
        Command::Interferometric(cmd) => Ok((run_interferometric_cmd(cmd)?, Some(&cmd.output))),
        Command::Franson(cmd) => Ok((run_franson_cmd(cmd)?, Some(&cmd.output))),
        Command::Sweep(cmd) => Ok((run_sweep_cmd(cmd)?, Some(&cmd.output))),
        Command::Check(_) => Ok((Vec::new(), None)),
    }
}

fn main() -> ExitCode {
    if let Ok(raw) = std::env::var("GEOPHASE_TOLERANCE") {
        match raw.parse::<f64>() {
            Ok(tol) if tol.is_finite() && tol > 0.0 => geophase::numerics::set_tolerance(tol),
            _ => {
                eprintln!("error: GEOPHASE_TOLERANCE must be a positive number, got {raw:?}");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    }

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    if let Command::Check(cmd) = &cli.command {
        let mut stdout = std::io::stdout().lock();
        return match checks::run_all(cmd.seed, &mut stdout) {
            Ok(0) => ExitCode::SUCCESS,
            Ok(_) => ExitCode::from(EXIT_NUMERIC),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
        };
    }

    match dispatch(&cli) {
        Ok((records, output)) => {
            let output = output.expect("non-check commands have output options");
            if let Err(e) = emit(&records, output) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            let _ = Cli::command();
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_NUMERIC)
        }
    }
}
