//! Argument parsing and top-level dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{Body, Computation, Temperature};
use crate::error::{CliError, CliResult};
use crate::params::Params;
use crate::sweep::{run_sweep, Axis};
use crate::table::{Row, Table};
use crate::verify::{run_suite, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "casimir-friction", version, about = "Casimir friction between magnetic and dielectric bodies")]
pub struct Cli {
    #[command(flatten)]
    pub params: ParamArgs,

    /// Flat key=value config file; command-line flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// CSV output path (stdout when absent).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Also write the table as JSON.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Worker threads for sweeps and Monte-Carlo; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

/// Model parameters. Kept as text and validated when merged.
#[derive(Debug, Default, Args)]
pub struct ParamArgs {
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<String>,
    #[arg(long = "temperature-kelvin", global = true, allow_negative_numbers = true)]
    pub temperature_kelvin: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub d: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub z0: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub rho1: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub rho2: Option<String>,
    #[arg(long = "omega-p", global = true, allow_negative_numbers = true)]
    pub omega_p: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub nu: Option<String>,
    #[arg(long = "D1", global = true, allow_negative_numbers = true)]
    pub d1: Option<String>,
    #[arg(long = "D2", global = true, allow_negative_numbers = true)]
    pub d2: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub v: Option<String>,
    #[arg(long = "omega-1", global = true, allow_negative_numbers = true)]
    pub omega_1: Option<String>,
    #[arg(long = "omega-2", global = true, allow_negative_numbers = true)]
    pub omega_2: Option<String>,
    #[arg(long = "polarizability-1", global = true, allow_negative_numbers = true)]
    pub polarizability_1: Option<String>,
    #[arg(long = "polarizability-2", global = true, allow_negative_numbers = true)]
    pub polarizability_2: Option<String>,
    #[arg(long = "zeta-r", global = true, allow_negative_numbers = true)]
    pub zeta_r: Option<String>,
    #[arg(long = "tail-tol", global = true, allow_negative_numbers = true)]
    pub tail_tol: Option<String>,
    #[arg(long = "length-scale", global = true, allow_negative_numbers = true)]
    pub length_scale: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub samples: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub seed: Option<String>,
    #[arg(long = "spectrum-file-1", global = true)]
    pub spectrum_file_1: Option<String>,
    #[arg(long = "spectrum-file-2", global = true)]
    pub spectrum_file_2: Option<String>,
    /// reduced | gaussian
    #[arg(long, global = true)]
    pub units: Option<String>,
}

impl ParamArgs {
    fn pairs(&self) -> [(&'static str, &Option<String>); 24] {
        [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("temperature-kelvin", &self.temperature_kelvin),
            ("d", &self.d),
            ("z0", &self.z0),
            ("rho1", &self.rho1),
            ("rho2", &self.rho2),
            ("omega-p", &self.omega_p),
            ("nu", &self.nu),
            ("D1", &self.d1),
            ("D2", &self.d2),
            ("v", &self.v),
            ("omega-1", &self.omega_1),
            ("omega-2", &self.omega_2),
            ("polarizability-1", &self.polarizability_1),
            ("polarizability-2", &self.polarizability_2),
            ("zeta-r", &self.zeta_r),
            ("tail-tol", &self.tail_tol),
            ("length-scale", &self.length_scale),
            ("samples", &self.samples),
            ("seed", &self.seed),
            ("spectrum-file-1", &self.spectrum_file_1),
            ("spectrum-file-2", &self.spectrum_file_2),
            ("units", &self.units),
        ]
    }

    pub fn to_params(&self) -> CliResult<Params> {
        let mut p = Params::default();
        for (k, v) in self.pairs() {
            if let Some(v) = v {
                p.set(k, v)?;
            }
        }
        Ok(p)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-mode frequencies of the coupled oscillator pair.
    Eigen,
    /// Induced free energy from the Matsubara sum.
    FreeEnergy,
    /// Full and quasistatic magnetic dipole fields.
    Fields,
    /// Friction force for one geometry.
    Friction {
        #[command(subcommand)]
        body: BodyCommand,
    },
    /// Cartesian parameter sweep of any single-point computation.
    Sweep(SweepArgs),
    /// Run the oracle batteries.
    Verify {
        /// all | fields | oscillator | matsubara | response | spectral | geometry | friction
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum BodyCommand {
    /// Two particles at separation d.
    Pair(FrictionArgs),
    /// Particle above a half-space at height z0.
    Plane(FrictionArgs),
    /// Two half-spaces with gap d, force per unit area.
    Slabs(FrictionArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum TemperatureArg {
    #[default]
    Finite,
    Zero,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct FrictionArgs {
    #[arg(long, value_enum, default_value_t = TemperatureArg::Finite)]
    pub temperature: TemperatureArg,
    /// Sharp oscillator frequencies (delta-function coefficient output).
    #[arg(long)]
    pub sharp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Eigen,
    FreeEnergy,
    Fields,
    FrictionPair,
    FrictionPlane,
    FrictionSlabs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub target: Target,
    /// name:min:max:steps[:log|linear]; the last axis varies fastest.
    #[arg(long = "axis", required = true)]
    pub axes: Vec<String>,
    #[arg(long, value_enum, default_value_t = TemperatureArg::Finite)]
    pub temperature: TemperatureArg,
    #[arg(long)]
    pub sharp: bool,
    /// Upper bound on grid points, checked before any evaluation.
    #[arg(long = "max-points", default_value_t = 100_000)]
    pub max_points: usize,
}

fn friction(body: Body, args: FrictionArgs) -> Computation {
    let temperature = match args.temperature {
        TemperatureArg::Finite => Temperature::Finite,
        TemperatureArg::Zero => Temperature::Zero,
    };
    Computation::Friction { body, temperature, sharp: args.sharp }
}

fn target_computation(a: &SweepArgs) -> Computation {
    let f = FrictionArgs { temperature: a.temperature, sharp: a.sharp };
    match a.target {
        Target::Eigen => Computation::Eigen,
        Target::FreeEnergy => Computation::FreeEnergy,
        Target::Fields => Computation::Fields,
        Target::FrictionPair => friction(Body::Pair, f),
        Target::FrictionPlane => friction(Body::Plane, f),
        Target::FrictionSlabs => friction(Body::Slabs, f),
    }
}

/// Defaults, then the config file, then command-line flags.
pub fn resolve_params(cli: &Cli) -> CliResult<Params> {
    let mut params = Params::defaults();
    if let Some(path) = &cli.config {
        params.merge(&Params::from_config_file(path)?);
    }
    params.merge(&cli.params.to_params()?);
    if params.contains("beta") && params.contains("temperature-kelvin") {
        return Err(CliError::Validation("give exactly one of --beta and --temperature-kelvin".into()));
    }
    Ok(params)
}

fn header(table: &mut Table, command: &str, params: &Params) {
    table.meta("casimir-friction", env!("CARGO_PKG_VERSION"));
    table.meta("command", command);
    table.meta("units", params.text("units").unwrap_or("reduced"));
    for (k, v) in params.iter() {
        table.meta(format!("param.{k}"), v);
    }
}

/// Outcome of a successful invocation: the table written and whether every
/// verification check passed.
#[derive(Debug)]
pub struct Outcome {
    pub table: Table,
    pub all_passed: bool,
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    let params = resolve_params(cli)?;
    let (command, rows, all_passed) = match &cli.command {
        Command::Eigen => single(Computation::Eigen, &params)?,
        Command::FreeEnergy => single(Computation::FreeEnergy, &params)?,
        Command::Fields => single(Computation::Fields, &params)?,
        Command::Friction { body } => {
            let c = match *body {
                BodyCommand::Pair(a) => friction(Body::Pair, a),
                BodyCommand::Plane(a) => friction(Body::Plane, a),
                BodyCommand::Slabs(a) => friction(Body::Slabs, a),
            };
            single(c, &params)?
        }
        Command::Sweep(args) => {
            let axes = args
                .axes
                .iter()
                .map(|s| s.parse::<Axis>())
                .collect::<CliResult<Vec<_>>>()?;
            let c = target_computation(args);
            let rows = run_sweep(c, &params, &axes, cli.workers, args.max_points)?;
            let spec: Vec<&str> = args.axes.iter().map(String::as_str).collect();
            (format!("sweep {} --axis {}", c.name(), spec.join(" --axis ")), rows, true)
        }
        Command::Verify { suite } => {
            let opts = VerifyOptions {
                seed: params.integer("seed").unwrap_or(0),
                samples: params.integer("samples").unwrap_or(1_000_000),
                workers: cli.workers,
            };
            let checks = run_suite(suite, &opts)?;
            let ok = checks.iter().all(|c| c.passed());
            (format!("verify --suite {suite}"), checks.iter().map(|c| c.row()).collect(), ok)
        }
    };
    let mut table = Table::from_rows(rows)?;
    header(&mut table, &command, &params);
    Ok(Outcome { table, all_passed })
}

fn single(c: Computation, params: &Params) -> CliResult<(String, Vec<Row>, bool)> {
    Ok((c.name(), vec![c.run(params)?], true))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Parses `args`, runs, writes output and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let result = execute(&cli).and_then(|outcome| {
        let csv = outcome.table.to_csv();
        match &cli.out {
            Some(path) => write_file(path, &csv)?,
            None => stdout.write_all(csv.as_bytes()).map_err(CliError::from)?,
        }
        if let Some(path) = &cli.json {
            write_file(path, &outcome.table.to_json())?;
        }
        Ok(outcome.all_passed)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => {
            let _ = writeln!(stderr, "error: verification checks failed");
            2
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
