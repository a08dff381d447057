use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use radial_rkhs::{Dimension, QuadratureSpec, SignConvention};

use crate::CliError;

/// Kernel tables, minimal-norm interpolation, Trudinger-Moser scans and a
/// numerical verification suite for radial Sobolev kernels on the unit ball.
#[derive(Debug, Parser)]
#[command(name = "radial-rkhs", version)]
pub struct Cli {
    /// Ball dimension n >= 2 (real values allowed).
    #[arg(long, global = true, default_value_t = 2.0, allow_negative_numbers = true)]
    pub dim: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file (stdout if omitted). Relative paths are resolved against
    /// $RADIAL_RKHS_OUT_DIR when it is set.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,

    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,

    #[arg(long, global = true)]
    pub max_subdivisions: Option<usize>,

    /// Gauss-Legendre points per panel.
    #[arg(long, global = true)]
    pub base_nodes: Option<usize>,

    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Use the uncorrected prefactor 1/((2-n) ω) for n > 2. Regression hook.
    #[arg(long, global = true, hide = true)]
    pub literal_sign: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate kernel families at centers t over a radius grid.
    Kernel(KernelArgs),
    /// Gram matrix of the reproducing kernel at a node list, with quadrature cross-check.
    Gram(GramArgs),
    /// Minimal-norm interpolation of (t, value) pairs read from CSV.
    Interp(InterpArgs),
    /// Trudinger-Moser functional along the Moser family.
    Moser(MoserArgs),
    /// Run the invariant suite and write a pass/fail report.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Kernel(_) => "kernel",
            Command::Gram(_) => "gram",
            Command::Interp(_) => "interp",
            Command::Moser(_) => "moser",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyChoice {
    Reproducing,
    Moser,
    Candidate,
    All,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    /// Comma-separated centers in (0, 1].
    #[arg(long = "t", allow_hyphen_values = true)]
    pub centers: RealList,

    /// Comma-separated radii in (0, 1].
    #[arg(long, allow_hyphen_values = true)]
    pub grid: RealList,

    #[arg(long, value_enum, default_value_t = FamilyChoice::Reproducing)]
    pub family: FamilyChoice,
}

#[derive(Debug, Args)]
pub struct GramArgs {
    /// Comma-separated nodes in (0, 1).
    #[arg(long, allow_hyphen_values = true)]
    pub nodes: RealList,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    /// CSV of `t,value` rows; a header row is optional.
    #[arg(long)]
    pub input: PathBuf,

    /// Radii at which to evaluate the interpolant (defaults to the nodes).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<RealList>,

    /// Accept nodes below the default floor of 1e-6.
    #[arg(long)]
    pub allow_small_nodes: bool,
}

#[derive(Debug, Args)]
pub struct MoserArgs {
    /// alpha as a multiple of the critical exponent.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_mult: f64,

    /// Geometric grid `start:ratio:count`.
    #[arg(long, allow_hyphen_values = true)]
    pub s_grid: GridSpec,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Monte-Carlo sample count for the isometry check.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
}

/// Comma-separated reals; the empty string is the empty list.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RealList(pub Vec<f64>);

impl FromStr for RealList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(RealList(Vec::new()));
        }
        s.split(',')
            .map(|item| {
                item.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("`{}` is not a number", item.trim()))
            })
            .collect::<Result<_, _>>()
            .map(RealList)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub ratio: f64,
    pub count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [start, ratio, count] = parts[..] else {
            return Err(format!("`{s}` is not of the form start:ratio:count"));
        };
        let real = |x: &str| {
            x.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite() && *v > 0.0)
                .ok_or_else(|| format!("`{x}` must be a positive number"))
        };
        Ok(GridSpec {
            start: real(start)?,
            ratio: real(ratio)?,
            count: count
                .parse()
                .map_err(|_| format!("`{count}` is not a nonnegative integer"))?,
        })
    }
}

/// Validated global settings shared by all commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: &'static str,
    pub dim: Dimension,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub spec: QuadratureSpec,
    pub seed: u64,
    pub convention: SignConvention,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let dim = Dimension::new(cli.dim).map_err(CliError::Input)?;
        let mut spec = QuadratureSpec::default();
        if let Some(v) = cli.rel_tol {
            spec.rel_tol = v;
        }
        if let Some(v) = cli.abs_tol {
            spec.abs_tol = v;
        }
        if let Some(v) = cli.max_subdivisions {
            spec.max_subdivisions = v;
        }
        if let Some(v) = cli.base_nodes {
            spec.base_nodes = v;
        }
        spec.validate().map_err(CliError::Input)?;
        Ok(RunConfig {
            command: cli.command.name(),
            dim,
            format: cli.format,
            output: cli.output.clone(),
            spec,
            seed: cli.seed,
            convention: if cli.literal_sign {
                SignConvention::Literal
            } else {
                SignConvention::Corrected
            },
        })
    }
}
