use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::grid::GridSpec;

/// Exponential sums over Laplace spectra of hyperbolic surfaces.
#[derive(Debug, Parser)]
#[command(name = "geospectra", version, about)]
pub struct Cli {
    /// Worker threads for grid scans (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exponential sums and kernels on an X or T grid.
    Sum(SumArgs),
    /// Predicted main terms on an X or T grid.
    Predict(PredictArgs),
    /// Sums over Riemann zeros against the von Mangoldt prediction.
    Landau(LandauArgs),
    /// Residual of the Weyl law on a T grid.
    Weyl(WeylArgs),
    /// Peak detection in Delta1 over an X grid, or the geodesic norm table with --xmax.
    Peaks(PeaksArgs),
    /// Weyl sums and star discrepancy of {alpha t_j}.
    Equidist(EquidistArgs),
    /// Scattering determinant, unwrapped phase and winding number on the critical line.
    Scatter(ScatterArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    /// Surface as family[:level], e.g. moonshine:5 or gamma0:11.
    #[arg(long, conflicts_with_all = ["family", "level"])]
    pub surface: Option<String>,
    /// modular, gamma0, gamma1, gamma, moonshine or custom.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub level: Option<u64>,
    /// Override the volume of the surface.
    #[arg(long)]
    pub volume: Option<f64>,
    /// Override the number of cusps.
    #[arg(long)]
    pub cusps: Option<u64>,
    /// Linear Weyl-law coefficient; fitted when absent.
    #[arg(long)]
    pub c_gamma: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// CSV destination; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Also write a gnuplot script plotting the CSV (requires --output).
    #[arg(long, requires = "output")]
    pub gnuplot: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Grid variable.
    #[arg(long, value_enum, default_value_t = AxisArg::X)]
    pub axis: AxisArg,
    /// Grid as start:stop:step.
    #[arg(long)]
    pub grid: GridSpec,
    /// T held fixed on an X axis (defaults to the dataset's T_max).
    #[arg(long = "fixed-T")]
    pub fixed_t: Option<f64>,
    /// X held fixed on a T axis.
    #[arg(long = "fixed-X")]
    pub fixed_x: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    #[value(name = "X", alias = "x")]
    X,
    #[value(name = "T", alias = "t")]
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    S,
    R,
    P,
    Theta1,
    Theta2,
    Delta1,
    Delta2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PredictMode {
    Fujii,
    Generic,
    Kernels,
}

#[derive(Debug, Clone, Args)]
pub struct SumArgs {
    /// Eigenvalue file; resolved against GEODESIC_SPECTRA_DATA when relative.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
    /// One or more kinds, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "s")]
    pub kind: Vec<KindArg>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Mark Delta1 peaks (X axis only) in the CSV comments and gnuplot script.
    #[arg(long)]
    pub mark_peaks: bool,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PredictArgs {
    #[arg(long, value_enum, default_value_t = PredictMode::Fujii)]
    pub mode: PredictMode,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Treat the surface as compact (no winding contribution).
    #[arg(long)]
    pub compact: bool,
    /// Maximal change of the winding number per tracking step.
    #[arg(long, default_value_t = 1e-2)]
    pub tol: f64,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LandauArgs {
    /// Riemann zero ordinates; resolved against GEODESIC_SPECTRA_DATA when relative.
    #[arg(long)]
    pub zeros: PathBuf,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WeylArgs {
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
    /// T grid as start:stop:step.
    #[arg(long)]
    pub grid: GridSpec,
    #[arg(long)]
    pub compact: bool,
    #[arg(long, default_value_t = 1e-2)]
    pub tol: f64,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PeaksArgs {
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
    /// X grid as start:stop:step.
    #[arg(long, default_value = "3:30:0.01")]
    pub grid: GridSpec,
    /// Height T (defaults to the dataset's T_max).
    #[arg(long = "fixed-T")]
    pub fixed_t: Option<f64>,
    /// Threshold in standard deviations above the mean of Delta1.
    #[arg(long, default_value_t = 3.0)]
    pub sigma: f64,
    /// Emit the geodesic norm table up to this norm instead of scanning.
    #[arg(long)]
    pub xmax: Option<f64>,
    #[arg(long, default_value_t = 1e-2)]
    pub tol: f64,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EquidistArgs {
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
    /// One or more values of alpha, comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 5)]
    pub m_max: u32,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScatterArgs {
    #[arg(long)]
    pub tmax: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub tol: f64,
    /// Global sign from h0; the sign is fixed to +1 when absent.
    #[arg(long, allow_negative_numbers = true)]
    pub h0: Option<i64>,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}
