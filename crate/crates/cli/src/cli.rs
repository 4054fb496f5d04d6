//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "crosspack",
    version,
    about = "Upper bounds on the packing density of the regular cross-polytope"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute density bounds over a set of dimensions
    Bound(BoundArgs),
    /// Validate a ball-density table and report the record count
    Ingest {
        /// CSV file with lines `n,delta_upper,source,rigor`
        path: PathBuf,
    },
    /// Render emitted CSV reports as an SVG scatter (one series per file)
    Plot(PlotArgs),
    /// Inspect or clear the outer-angle cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Dimensions: `24`, `7..36` (inclusive), or a list `40,100,500`
    #[arg(long, value_parser = parse_dimensions)]
    pub n: Dimensions,

    #[arg(long, value_enum, default_value_t = MethodArg::Blichfeldt)]
    pub method: MethodArg,

    /// Gauge for the Blichfeldt method
    #[arg(long, value_enum, default_value_t = GaugeArg::Fstar)]
    pub gauge: GaugeArg,

    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    /// Write to a file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Number of angles scanned for the spherical-code gauges
    #[arg(long, default_value_t = 64)]
    pub phi_points: usize,

    /// Lower end of the angle grid, degrees (default: gauge validity window)
    #[arg(long)]
    pub phi_min_deg: Option<f64>,

    /// Upper end of the angle grid, degrees (default: gauge validity window)
    #[arg(long)]
    pub phi_max_deg: Option<f64>,

    /// Jacobi degree ceiling for the code-size bound (default 4n + 200)
    #[arg(long)]
    pub kmax: Option<usize>,

    /// Quadrature panels over the truncated integration interval
    #[arg(long, default_value_t = 8)]
    pub panels: usize,

    /// Gauss-Legendre nodes per panel
    #[arg(long, default_value_t = 24)]
    pub nodes: usize,

    /// Integrand truncation threshold relative to its peak
    #[arg(long, default_value_t = 1e-16)]
    pub quad_tol: f64,

    /// Grid points for the G-profile scan
    #[arg(long, default_value_t = 2048)]
    pub grid: usize,

    /// Golden-section refinement width relative to the inradius
    #[arg(long, default_value_t = 1e-12)]
    pub refine_tol: f64,

    /// Outer-angle cache file (default: $CROSSPACK_CACHE_DIR/gamma_angles.csv)
    #[arg(long)]
    pub cache: Option<PathBuf>,

    /// Ball-density table for the insphere method
    #[arg(long)]
    pub ball_table: Option<PathBuf>,

    /// Worker threads (default: available parallelism)
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    /// CSV report files, one plotted series per file
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,

    /// Log-scale vertical axis (uses log_bound, so underflowed values plot)
    #[arg(long)]
    pub log_y: bool,

    /// Write to a file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// Report entry count of the cache file
    Inspect {
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Delete the cache file
    Clear {
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Insphere,
    Blichfeldt,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GaugeArg {
    F0,
    Fstar,
    Levenshtein,
    KlAsymptotic,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
    Svg,
}

/// Parsed `--n` value: sorted, deduplicated dimensions.
#[derive(Clone, Debug)]
pub struct Dimensions(pub Vec<usize>);

pub fn parse_dimensions(raw: &str) -> Result<Dimensions, String> {
    let mut out = Vec::new();
    for part in raw.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err("empty dimension entry".into());
        }
        if let Some((a, b)) = part.split_once("..") {
            let lo: usize = a
                .trim()
                .parse()
                .map_err(|_| format!("bad dimension `{a}`"))?;
            let hi: usize = b
                .trim()
                .parse()
                .map_err(|_| format!("bad dimension `{b}`"))?;
            if hi < lo {
                return Err(format!("empty range `{part}`"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(
                part.parse()
                    .map_err(|_| format!("bad dimension `{part}`"))?,
            );
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(Dimensions(out))
}
