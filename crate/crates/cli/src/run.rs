//! Command execution: per-dimension fan-out, cache handling, output.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crosspack_core::bounds::{
    blichfeldt_bound, insphere_bound, optimize_levenshtein_bound, BoundReport, OptimizeOpts,
};
use crosspack_core::crosspoly::{inradius_xn, intrinsic_volumes, log_volume_xn, GammaCache};
use crosspack_core::gauges::{
    kl_asymptotic_phi_cap, moments_f0, moments_fstar, moments_kl_asymptotic,
};
use crosspack_core::numerics::{LogNonNeg, QuadratureSpec};
use crosspack_core::Error;

use crate::ball_table;
use crate::cli::{BoundArgs, CacheAction, Cli, Command, FormatArg, GaugeArg, MethodArg, PlotArgs};
use crate::output;
use crate::svg;

/// Terminal failure with its process exit code:
/// 2 = bad input, 3 = numerical failure, 4 = infeasible gauge.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Numerical(_) => 3,
            Error::Infeasible(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub const CACHE_DIR_ENV: &str = "CROSSPACK_CACHE_DIR";
const CACHE_FILE_NAME: &str = "gamma_angles.csv";

pub fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Bound(args) => cmd_bound(args),
        Command::Ingest { path } => cmd_ingest(&path),
        Command::Plot(args) => cmd_plot(args),
        Command::Cache { action } => cmd_cache(action),
    }
}

fn resolve_cache_path(explicit: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = explicit {
        return Some(p.to_path_buf());
    }
    std::env::var_os(CACHE_DIR_ENV).map(|dir| PathBuf::from(dir).join(CACHE_FILE_NAME))
}

fn write_out(path: Option<&Path>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_bound(args: BoundArgs) -> Result<(), Failure> {
    let dims = args.n.0.clone();
    if dims.contains(&0) {
        return Err(Failure::input("dimension must be ≥ 1"));
    }
    let quad = QuadratureSpec {
        panel_count: args.panels,
        nodes_per_panel: args.nodes,
        upper_cutoff_tolerance: args.quad_tol,
    };
    quad.validate().map_err(Failure::from)?;
    let opts = OptimizeOpts {
        grid_points: args.grid,
        refine_tol: args.refine_tol,
    };

    // Ball densities: ingested table rows plus the built-in Leech value,
    // best (smallest) bound per dimension wins.
    let mut ball: HashMap<usize, (f64, bool)> = HashMap::new();
    if let Some(path) = &args.ball_table {
        let records =
            ball_table::load_ball_table(path).map_err(|e| Failure::input(e.to_string()))?;
        for (n, rec) in ball_table::best_per_dimension(&records) {
            ball.insert(n, (rec.delta_upper, rec.rigorous));
        }
    }
    let leech = ball_table::builtin_delta_b24();
    match ball.get(&24) {
        Some(&(d, _)) if d <= leech => {}
        _ => {
            ball.insert(24, (leech, true));
        }
    }
    if args.method == MethodArg::Insphere {
        if let Some(&n) = dims.iter().find(|&&n| !ball.contains_key(&n)) {
            return Err(Failure::input(format!(
                "no ball-density bound available for n = {n}; supply --ball-table"
            )));
        }
    }

    let (phi_lo_default, phi_hi_default) = match args.gauge {
        GaugeArg::KlAsymptotic => (60.0, kl_asymptotic_phi_cap().to_degrees()),
        _ => (60.0, 180.0),
    };
    let phi_lo = args.phi_min_deg.unwrap_or(phi_lo_default);
    let phi_hi = args.phi_max_deg.unwrap_or(phi_hi_default);
    if args.phi_points == 0 || phi_hi < phi_lo {
        return Err(Failure::input("empty angle grid"));
    }
    let phi_grid: Vec<f64> = if args.phi_points == 1 {
        vec![phi_lo.to_radians()]
    } else {
        (0..args.phi_points)
            .map(|i| {
                (phi_lo + (phi_hi - phi_lo) * i as f64 / (args.phi_points - 1) as f64).to_radians()
            })
            .collect()
    };

    let cache_path = resolve_cache_path(args.cache.as_deref());
    let cache = match &cache_path {
        Some(p) => GammaCache::load(p).map_err(Failure::from)?,
        None => GammaCache::new(),
    };

    let job = PerDimensionJob {
        method: args.method,
        gauge: args.gauge,
        quad,
        opts,
        phi_grid,
        kmax: args.kmax,
        ball,
        cache: &cache,
    };
    let reports = run_pool(&dims, args.jobs, &job)?;

    if let Some(p) = &cache_path {
        if let Some(dir) = p.parent() {
            if !dir.as_os_str().is_empty() {
                let _ = std::fs::create_dir_all(dir);
            }
        }
        cache.save(p).map_err(Failure::from)?;
    }

    let content = match args.format {
        FormatArg::Csv => output::to_csv(&reports),
        FormatArg::Json => output::to_json(&reports),
        FormatArg::Svg => {
            let series = svg::Series {
                name: series_name(&args),
                reports,
            };
            svg::render(&[series], true).map_err(|e| Failure::input(e.to_string()))?
        }
    };
    write_out(args.output.as_deref(), &content)
}

fn series_name(args: &BoundArgs) -> String {
    match args.method {
        MethodArg::Insphere => "insphere".into(),
        MethodArg::Blichfeldt => format!("blichfeldt/{}", gauge_name(args.gauge)),
    }
}

fn gauge_name(g: GaugeArg) -> &'static str {
    match g {
        GaugeArg::F0 => "f0",
        GaugeArg::Fstar => "fstar",
        GaugeArg::Levenshtein => "levenshtein",
        GaugeArg::KlAsymptotic => "kl-asymptotic",
    }
}

struct PerDimensionJob<'a> {
    method: MethodArg,
    gauge: GaugeArg,
    quad: QuadratureSpec,
    opts: OptimizeOpts,
    phi_grid: Vec<f64>,
    kmax: Option<usize>,
    ball: HashMap<usize, (f64, bool)>,
    cache: &'a GammaCache,
}

impl PerDimensionJob<'_> {
    fn compute(&self, n: usize) -> Result<BoundReport, Error> {
        match self.method {
            MethodArg::Insphere => {
                let (delta, rigorous) = self.ball[&n];
                insphere_bound(
                    log_volume_xn(n)?,
                    inradius_xn(n)?,
                    n,
                    LogNonNeg::from_real(delta),
                    rigorous,
                )
            }
            MethodArg::Blichfeldt => {
                let iv = intrinsic_volumes(n, &self.quad, self.cache)?;
                match self.gauge {
                    GaugeArg::F0 => blichfeldt_bound(n, &iv, &moments_f0(n)?, &self.opts),
                    GaugeArg::Fstar => blichfeldt_bound(n, &iv, &moments_fstar(n)?, &self.opts),
                    GaugeArg::Levenshtein => {
                        // k_max rises automatically when no degree certifies
                        // any grid angle.
                        let mut kmax = self.kmax.unwrap_or(4 * n + 200);
                        for _ in 0..2 {
                            match optimize_levenshtein_bound(
                                n,
                                &iv,
                                &self.phi_grid,
                                kmax,
                                &self.opts,
                            ) {
                                Err(Error::Infeasible(_)) => kmax *= 4,
                                other => return other,
                            }
                        }
                        optimize_levenshtein_bound(n, &iv, &self.phi_grid, kmax, &self.opts)
                    }
                    GaugeArg::KlAsymptotic => {
                        let mut best: Option<BoundReport> = None;
                        for &phi in &self.phi_grid {
                            let gauge = moments_kl_asymptotic(n, phi)?;
                            let report = blichfeldt_bound(n, &iv, &gauge, &self.opts)?;
                            if best.as_ref().is_none_or(|b| report.log_bound < b.log_bound) {
                                best = Some(report);
                            }
                        }
                        best.ok_or_else(|| Error::infeasible("empty angle grid"))
                    }
                }
            }
        }
    }
}

/// Fans the per-dimension computations out to a worker pool; rows come back
/// in ascending dimension regardless of completion order. Every worker goes
/// through the same shared cache, so results do not depend on scheduling.
fn run_pool(
    dims: &[usize],
    jobs: Option<usize>,
    job: &PerDimensionJob<'_>,
) -> Result<Vec<BoundReport>, Failure> {
    let workers = jobs
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(usize::from)
                .unwrap_or(1)
        })
        .max(1)
        .min(dims.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<BoundReport, Error>>>> = Mutex::new(vec![None; dims.len()]);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= dims.len() {
                    break;
                }
                let result = job.compute(dims[i]);
                slots.lock().expect("pool lock")[i] = Some(result);
            });
        }
    });
    let collected = slots.into_inner().expect("pool lock");
    let mut reports = Vec::with_capacity(dims.len());
    for (i, slot) in collected.into_iter().enumerate() {
        match slot {
            Some(Ok(r)) => reports.push(r),
            Some(Err(e)) => return Err(Failure::from(e)),
            None => {
                return Err(Failure {
                    code: 3,
                    message: format!("dimension {} was not computed", dims[i]),
                })
            }
        }
    }
    Ok(reports)
}

fn cmd_ingest(path: &Path) -> Result<(), Failure> {
    let records = ball_table::load_ball_table(path).map_err(|e| Failure::input(e.to_string()))?;
    println!("ingested {} records from {}", records.len(), path.display());
    Ok(())
}

fn cmd_plot(args: PlotArgs) -> Result<(), Failure> {
    let mut series = Vec::new();
    for path in &args.inputs {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        let reports = output::parse_csv(&text)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        series.push(svg::Series { name, reports });
    }
    let rendered = svg::render(&series, args.log_y).map_err(|e| Failure::input(e.to_string()))?;
    write_out(args.output.as_deref(), &rendered)
}

fn cmd_cache(action: CacheAction) -> Result<(), Failure> {
    match action {
        CacheAction::Inspect { cache } => {
            let path = resolve_cache_path(cache.as_deref()).ok_or_else(|| {
                Failure::input("no cache configured (flag or CROSSPACK_CACHE_DIR)")
            })?;
            let loaded = GammaCache::load(&path).map_err(Failure::from)?;
            println!("{}: {} entries", path.display(), loaded.len());
            Ok(())
        }
        CacheAction::Clear { cache } => {
            let path = resolve_cache_path(cache.as_deref()).ok_or_else(|| {
                Failure::input("no cache configured (flag or CROSSPACK_CACHE_DIR)")
            })?;
            if path.exists() {
                std::fs::remove_file(&path).map_err(|e| {
                    Failure::input(format!("cannot remove {}: {e}", path.display()))
                })?;
                println!("removed {}", path.display());
            } else {
                println!("nothing to remove at {}", path.display());
            }
            Ok(())
        }
    }
}
