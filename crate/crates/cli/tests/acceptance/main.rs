#![allow(clippy::needless_range_loop)] // index j mirrors the math

//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `cargo test -p crosspack-cli --test acceptance --
//! --nocapture` to see them). Tolerances are pinned in the assertions.
//!
//! Outer angles persist in a cache file under the target directory, so
//! repeated runs start warm.

mod regular4;

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use crosspack_cli::ball_table;
use crosspack_core::bounds::{
    blichfeldt_bound, build_g_profile, g_derivative_diagnostics, insphere_bound,
    kl_asymptotic_sweep, optimize_levenshtein_bound, BoundReport, OptimizeOpts, Rigor,
    SignEstimate,
};
use crosspack_core::crosspoly::{
    inradius_xn, intrinsic_volumes, log_outer_angle, log_volume_xn, GammaCache, IntrinsicVolumes,
};
use crosspack_core::gauges::{moments_f0, moments_fstar};
use crosspack_core::numerics::{LogNonNeg, QuadratureSpec};

fn check(id: u32, label: &str, pass: bool, detail: &str) {
    println!(
        "[acceptance] criterion {id:2} ({label}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} ({label}): {detail}");
}

fn skip(id: u32, label: &str, detail: &str) {
    println!("[acceptance] criterion {id:2} ({label}): SKIP — {detail}");
}

fn cache_file() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance_gamma_cache.csv")
}

fn cache() -> &'static GammaCache {
    static CACHE: OnceLock<GammaCache> = OnceLock::new();
    CACHE.get_or_init(|| GammaCache::load(&cache_file()).unwrap_or_default())
}

fn persist_cache() {
    let _ = cache().save(&cache_file());
}

fn iv(n: usize) -> IntrinsicVolumes {
    intrinsic_volumes(n, &QuadratureSpec::default(), cache()).expect("intrinsic volumes")
}

/// Memoized f* bound reports; several criteria reuse n = 500 and 1000.
fn fstar_report(n: usize) -> BoundReport {
    static MEMO: OnceLock<Mutex<HashMap<usize, BoundReport>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = memo.lock().expect("memo lock").get(&n) {
        return r.clone();
    }
    let report = blichfeldt_bound(
        n,
        &iv(n),
        &moments_fstar(n).expect("gauge"),
        &OptimizeOpts::default(),
    )
    .expect("bound");
    memo.lock().expect("memo lock").insert(n, report.clone());
    report
}

const TABLE3: [(usize, f64); 30] = [
    (7, 0.99805),
    (8, 0.98606),
    (9, 0.96188),
    (10, 0.92730),
    (11, 0.88500),
    (12, 0.83754),
    (13, 0.78705),
    (14, 0.73524),
    (15, 0.68339),
    (16, 0.63247),
    (17, 0.58317),
    (18, 0.53596),
    (19, 0.49116),
    (20, 0.44896),
    (21, 0.40944),
    (22, 0.37264),
    (23, 0.33850),
    (24, 0.30697),
    (25, 0.27794),
    (26, 0.25129),
    (27, 0.22690),
    (28, 0.20462),
    (29, 0.18448),
    (30, 0.16586),
    (31, 0.14908),
    (32, 0.13398),
    (33, 0.12017),
    (34, 0.10770),
    (35, 0.09647),
    (36, 0.08635),
];

#[test]
fn criterion_01_table3_reproduction() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut worst_n = 0;
    for (n, expect) in TABLE3 {
        let report = fstar_report(n);
        let dev = (report.bound - expect).abs();
        if dev > worst {
            worst = dev;
            worst_n = n;
        }
    }
    persist_cache();
    let elapsed = start.elapsed();
    let pass = worst <= 2e-4 && elapsed < Duration::from_secs(30);
    check(
        1,
        "Blichfeldt f* bounds, n = 7..36",
        pass,
        &format!(
            "max |dev| {worst:.2e} at n = {worst_n}, tol 2e-4; runtime {elapsed:.1?} (target 30 s)"
        ),
    );
}

#[test]
fn criterion_02_table4_spot_checks() {
    // The reference values for large n evaluate vol/G at ρ = 2/(3√n), the
    // asymptotic maximizer; the same profile maximized over all ρ gives a
    // sharper bound. Both are valid; the reproduction targets the table.
    let start = Instant::now();
    let rows: [(usize, f64); 5] = [
        (40, 5.52108e-2),
        (100, 3.48295e-5),
        (200, 7.37113e-11),
        (500, 2.25312e-28),
        (1000, 6.36493e-58),
    ];
    let tol = 0.003; // 0.3 % relative, compared in log space
    let mut worst: f64 = 0.0;
    let mut worst_n = 0;
    for (n, expect) in rows {
        let profile =
            build_g_profile(n, &iv(n), &moments_fstar(n).expect("gauge")).expect("profile");
        let rho = 2.0 / (3.0 * (n as f64).sqrt());
        let at_table_rho = log_volume_xn(n).expect("volume").ln() - profile.eval_ln(rho);
        let dev = (at_table_rho - expect.ln()).abs();
        if dev > worst {
            worst = dev;
            worst_n = n;
        }
        // the true maximizer can only sharpen the bound
        let maximized = fstar_report(n).log_bound;
        assert!(
            maximized <= at_table_rho + 1e-12,
            "n={n}: maximized {maximized} above fixed-rho {at_table_rho}"
        );
    }
    persist_cache();
    let elapsed = start.elapsed();
    let pass = worst <= tol && elapsed < Duration::from_secs(600);
    check(
        2,
        "f* bounds at n = 40..1000",
        pass,
        &format!("max |Δ ln| {worst:.2e} at n = {worst_n}, tol 3e-3; runtime {elapsed:.1?} (target 10 min)"),
    );
}

#[test]
fn criterion_03_insphere_dimension_24() {
    let report = insphere_bound(
        log_volume_xn(24).expect("volume"),
        inradius_xn(24).expect("inradius"),
        24,
        LogNonNeg::from_real(ball_table::builtin_delta_b24()),
        true,
    )
    .expect("insphere bound");
    let dev = (report.bound - 0.98753).abs();
    check(
        3,
        "insphere ratio at n = 24",
        dev <= 1e-5,
        &format!(
            "bound {:.6}, expected 0.98753, |dev| {dev:.2e}",
            report.bound
        ),
    );
}

const TABLE2: [(usize, f64); 13] = [
    (24, 0.98753),
    (25, 0.95416),
    (26, 0.90259),
    (27, 0.85275),
    (28, 0.80476),
    (29, 0.75871),
    (30, 0.71466),
    (31, 0.67265),
    (32, 0.63268),
    (33, 0.59472),
    (34, 0.55877),
    (35, 0.52476),
    (36, 0.49264),
];

fn ball_table_path() -> PathBuf {
    if let Some(p) = std::env::var_os("CROSSPACK_BALL_TABLE") {
        return PathBuf::from(p);
    }
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("data/ball_densities.csv")
}

#[test]
fn criterion_04_table2_against_ingested_ball_bounds() {
    let label = "insphere ratios, n = 24..36";
    let path = ball_table_path();
    if !path.exists() {
        skip(
            4,
            label,
            &format!(
                "no ball-density table at {} (set CROSSPACK_BALL_TABLE)",
                path.display()
            ),
        );
        return;
    }
    let records = ball_table::load_ball_table(&path).expect("ball table parses");
    let mut best: HashMap<usize, f64> = ball_table::best_per_dimension(&records)
        .into_iter()
        .map(|(n, r)| (n, r.delta_upper))
        .collect();
    let leech = ball_table::builtin_delta_b24();
    let entry = best.entry(24).or_insert(leech);
    if *entry > leech {
        *entry = leech;
    }
    let mut worst: f64 = 0.0;
    let mut worst_n = 0;
    for (n, expect) in TABLE2 {
        let delta = match best.get(&n) {
            Some(&d) => d,
            None => {
                check(4, label, false, &format!("table lacks δ(B^{n})"));
                return;
            }
        };
        let report = insphere_bound(
            log_volume_xn(n).expect("volume"),
            inradius_xn(n).expect("inradius"),
            n,
            LogNonNeg::from_real(delta),
            true,
        )
        .expect("insphere bound");
        let dev = (report.bound - expect).abs();
        if dev > worst {
            worst = dev;
            worst_n = n;
        }
    }
    check(
        4,
        label,
        worst <= 1e-4,
        &format!(
            "13 rows from {}, max |dev| {worst:.2e} at n = {worst_n}, tol 1e-4",
            path.display()
        ),
    );
}

#[test]
fn criterion_05_four_dimensional_regular_solids() {
    // Closed forms (unit edge): the 120-cell has volume (15/4)(105+47√5)
    // and inradius φ⁴/2; the 600-cell has volume 25φ³/4 and inradius
    // φ³/(2√2). Cross-checked below against a from-coordinates oracle.
    let phi: f64 = (1.0 + 5.0f64.sqrt()) / 2.0;
    let kappa4 = std::f64::consts::PI * std::f64::consts::PI / 2.0;
    let delta_b4 = 0.13126 * kappa4;

    let v120 = 15.0 / 4.0 * (105.0 + 47.0 * 5.0f64.sqrt());
    let r120 = phi.powi(4) / 2.0;
    let ratio120 = v120 / (r120.powi(4) * kappa4);

    let v600 = 25.0 * phi.powi(3) / 4.0;
    let r600 = phi.powi(3) / (2.0 * std::f64::consts::SQRT_2);
    let ratio600 = v600 / (r600.powi(4) * kappa4);

    let (cell600, cell120) = regular4::measure_from_coordinates();
    let oracle_dev_120 = (cell120.insphere_ratio() / ratio120 - 1.0).abs();
    let oracle_dev_600 = (cell600.insphere_ratio() / ratio600 - 1.0).abs();
    assert!(
        oracle_dev_120 < 1e-9 && oracle_dev_600 < 1e-9,
        "coordinate oracle disagrees with closed forms: {oracle_dev_120:.2e}, {oracle_dev_600:.2e}"
    );

    let bound120 = insphere_bound(
        LogNonNeg::from_real(v120),
        r120,
        4,
        LogNonNeg::from_real(delta_b4),
        true,
    )
    .expect("bound")
    .bound;
    let bound600 = insphere_bound(
        LogNonNeg::from_real(v600),
        r600,
        4,
        LogNonNeg::from_real(delta_b4),
        true,
    )
    .expect("bound")
    .bound;

    let dev120 = (bound120 - 0.74972).abs();
    let dev600 = (bound600 - 0.69073).abs();
    check(
        5,
        "insphere ratios of the 120-cell and 600-cell",
        dev120 <= 1e-4 && dev600 <= 1e-4,
        &format!(
            "120-cell {bound120:.5} (dev {dev120:.1e}), 600-cell {bound600:.5} (dev {dev600:.1e}); coordinate oracle agrees to {:.1e}",
            oracle_dev_120.max(oracle_dev_600)
        ),
    );
}

#[test]
fn criterion_06_derivative_structure() {
    let mut worst_prime0: f64 = 0.0;
    for n in 3..=50 {
        let d = g_derivative_diagnostics(n, &iv(n), &moments_fstar(n).expect("gauge"))
            .expect("diagnostics");
        worst_prime0 = worst_prime0.max(d.g_prime_0.abs());
    }
    let d6 = g_derivative_diagnostics(6, &iv(6), &moments_fstar(6).expect("gauge")).unwrap();
    let d7 = g_derivative_diagnostics(7, &iv(7), &moments_fstar(7).expect("gauge")).unwrap();
    let signs_flip = d6.g_second_0_sign == SignEstimate::Negative
        && d7.g_second_0_sign == SignEstimate::Positive;
    check(
        6,
        "G'(0) = 0 for f* and curvature sign flip at n = 7",
        worst_prime0 <= 1e-10 && signs_flip,
        &format!(
            "max |G'(0)| rel {worst_prime0:.2e} over n = 3..50; G''(0) sign {} at 6, {} at 7",
            d6.g_second_0_sign.symbol(),
            d7.g_second_0_sign.symbol()
        ),
    );
}

#[test]
fn criterion_07_outer_angle_oracles() {
    let spec = QuadratureSpec::default();
    let mut worst_facet: f64 = 0.0;
    let mut worst_ridge: f64 = 0.0;
    for n in 3..=200 {
        let facet = log_outer_angle(n, n - 1, &spec).expect("gamma").to_real();
        worst_facet = worst_facet.max((facet - 0.5).abs());
        let ridge = log_outer_angle(n, n - 2, &spec).expect("gamma").to_real();
        let expect = (1.0 - 2.0 / n as f64).acos() / (2.0 * std::f64::consts::PI);
        worst_ridge = worst_ridge.max((ridge - expect).abs());
    }
    persist_cache();
    check(
        7,
        "outer-angle identities, n = 3..200",
        worst_facet <= 1e-10 && worst_ridge <= 1e-8,
        &format!("|γ(n,n-1) - 1/2| ≤ {worst_facet:.2e} (tol 1e-10); ridge identity dev ≤ {worst_ridge:.2e} (tol 1e-8)"),
    );
}

#[test]
fn criterion_08_gauge_moment_oracles() {
    // I_j depends only on j, so j = 1..40 covers every n ≤ 40.
    let top = 40;
    let gauge = moments_fstar(top).expect("gauge");
    let kappa = util::ball_volumes(50);
    let kinks = [
        0.0,
        2.0 - std::f64::consts::SQRT_2,
        1.0,
        std::f64::consts::SQRT_2,
    ];
    let mut worst_fstar: f64 = 0.0;
    for j in 1..=top {
        let omega = j as f64 * kappa[j];
        let mut integral = 0.0;
        for w in kinks.windows(2) {
            let f = |r: f64| util::fstar_pointwise(r) * r.powi(j as i32 - 1);
            integral += util::adaptive_simpson(&f, w[0], w[1], 1e-16);
        }
        let rel = (gauge.log_moment(j).ln() - (omega * integral).ln()).abs();
        worst_fstar = worst_fstar.max(rel);
    }

    // κ_n / I_n(f0) = (n+2) 2^{-(n+2)/2} exactly
    let mut worst_f0: f64 = 0.0;
    let f0 = moments_f0(50).expect("gauge");
    for n in 1..=50 {
        let ratio = kappa[n].ln() - f0.log_moment(n).ln();
        let expect = ((n + 2) as f64).ln() - (n + 2) as f64 / 2.0 * std::f64::consts::LN_2;
        worst_f0 = worst_f0.max((ratio - expect).abs() / expect.abs().max(1.0));
    }
    check(
        8,
        "gauge moments vs direct quadrature",
        worst_fstar <= 1e-10 && worst_f0 <= 1e-12,
        &format!("f* closed form dev ≤ {worst_fstar:.2e} (tol 1e-10); f0 ball-bound identity dev ≤ {worst_f0:.2e} (tol 1e-12)"),
    );
}

#[test]
fn criterion_09_maximizer_drift_for_fstar() {
    let mut detail = String::new();
    let mut pass = true;
    for n in [500usize, 1000] {
        let report = fstar_report(n);
        let scaled = report.rho_star.expect("rho") * (n as f64).sqrt();
        pass &= (0.60..=0.74).contains(&scaled);
        detail.push_str(&format!("ρ*√n = {scaled:.4} at n = {n}; "));
    }
    persist_cache();
    check(
        9,
        "f* maximizer drift toward 2/(3√n)",
        pass,
        &format!("{detail}window [0.60, 0.74]"),
    );
}

#[test]
fn criterion_10_asymptotic_gauge_sweep() {
    // Sweep from the gauge-validity edge up to the saturation angle of the
    // asymptotic formula (~82.65°), where its optimum sits.
    let cap = crosspack_core::gauges::kl_asymptotic_phi_cap();
    let lo = std::f64::consts::FRAC_PI_3;
    let phi_grid: Vec<f64> = (0..24).map(|i| lo + (cap - lo) * i as f64 / 23.0).collect();
    let reports = kl_asymptotic_sweep(
        &[500, 1000],
        |n| intrinsic_volumes(n, &QuadratureSpec::default(), cache()),
        &phi_grid,
        &OptimizeOpts::default(),
    )
    .expect("sweep");
    persist_cache();
    let mut pass = true;
    let mut detail = String::new();
    for report in &reports {
        assert_eq!(report.rigor, Rigor::Heuristic, "sweep must be flagged");
        let n = report.n;
        let ratio = report.rho_star.expect("rho") / inradius_xn(n).expect("inradius");
        pass &= (0.70..=0.82).contains(&ratio);
        detail.push_str(&format!("ρ*/r = {ratio:.4} at n = {n}; "));
    }
    let slope = (reports[1].log_bound - reports[0].log_bound) / 500.0;
    let slope_ok = (0.82f64.ln()..=0.84f64.ln()).contains(&slope);
    pass &= slope_ok;
    detail.push_str(&format!("per-dimension rate {:.5}", slope.exp()));
    check(
        10,
        "heuristic spherical-code gauge at n = 500, 1000",
        pass,
        &format!("{detail} (window [0.82, 0.84])"),
    );
}

#[test]
fn criterion_11_levenshtein_weaker_than_fstar_at_50() {
    let n = 50;
    let phi_grid: Vec<f64> = (0..64)
        .map(|i| {
            std::f64::consts::FRAC_PI_3
                + (std::f64::consts::PI - std::f64::consts::FRAC_PI_3) * i as f64 / 63.0
        })
        .collect();
    let lev =
        optimize_levenshtein_bound(n, &iv(n), &phi_grid, 4 * n + 200, &OptimizeOpts::default())
            .expect("levenshtein bound");
    let fstar = fstar_report(n);
    check(
        11,
        "precise spherical-code gauge vs f* at n = 50",
        lev.log_bound > fstar.log_bound,
        &format!(
            "levenshtein ln bound {:.4} (φ = {:.3}) vs f* {:.4}",
            lev.log_bound,
            lev.gauge.and_then(|g| g.phi()).unwrap_or(f64::NAN),
            fstar.log_bound
        ),
    );
}

#[test]
fn criterion_12_asymptotic_constants() {
    let base = (std::f64::consts::E / (std::f64::consts::PI * 2f64.powf(0.198))).sqrt();
    let base_dev = (base - 0.86850).abs();

    let slope = (fstar_report(1000).log_bound - fstar_report(500).log_bound) / 500.0;
    let slope_ok = (0.865f64.ln()..=0.882f64.ln()).contains(&slope);
    persist_cache();
    check(
        12,
        "closed-form rate constants",
        base_dev <= 5e-5 && slope_ok,
        &format!(
            "√(e/(π·2^0.198)) = {base:.6} (dev {base_dev:.1e}); f* fitted rate {:.5} in [0.865, 0.882]",
            slope.exp()
        ),
    );
}

/// Extended check (`--ignored`): the precise spherical-code gauge stays
/// behind f* through dimension 300 and overtakes it by dimension 500.
/// Deep Jacobi root chains make this the slowest test, so it is opt-in.
#[test]
#[ignore = "extended check; run with -- --ignored"]
fn extended_levenshtein_overtakes_fstar_near_500() {
    let phi_grid: Vec<f64> = (0..64)
        .map(|i| {
            std::f64::consts::FRAC_PI_3
                + (std::f64::consts::PI - std::f64::consts::FRAC_PI_3) * i as f64 / 63.0
        })
        .collect();
    let opts = OptimizeOpts::default();
    let run = |n: usize| {
        let lev = optimize_levenshtein_bound(n, &iv(n), &phi_grid, 4 * n + 200, &opts)
            .expect("levenshtein bound");
        (lev.log_bound, fstar_report(n).log_bound)
    };
    let (lev300, fstar300) = run(300);
    let (lev500, fstar500) = run(500);
    persist_cache();
    check(
        13,
        "extended: spherical-code gauge overtake",
        lev300 > fstar300 && lev500 < fstar500,
        &format!(
            "n = 300: lev {lev300:.3} vs f* {fstar300:.3} (behind); n = 500: lev {lev500:.3} vs f* {fstar500:.3} (ahead)"
        ),
    );
}
