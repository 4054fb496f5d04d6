//! Report serialization: CSV (round-trippable to 17 significant digits),
//! JSON, and parsing of previously emitted CSV for plotting.

use crosspack_core::bounds::{BoundReport, Diagnostics, Method, Rigor, SignEstimate};
use crosspack_core::gauges::GaugeKind;

pub const CSV_HEADER: &str =
    "n,method,gauge,phi,rho_star,bound,log_bound,rigor,g_prime0,g_second0_sign,g_prime_rn_sign";

/// 17 significant digits: enough for an exact f64 round-trip.
fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// The bound column is recovered from log space so that values below the
/// f64 underflow threshold still print with an explicit mantissa/exponent
/// split instead of `0`.
pub fn format_bound_from_log(log_bound: f64) -> String {
    let clamped = log_bound.min(0.0);
    if clamped == f64::NEG_INFINITY {
        return "0".into();
    }
    let plain = clamped.exp();
    if plain >= f64::MIN_POSITIVE {
        return sig17(plain);
    }
    let mut e10 = (clamped / std::f64::consts::LN_10).floor();
    let mut mantissa = (clamped - e10 * std::f64::consts::LN_10).exp();
    if mantissa >= 10.0 {
        mantissa /= 10.0;
        e10 += 1.0;
    }
    format!("{mantissa:.16}e{e10}")
}

pub fn to_csv_row(r: &BoundReport) -> String {
    let gauge = r.gauge.map(|g| g.name().to_string()).unwrap_or_default();
    let phi = r.gauge.and_then(|g| g.phi()).map(sig17).unwrap_or_default();
    let rho = r.rho_star.map(sig17).unwrap_or_default();
    let (gp0, gs0, gpr) = match &r.diagnostics {
        Some(d) => (
            sig17(d.g_prime_0),
            d.g_second_0_sign.symbol().to_string(),
            d.g_prime_rn_sign.symbol().to_string(),
        ),
        None => (String::new(), String::new(), String::new()),
    };
    format!(
        "{},{},{gauge},{phi},{rho},{},{},{},{gp0},{gs0},{gpr}",
        r.n,
        r.method.name(),
        format_bound_from_log(r.log_bound),
        sig17(r.log_bound),
        r.rigor.name(),
    )
}

pub fn to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&to_csv_row(r));
        out.push('\n');
    }
    out
}

fn sign_from_symbol(s: &str) -> Option<SignEstimate> {
    match s {
        "+" => Some(SignEstimate::Positive),
        "-" => Some(SignEstimate::Negative),
        "?" => Some(SignEstimate::Indeterminate),
        _ => None,
    }
}

/// Re-parses emitted CSV. `kl_degree` and `dominant_power` do not travel
/// through the pinned CSV schema and come back as `None`.
pub fn parse_csv(text: &str) -> anyhow::Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line == CSV_HEADER {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 11 {
            anyhow::bail!("line {}: expected 11 CSV fields, got {}", idx + 1, f.len());
        }
        let n: usize = f[0]
            .parse()
            .map_err(|_| anyhow::anyhow!("line {}: bad n", idx + 1))?;
        let method = match f[1] {
            "insphere" => Method::InsphereRatio,
            "blichfeldt" => Method::Blichfeldt,
            other => anyhow::bail!("line {}: unknown method `{other}`", idx + 1),
        };
        let phi: Option<f64> = if f[3].is_empty() {
            None
        } else {
            Some(f[3].parse()?)
        };
        let gauge = match f[2] {
            "" => None,
            "f0" => Some(GaugeKind::F0),
            "fstar" => Some(GaugeKind::FStar),
            "levenshtein" => Some(GaugeKind::LevenshteinPrecise {
                phi: phi
                    .ok_or_else(|| anyhow::anyhow!("line {}: levenshtein without phi", idx + 1))?,
            }),
            "kl-asymptotic" => Some(GaugeKind::KlAsymptotic {
                phi: phi.ok_or_else(|| {
                    anyhow::anyhow!("line {}: kl-asymptotic without phi", idx + 1)
                })?,
            }),
            other => anyhow::bail!("line {}: unknown gauge `{other}`", idx + 1),
        };
        let rho_star: Option<f64> = if f[4].is_empty() {
            None
        } else {
            Some(f[4].parse()?)
        };
        let bound: f64 = f[5].parse()?;
        let log_bound: f64 = f[6].parse()?;
        let rigor = match f[7] {
            "rigorous" => Rigor::Rigorous,
            "heuristic" => Rigor::Heuristic,
            other => anyhow::bail!("line {}: unknown rigor `{other}`", idx + 1),
        };
        let diagnostics = if f[8].is_empty() {
            None
        } else {
            Some(Diagnostics {
                g_prime_0: f[8].parse()?,
                g_second_0_sign: sign_from_symbol(f[9])
                    .ok_or_else(|| anyhow::anyhow!("line {}: bad sign", idx + 1))?,
                g_prime_rn_sign: sign_from_symbol(f[10])
                    .ok_or_else(|| anyhow::anyhow!("line {}: bad sign", idx + 1))?,
            })
        };
        reports.push(BoundReport {
            n,
            method,
            gauge,
            rho_star,
            log_bound,
            bound,
            diagnostics,
            rigor,
            kl_degree: None,
            dominant_power: None,
        });
    }
    Ok(reports)
}

pub fn to_json(reports: &[BoundReport]) -> String {
    let values: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            serde_json::json!({
                "n": r.n,
                "method": r.method.name(),
                "gauge": r.gauge.map(|g| g.name()),
                "phi": r.gauge.and_then(|g| g.phi()),
                "rho_star": r.rho_star,
                "bound": r.bound,
                "bound_display": format_bound_from_log(r.log_bound),
                "log_bound": r.log_bound,
                "rigor": r.rigor.name(),
                "g_prime0": r.diagnostics.map(|d| d.g_prime_0),
                "g_second0_sign": r.diagnostics.map(|d| d.g_second_0_sign.symbol()),
                "g_prime_rn_sign": r.diagnostics.map(|d| d.g_prime_rn_sign.symbol()),
                "kl_degree": r.kl_degree,
                "dominant_power": r.dominant_power,
            })
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&values).expect("static schema");
    text.push('\n');
    text
}
