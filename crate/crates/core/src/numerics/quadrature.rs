//! Log-space quadrature of Gaussian-dominated integrands.
//!
//! The outer-angle integrals have the shape ∫ e^{g(x)} dx with g concave
//! and rapidly decaying tails. The integrand peak is located first, the
//! interval truncated where the integrand has dropped a fixed factor below
//! the peak in log scale, and composite fixed-order Gauss-Legendre panels
//! applied. Panel contributions combine through log-sum-exp so the result
//! stays finite for peaks near e^{-700} and below.

use super::log_domain::{log_sum_exp, LogNonNeg};
use crate::error::{Error, Result};

/// Parameters of the composite quadrature scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    /// Number of equal-width panels over the truncated interval.
    pub panel_count: usize,
    /// Gauss-Legendre nodes per panel.
    pub nodes_per_panel: usize,
    /// Truncation threshold: the interval is cut where the integrand falls
    /// to this fraction of its peak (in log scale, `ln` of this value below
    /// the maximum of g).
    pub upper_cutoff_tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panel_count: 8,
            nodes_per_panel: 24,
            upper_cutoff_tolerance: 1e-16,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.panel_count == 0 || self.nodes_per_panel == 0 {
            return Err(Error::domain("quadrature spec requires positive counts"));
        }
        if !(self.upper_cutoff_tolerance > 0.0 && self.upper_cutoff_tolerance < 1.0) {
            return Err(Error::domain("cutoff tolerance must lie in (0, 1)"));
        }
        Ok(())
    }

    /// Identifies a spec in the persistent γ cache.
    pub fn fingerprint(&self) -> String {
        format!(
            "p{}n{}c{:e}",
            self.panel_count, self.nodes_per_panel, self.upper_cutoff_tolerance
        )
    }

    /// Convergence target for the panel-doubling error estimate.
    pub fn doubling_tolerance(&self) -> f64 {
        (10.0 * self.upper_cutoff_tolerance).max(1e-13)
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence. Order q is exact for polynomials of degree 2q-1.
pub fn gauss_legendre(q: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(q >= 1);
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    for i in 0..q.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (q as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(q, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(q, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[q - 1 - i] = x;
        weights[i] = w;
        weights[q - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(q: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..q {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    let dp = q as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Returns the best interior point found. `f` may return -inf.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iter = 0;
    while (b - a).abs() > tol && iter < 200 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        iter += 1;
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// ln ∫_{lower}^{∞} e^{g(x)} dx for a continuous `g` with a single maximum
/// (possibly at `lower`) and tails decaying faster than any linear function.
///
/// The integral is truncated where g drops `ln(upper_cutoff_tolerance)`
/// below its peak, then integrated by composite Gauss-Legendre panels whose
/// count doubles until two successive refinements agree in log scale.
pub fn log_integral_exp(
    g: impl Fn(f64) -> f64,
    lower: f64,
    spec: &QuadratureSpec,
) -> Result<LogNonNeg> {
    spec.validate()?;
    let (peak_x, peak_g) = locate_peak(&g, lower)?;
    let cut = peak_g + spec.upper_cutoff_tolerance.ln();

    let x_hi = right_cutoff(&g, lower, peak_x, cut)?;
    let x_lo = left_cutoff(&g, lower, peak_x, cut);
    if x_hi <= x_lo || x_hi.is_nan() || x_lo.is_nan() {
        return Err(Error::numerical(format!(
            "degenerate quadrature interval [{x_lo}, {x_hi}]"
        )));
    }

    let (nodes, weights) = gauss_legendre(spec.nodes_per_panel);
    let conv = spec.doubling_tolerance();
    let mut panels = spec.panel_count;
    let mut value = composite_log_panels(&g, x_lo, x_hi, panels, &nodes, &weights);
    let mut delta = f64::INFINITY;
    for _ in 0..8 {
        let refined = composite_log_panels(&g, x_lo, x_hi, 2 * panels, &nodes, &weights);
        delta = (refined - value).abs();
        if delta <= conv {
            return Ok(LogNonNeg::from_ln(refined));
        }
        panels *= 2;
        value = refined;
    }
    Err(Error::numerical(format!(
        "quadrature did not converge under panel doubling (last ln change {delta:.3e} at {panels} panels)"
    )))
}

/// Composite panels in log scale: every node contributes the term
/// ln(w_k · h) + g(x_k), and all terms combine in one log-sum-exp pass.
fn composite_log_panels(
    g: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    panels: usize,
    nodes: &[f64],
    weights: &[f64],
) -> f64 {
    let width = (b - a) / panels as f64;
    let half = width / 2.0;
    let ln_half = half.ln();
    let mut terms = Vec::with_capacity(panels * nodes.len());
    for p in 0..panels {
        let center = a + (p as f64 + 0.5) * width;
        for (&t, &w) in nodes.iter().zip(weights) {
            terms.push(w.ln() + ln_half + g(center + half * t));
        }
    }
    log_sum_exp(&terms)
}

/// Walks a geometric ladder out of `lower` to bracket the maximum of g,
/// then refines by golden section. A maximum at `lower` itself (monotone
/// decreasing integrand) is allowed.
fn locate_peak(g: &impl Fn(f64) -> f64, lower: f64) -> Result<(f64, f64)> {
    const STEPS: usize = 170;
    const RATIO: f64 = 1.5;
    let scale = lower.abs().max(1.0);
    let mut offset = 1e-12 * scale;

    let g_lower = g(lower);
    let mut best_i = usize::MAX; // usize::MAX marks `lower` itself
    let mut best_g = g_lower;
    let mut xs = Vec::with_capacity(STEPS);
    for i in 0..STEPS {
        let x = lower + offset;
        let v = g(x);
        if v.is_nan() {
            return Err(Error::numerical(format!("integrand NaN at x = {x}")));
        }
        xs.push(x);
        if v > best_g || (best_i == usize::MAX && best_g == f64::NEG_INFINITY) {
            best_g = v;
            best_i = i;
        }
        offset *= RATIO;
    }
    if best_g == f64::NEG_INFINITY {
        return Err(Error::numerical("integrand vanishes everywhere sampled"));
    }
    if best_i == STEPS - 1 {
        return Err(Error::numerical(
            "failed to locate a finite integrand peak (still rising at ladder end)",
        ));
    }
    if best_i == usize::MAX {
        // Monotone decreasing from the boundary.
        return Ok((lower, g_lower));
    }
    let a = if best_i == 0 { lower } else { xs[best_i - 1] };
    let b = xs[best_i + 1];
    let (gx, gv) = golden_section_max(g, a, b, 1e-13 * (b - a).abs().max(1e-300));
    if gv >= best_g {
        Ok((gx, gv))
    } else {
        Ok((xs[best_i], best_g))
    }
}

/// Finds x > peak with g(x) = cut by expansion and bisection.
fn right_cutoff(g: &impl Fn(f64) -> f64, lower: f64, peak: f64, cut: f64) -> Result<f64> {
    let mut step = (peak - lower).max(1e-6 * peak.abs().max(1.0));
    let mut hi = peak + step;
    let mut lo = peak;
    let mut tries = 0;
    while g(hi) >= cut {
        lo = hi;
        step *= 2.0;
        hi = peak + step;
        tries += 1;
        if tries > 300 {
            return Err(Error::numerical(
                "integrand tail does not drop below the cutoff",
            ));
        }
    }
    Ok(bisect_crossing(g, lo, hi, cut))
}

fn left_cutoff(g: &impl Fn(f64) -> f64, lower: f64, peak: f64, cut: f64) -> f64 {
    if peak == lower || g(lower) >= cut {
        return lower;
    }
    bisect_crossing(g, peak, lower, cut)
}

/// Bisection for the crossing g = cut; `above` has g ≥ cut, `below` has g < cut.
fn bisect_crossing(g: &impl Fn(f64) -> f64, above: f64, below: f64, cut: f64) -> f64 {
    let mut a = above;
    let mut b = below;
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if g(mid) >= cut {
            a = mid;
        } else {
            b = mid;
        }
    }
    b
}
