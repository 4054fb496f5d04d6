//! Blichfeldt gauge functions for the unit ball and their moment vectors.
//!
//! A gauge f for B^n is a nonnegative function of distance with bounded
//! support whose translates over any packing sum to at most 1 everywhere;
//! it yields δ(B^n) ≤ κ_n / I_n(f) and, through the Fejes Tóth–Kuperberg
//! construction, density bounds for any convex body. The moments are
//!
//!   I_j(f) = ω_j ∫₀^∞ f(r) r^{j-1} dr,   I_0(f) = f(0).
//!
//! Four gauges are provided:
//!
//! * `f0(r) = 1 - r²/2` on [0, √2] — Blichfeldt's original;
//! * `f*` — the improvement with f*(r) = 1 - f0(2-r) for r ≤ 1, whose
//!   moments have the closed form I_j = (2κ_j/(j+2)) √2^j (1 + b_j);
//! * the Levenshtein spherical-code gauge, constant 1/M(n,φ) on a ball of
//!   radius √(2/(1-cos φ)), with M bounded through Jacobi-polynomial roots;
//! * the asymptotic form of that bound (no o(n) term), valid for
//!   φ ∈ [60°, 63°] — heuristic, flagged as such downstream.

use crate::error::{Error, Result};
use crate::numerics::{ln_ball_volume, ln_binomial, JacobiRoots, LogNonNeg};

/// Identity of a gauge: family plus parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GaugeKind {
    /// Blichfeldt's 1 - r²/2 on [0, √2].
    F0,
    /// The improved gauge with unit plateau near 0.
    FStar,
    /// Constant 1/M(n, φ) on the ball of radius √(2/(1-cos φ)).
    LevenshteinPrecise { phi: f64 },
    /// Same shape with M from the asymptotic bound (o(n) term dropped).
    KlAsymptotic { phi: f64 },
}

impl GaugeKind {
    pub fn name(&self) -> &'static str {
        match self {
            GaugeKind::F0 => "f0",
            GaugeKind::FStar => "fstar",
            GaugeKind::LevenshteinPrecise { .. } => "levenshtein",
            GaugeKind::KlAsymptotic { .. } => "kl-asymptotic",
        }
    }

    pub fn phi(&self) -> Option<f64> {
        match self {
            GaugeKind::LevenshteinPrecise { phi } | GaugeKind::KlAsymptotic { phi } => Some(*phi),
            _ => None,
        }
    }

    /// Bounds obtained from the asymptotic spherical-code gauge are not
    /// rigorous (the o(n) term is dropped).
    pub fn is_heuristic(&self) -> bool {
        matches!(self, GaugeKind::KlAsymptotic { .. })
    }
}

/// A gauge's moment vector I_0 … I_n in log form.
#[derive(Clone, Debug)]
pub struct GaugeMoments {
    pub kind: GaugeKind,
    n: usize,
    /// The r_0 beyond which the gauge vanishes.
    pub support_radius: f64,
    /// ln I_j, indexed j = 0 … n.
    pub log_moments: Vec<LogNonNeg>,
    /// f(0) = I_0, always ≤ 1.
    pub gauge_peak: f64,
    /// Degree selected by the spherical-code bound, for reporting.
    pub kl_degree: Option<usize>,
}

impl GaugeMoments {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn log_moment(&self, j: usize) -> LogNonNeg {
        self.log_moments[j]
    }
}

/// The correction coefficient in the closed-form f* moments:
///
///   b_j = 1/(√2^j (j+1)) - (√2-1)^{j+1} (1 + √2/(j+1)),   j ≥ 1.
pub fn b_coeff(j: usize) -> Result<f64> {
    if j == 0 {
        return Err(Error::domain("b coefficient defined for j >= 1"));
    }
    let jf = j as f64;
    let sqrt2 = std::f64::consts::SQRT_2;
    let first = (-0.5 * jf * std::f64::consts::LN_2).exp() / (jf + 1.0);
    let second = (sqrt2 - 1.0).powi(j as i32 + 1) * (1.0 + sqrt2 / (jf + 1.0));
    Ok(first - second)
}

/// Moments of Blichfeldt's gauge f0: I_j = κ_j √2^j · 2/(j+2), I_0 = 1.
pub fn moments_f0(n: usize) -> Result<GaugeMoments> {
    if n == 0 {
        return Err(Error::domain("gauge moments require n >= 1"));
    }
    let mut log_moments = vec![LogNonNeg::ONE; n + 1];
    for (j, slot) in log_moments.iter_mut().enumerate().skip(1) {
        let jf = j as f64;
        let ln =
            ln_ball_volume(j).ln() + 0.5 * jf * std::f64::consts::LN_2 + std::f64::consts::LN_2
                - (jf + 2.0).ln();
        *slot = LogNonNeg::from_ln(ln);
    }
    Ok(GaugeMoments {
        kind: GaugeKind::F0,
        n,
        support_radius: std::f64::consts::SQRT_2,
        log_moments,
        gauge_peak: 1.0,
        kl_degree: None,
    })
}

/// Moments of the improved gauge f*: I_j = (2κ_j/(j+2)) √2^j (1 + b_j),
/// I_0 = 1. The stated closed form holds for every index, not only the top
/// one; the test suite verifies it against direct quadrature of the
/// piecewise definition.
pub fn moments_fstar(n: usize) -> Result<GaugeMoments> {
    if n == 0 {
        return Err(Error::domain("gauge moments require n >= 1"));
    }
    let mut log_moments = vec![LogNonNeg::ONE; n + 1];
    for (j, slot) in log_moments.iter_mut().enumerate().skip(1) {
        let jf = j as f64;
        let ln = std::f64::consts::LN_2 + ln_ball_volume(j).ln() - (jf + 2.0).ln()
            + 0.5 * jf * std::f64::consts::LN_2
            + b_coeff(j)?.ln_1p();
        *slot = LogNonNeg::from_ln(ln);
    }
    Ok(GaugeMoments {
        kind: GaugeKind::FStar,
        n,
        support_radius: std::f64::consts::SQRT_2,
        log_moments,
        gauge_peak: 1.0,
        kl_degree: None,
    })
}

/// Kabatjanskii–Levenshtein bound on the spherical code size M(n, φ):
///
///   M(n, φ) ≤ 4 C(k+n-2, k) / (1 - t_{1,k+1})   whenever cos φ ≤ t_{1,k},
///
/// with t_{1,k} the largest root of P_k^{(α,α)}, α = (n-3)/2. Every valid
/// k gives a bound, so the minimum over k ≤ k_max is returned together
/// with the minimizing degree.
pub fn kl_m_bound(n: usize, phi: f64, k_max: usize) -> Result<(LogNonNeg, usize)> {
    let mut roots = JacobiRoots::new((n as f64 - 3.0) / 2.0)?;
    kl_m_bound_with(&mut roots, n, phi, k_max)
}

/// Same as [`kl_m_bound`] but reusing a shared root table (the roots depend
/// only on n, so sweeps over φ share one table).
pub fn kl_m_bound_with(
    roots: &mut JacobiRoots,
    n: usize,
    phi: f64,
    k_max: usize,
) -> Result<(LogNonNeg, usize)> {
    if n < 3 {
        return Err(Error::domain("spherical-code bound requires n >= 3"));
    }
    if !(phi > 0.0 && phi <= std::f64::consts::PI) {
        return Err(Error::domain(format!(
            "angular distance must lie in (0, pi], got {phi}"
        )));
    }
    if k_max == 0 {
        return Err(Error::domain("k_max must be positive"));
    }
    let cos_phi = phi.cos();
    roots.ensure(k_max + 1)?;
    let mut best: Option<(f64, usize)> = None;
    for k in 1..=k_max {
        if cos_phi > roots.get(k) {
            continue;
        }
        let ln_value = std::f64::consts::LN_2 * 2.0 + ln_binomial(k + n - 2, k)?.ln()
            - (1.0 - roots.get(k + 1)).ln();
        if best.is_none_or(|(b, _)| ln_value < b) {
            best = Some((ln_value, k));
        }
    }
    match best {
        Some((ln_value, k)) => Ok((LogNonNeg::from_ln(ln_value), k)),
        None => Err(Error::infeasible(format!(
            "no degree k <= {k_max} certifies angular distance {phi} in dimension {n}"
        ))),
    }
}

/// Moments of the Levenshtein gauge: constant f = 1/M(n, φ) on the ball of
/// radius R = √(2/(1-cos φ)), zero beyond, valid for φ ∈ [π/3, π]. The
/// moments of a constant gauge are I_j = κ_j R^j f.
pub fn moments_levenshtein(n: usize, phi: f64, k_max: usize) -> Result<GaugeMoments> {
    let mut roots = JacobiRoots::new((n as f64 - 3.0) / 2.0)?;
    moments_levenshtein_with(&mut roots, n, phi, k_max)
}

/// [`moments_levenshtein`] with a caller-owned Jacobi root table, so a
/// sweep over φ pays for the roots once.
pub fn moments_levenshtein_with(
    roots: &mut JacobiRoots,
    n: usize,
    phi: f64,
    k_max: usize,
) -> Result<GaugeMoments> {
    // 1e-12 slack: degree-to-radian conversion of the window edges lands
    // an ulp off the π/3 and π constants.
    let window = (std::f64::consts::FRAC_PI_3 - 1e-12)..=(std::f64::consts::PI + 1e-12);
    if phi.is_nan() || !window.contains(&phi) {
        return Err(Error::infeasible(format!(
            "Levenshtein gauge requires phi in [pi/3, pi], got {phi}"
        )));
    }
    let phi = phi.min(std::f64::consts::PI);
    let (ln_m, degree) = kl_m_bound_with(roots, n, phi, k_max)?;
    // M >= 2 always (two antipodal points), so f = 1/M <= 1 without clamping.
    assert!(
        ln_m.ln() >= std::f64::consts::LN_2 - 1e-12,
        "spherical-code bound below 2"
    );
    let support_radius = (2.0 / (1.0 - phi.cos())).sqrt();
    let ln_f = -ln_m.ln();
    let mut log_moments = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let ln = ln_ball_volume(j).ln() + j as f64 * support_radius.ln() + ln_f;
        log_moments.push(LogNonNeg::from_ln(ln));
    }
    Ok(GaugeMoments {
        kind: GaugeKind::LevenshteinPrecise { phi },
        n,
        support_radius,
        log_moments,
        gauge_peak: ln_f.exp(),
        kl_degree: Some(degree),
    })
}

/// The angle at which the asymptotic formula saturates the gauge cap:
/// sin(φ/2) 2^{0.599} = 1, about 82.65°. Beyond it the formula would give
/// f > 1, which no gauge attains, so the sweep domain ends here. (The
/// asymptotic code-size bound itself is only proved for φ ≤ 63°; everything
/// built from this gauge is flagged heuristic.)
pub fn kl_asymptotic_phi_cap() -> f64 {
    2.0 * 2f64.powf(-0.599).asin()
}

/// Moments of the gauge built from the asymptotic spherical-code bound,
/// with the unknown o(n) term dropped: f = min(1, (sin(φ/2))^n 2^{0.599 n})
/// on the ball of radius R = 1/sin(φ/2). Accepted for φ from π/3 up to the
/// cap angle of [`kl_asymptotic_phi_cap`]; angles whose formula value would
/// exceed 1 are rejected rather than silently clamped. Results are
/// heuristic and flagged as such.
pub fn moments_kl_asymptotic(n: usize, phi: f64) -> Result<GaugeMoments> {
    if n == 0 {
        return Err(Error::domain("gauge moments require n >= 1"));
    }
    let window = (std::f64::consts::FRAC_PI_3 - 1e-12)..=(std::f64::consts::PI + 1e-12);
    if phi.is_nan() || !window.contains(&phi) {
        return Err(Error::infeasible(format!(
            "asymptotic gauge requires phi in [pi/3, pi], got {:.4} rad",
            phi
        )));
    }
    let sin_half = (phi / 2.0).sin();
    let ln_f_raw = n as f64 * (sin_half.ln() + 0.599 * std::f64::consts::LN_2);
    if ln_f_raw > 1e-9 {
        return Err(Error::infeasible(format!(
            "asymptotic gauge value would exceed 1 at phi = {:.4} rad; the formula caps out at {:.4} rad",
            phi,
            kl_asymptotic_phi_cap()
        )));
    }
    let ln_f = ln_f_raw.min(0.0);
    let support_radius = 1.0 / sin_half;
    let mut log_moments = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let ln = ln_ball_volume(j).ln() + j as f64 * support_radius.ln() + ln_f;
        log_moments.push(LogNonNeg::from_ln(ln));
    }
    Ok(GaugeMoments {
        kind: GaugeKind::KlAsymptotic { phi },
        n,
        support_radius,
        log_moments,
        gauge_peak: ln_f.exp(),
        kl_degree: None,
    })
}
