//! Density upper bounds: the G(ρ) polynomial, its maximization, and the
//! two bounding routes.
//!
//! For a polytope circumscribed about its insphere the Fejes Tóth–Kuperberg
//! integral collapses to the degree-n polynomial
//!
//!   G(ρ) = Σ_{j=0}^{n} ρ^j I_j(f) ((r-ρ)/r)^{n-j} V_{n-j},
//!
//! every coefficient nonnegative, so ln G is a log-sum-exp and stays
//! evaluable when the individual terms are e^{±10^3}. The packing density
//! satisfies δ ≤ vol/G(ρ) for every ρ in (0, r]: maximizing G sharpens the
//! bound but can never invalidate it.

use crate::crosspoly::{log_volume_xn, IntrinsicVolumes};
use crate::error::{Error, Result};
use crate::gauges::{moments_kl_asymptotic, moments_levenshtein_with, GaugeKind, GaugeMoments};
use crate::numerics::{golden_section_max, ln_ball_volume, log_sum_exp, JacobiRoots, LogNonNeg};

/// Which route produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    InsphereRatio,
    Blichfeldt,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::InsphereRatio => "insphere",
            Method::Blichfeldt => "blichfeldt",
        }
    }
}

/// Whether a bound is a proved inequality or relies on a dropped o(n) term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rigor {
    Rigorous,
    Heuristic,
}

impl Rigor {
    pub fn name(&self) -> &'static str {
        match self {
            Rigor::Rigorous => "rigorous",
            Rigor::Heuristic => "heuristic",
        }
    }
}

/// Sign of a difference of two huge positive numbers, or `Indeterminate`
/// when cancellation leaves fewer than ~8 significant digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignEstimate {
    Positive,
    Negative,
    Indeterminate,
}

impl SignEstimate {
    pub fn symbol(&self) -> &'static str {
        match self {
            SignEstimate::Positive => "+",
            SignEstimate::Negative => "-",
            SignEstimate::Indeterminate => "?",
        }
    }
}

/// Relative cancellation below which a computed sign is not trusted.
const SIGN_CANCELLATION_LIMIT: f64 = 1e-8;

/// (pos - neg) / max(pos, neg) from log-space magnitudes; exact at the
/// extremes, ≈ ln_pos - ln_neg when the difference is small.
fn signed_rel_diff(ln_pos: f64, ln_neg: f64) -> f64 {
    let d = ln_pos - ln_neg;
    if d >= 0.0 {
        -(-d).exp_m1()
    } else {
        d.exp_m1()
    }
}

fn sign_estimate(ln_pos: f64, ln_neg: f64) -> SignEstimate {
    let rel = signed_rel_diff(ln_pos, ln_neg);
    if rel.abs() < SIGN_CANCELLATION_LIMIT {
        SignEstimate::Indeterminate
    } else if rel > 0.0 {
        SignEstimate::Positive
    } else {
        SignEstimate::Negative
    }
}

/// Derivative structure of G at the interval endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics {
    /// G'(0) as a signed relative difference of its two terms
    /// (±(pos-neg)/max); zero for the f* gauge by construction.
    pub g_prime_0: f64,
    /// Sign of G''(0).
    pub g_second_0_sign: SignEstimate,
    /// Sign of G'(r_n).
    pub g_prime_rn_sign: SignEstimate,
}

/// One bound computation, ready for serialization.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub method: Method,
    pub gauge: Option<GaugeKind>,
    pub rho_star: Option<f64>,
    /// ln of the raw ratio; may exceed 0 when the method is trivial.
    pub log_bound: f64,
    /// exp(log_bound) clamped to 1 (a density cannot exceed 1); may
    /// underflow to 0 with the log retained.
    pub bound: f64,
    pub diagnostics: Option<Diagnostics>,
    pub rigor: Rigor,
    /// Jacobi degree selected by the spherical-code bound, when relevant.
    pub kl_degree: Option<usize>,
    /// Index of the dominant ρ-power at the maximizing ρ.
    pub dominant_power: Option<usize>,
}

/// The polynomial G(ρ) in the nonnegative-coefficient basis
/// coeff_j = I_j V_{n-j} / r^{n-j}, so G(ρ) = Σ_j coeff_j ρ^j (r-ρ)^{n-j}.
#[derive(Clone, Debug)]
pub struct GProfile {
    n: usize,
    log_r: f64,
    /// ln coeff_j, indexed j = 0 … n.
    pub log_coeff: Vec<LogNonNeg>,
}

/// k · v with the convention 0 · (-inf) = 0, for endpoint terms.
fn count_times(k: usize, v: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        k as f64 * v
    }
}

impl GProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    /// ln r_n.
    pub fn log_r(&self) -> f64 {
        self.log_r
    }

    pub fn inradius(&self) -> f64 {
        self.log_r.exp()
    }

    /// ln G(ρ) for ρ in (0, r]; the endpoint terms survive exactly.
    pub fn eval_ln(&self, rho: f64) -> f64 {
        let mut terms = Vec::with_capacity(self.n + 1);
        self.fill_terms(rho, &mut terms);
        log_sum_exp(&terms)
    }

    fn fill_terms(&self, rho: f64, terms: &mut Vec<f64>) {
        terms.clear();
        let ln_rho = rho.ln();
        let ln_rem = (self.inradius() - rho).max(0.0).ln();
        for (j, c) in self.log_coeff.iter().enumerate() {
            terms.push(c.ln() + count_times(j, ln_rho) + count_times(self.n - j, ln_rem));
        }
    }

    /// Index j of the largest term of G(ρ).
    pub fn dominant_term(&self, rho: f64) -> usize {
        let mut terms = Vec::with_capacity(self.n + 1);
        self.fill_terms(rho, &mut terms);
        let mut best = 0;
        for (j, &t) in terms.iter().enumerate() {
            if t > terms[best] {
                best = j;
            }
        }
        best
    }

    /// ln G(0) = ln(I_0 V_n): the limit value at the excluded endpoint.
    pub fn ln_at_zero(&self) -> f64 {
        self.log_coeff[0].ln() + self.n as f64 * self.log_r
    }

    /// ln G(r) = ln(I_n r^n).
    pub fn ln_at_r(&self) -> f64 {
        self.log_coeff[self.n].ln() + self.n as f64 * self.log_r
    }

    /// The two log-magnitudes of G'(r) = n c_n r^{n-1} - c_{n-1} r^{n-1},
    /// obtained by differentiating the coefficient form term by term (every
    /// term with a (r-ρ) power ≥ 2 vanishes at ρ = r).
    pub fn derivative_at_r_parts(&self) -> (f64, f64) {
        let n = self.n;
        let ln_pos = (n as f64).ln() + self.log_coeff[n].ln() + count_times(n - 1, self.log_r);
        let ln_neg = self.log_coeff[n - 1].ln() + count_times(n - 1, self.log_r);
        (ln_pos, ln_neg)
    }
}

/// Assembles G(ρ) for X^n from intrinsic volumes and gauge moments.
pub fn build_g_profile(n: usize, iv: &IntrinsicVolumes, gauge: &GaugeMoments) -> Result<GProfile> {
    if iv.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: iv.n(),
        });
    }
    if gauge.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: gauge.n(),
        });
    }
    let log_r = -0.5 * (n as f64).ln();
    let mut log_coeff = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let ln_c = gauge.log_moment(j).ln() + iv.log_v(n - j).ln() - count_times(n - j, log_r);
        log_coeff.push(LogNonNeg::from_ln(ln_c));
    }
    Ok(GProfile {
        n,
        log_r,
        log_coeff,
    })
}

/// Grid scan of ln G over (0, r] followed by golden-section refinement in
/// the bracketing grid cells. Returns (ρ*, ln G(ρ*)). Under-maximization
/// would only weaken the reported bound, never invalidate it.
pub fn maximize_g(
    profile: &GProfile,
    grid_points: usize,
    refine_tol: f64,
) -> Result<(f64, LogNonNeg)> {
    if grid_points < 64 {
        return Err(Error::domain("grid must have at least 64 points"));
    }
    if refine_tol.is_nan() || refine_tol <= 0.0 {
        return Err(Error::domain("refinement tolerance must be positive"));
    }
    let r = profile.inradius();
    let step = r / grid_points as f64;
    let mut terms = Vec::with_capacity(profile.n() + 1);
    let mut best_i = 1;
    let mut best_v = f64::NEG_INFINITY;
    for i in 1..=grid_points {
        let rho = if i == grid_points { r } else { step * i as f64 };
        profile.fill_terms(rho, &mut terms);
        let v = log_sum_exp(&terms);
        if v.is_nan() {
            return Err(Error::numerical(format!("G evaluated to NaN at rho {rho}")));
        }
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let mut rho_star = if best_i == grid_points {
        r
    } else {
        step * best_i as f64
    };
    let lo = if best_i == 1 {
        // stay inside the open end (0, ·]
        step * 1e-9
    } else {
        step * (best_i - 1) as f64
    };
    let hi = if best_i == grid_points {
        r
    } else {
        (step * (best_i + 1) as f64).min(r)
    };
    let (gx, gv) = golden_section_max(|rho| profile.eval_ln(rho), lo, hi, refine_tol * r);
    let mut ln_g = best_v;
    if gv > best_v {
        rho_star = gx;
        ln_g = gv;
    }
    Ok((rho_star, LogNonNeg::from_ln(ln_g)))
}

/// Grid and refinement settings for the G maximization.
#[derive(Clone, Copy, Debug)]
pub struct OptimizeOpts {
    pub grid_points: usize,
    pub refine_tol: f64,
}

impl Default for OptimizeOpts {
    fn default() -> Self {
        OptimizeOpts {
            grid_points: 2048,
            refine_tol: 1e-12,
        }
    }
}

/// The insphere volume-ratio bound
/// δ(K) ≤ vol(K)/(r^n κ_n) · δ(B^n), for any convex body's data.
pub fn insphere_bound(
    log_vol: LogNonNeg,
    inradius: f64,
    n: usize,
    log_delta_ball: LogNonNeg,
    delta_rigorous: bool,
) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::domain("dimension must be >= 1"));
    }
    if inradius.is_nan() || inradius <= 0.0 || !inradius.is_finite() {
        return Err(Error::domain(format!(
            "inradius must be positive, got {inradius}"
        )));
    }
    if log_delta_ball.ln() > 0.0 {
        return Err(Error::domain("ball density bound must not exceed 1"));
    }
    let log_bound =
        log_vol.ln() - n as f64 * inradius.ln() - ln_ball_volume(n).ln() + log_delta_ball.ln();
    Ok(BoundReport {
        n,
        method: Method::InsphereRatio,
        gauge: None,
        rho_star: None,
        log_bound,
        bound: log_bound.exp().min(1.0),
        diagnostics: None,
        rigor: if delta_rigorous {
            Rigor::Rigorous
        } else {
            Rigor::Heuristic
        },
        kl_degree: None,
        dominant_power: None,
    })
}

/// Endpoint derivative diagnostics of G, each computed as a signed
/// difference of two log-space magnitudes:
///
///   G'(0)  = I_1 V_{n-1} - (n/r) I_0 V_n                    (zero for f*),
///   G''(0) = n(n-1)/r² I_0 V_n - 2(n-1)/r I_1 V_{n-1} + 2 I_2 V_{n-2},
///   G'(r)  = r^{n-2} (n r I_n - I_{n-1} V_1).
pub fn g_derivative_diagnostics(
    n: usize,
    iv: &IntrinsicVolumes,
    gauge: &GaugeMoments,
) -> Result<Diagnostics> {
    if iv.n() != n || gauge.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if iv.n() != n { iv.n() } else { gauge.n() },
        });
    }
    let nf = n as f64;
    let ln_r = -0.5 * nf.ln();
    let i = |j: usize| gauge.log_moment(j).ln();
    let v = |j: usize| iv.log_v(j).ln();

    let prime0_pos = i(1) + v(n - 1);
    let prime0_neg = nf.ln() - ln_r + i(0) + v(n);
    let g_prime_0 = signed_rel_diff(prime0_pos, prime0_neg);

    let g_second_0_sign = if n >= 2 {
        let pos = log_sum_exp(&[
            (nf * (nf - 1.0)).ln() - 2.0 * ln_r + i(0) + v(n),
            std::f64::consts::LN_2 + i(2) + v(n - 2),
        ]);
        let neg = (2.0 * (nf - 1.0)).ln() - ln_r + i(1) + v(n - 1);
        sign_estimate(pos, neg)
    } else {
        // G is linear for n = 1; there is no curvature to report.
        SignEstimate::Indeterminate
    };

    let prime_r_pos = nf.ln() + ln_r + i(n);
    let prime_r_neg = i(n - 1) + v(1);
    let g_prime_rn_sign = sign_estimate(prime_r_pos, prime_r_neg);

    Ok(Diagnostics {
        g_prime_0,
        g_second_0_sign,
        g_prime_rn_sign,
    })
}

/// The Blichfeldt route: builds G for the given gauge, maximizes it, and
/// reports vol(X^n)/G(ρ*) with derivative diagnostics.
pub fn blichfeldt_bound(
    n: usize,
    iv: &IntrinsicVolumes,
    gauge: &GaugeMoments,
    opts: &OptimizeOpts,
) -> Result<BoundReport> {
    let profile = build_g_profile(n, iv, gauge)?;
    let (rho_star, log_g_star) = maximize_g(&profile, opts.grid_points, opts.refine_tol)?;
    let log_bound = log_volume_xn(n)?.ln() - log_g_star.ln();
    let diagnostics = g_derivative_diagnostics(n, iv, gauge)?;
    Ok(BoundReport {
        n,
        method: Method::Blichfeldt,
        gauge: Some(gauge.kind),
        rho_star: Some(rho_star),
        log_bound,
        bound: log_bound.exp().min(1.0),
        diagnostics: Some(diagnostics),
        rigor: if gauge.kind.is_heuristic() {
            Rigor::Heuristic
        } else {
            Rigor::Rigorous
        },
        kl_degree: gauge.kl_degree,
        dominant_power: Some(profile.dominant_term(rho_star)),
    })
}

/// Best Levenshtein-gauge bound over a grid of angular distances, sharing
/// one Jacobi root table across the grid.
pub fn optimize_levenshtein_bound(
    n: usize,
    iv: &IntrinsicVolumes,
    phi_grid: &[f64],
    k_max: usize,
    opts: &OptimizeOpts,
) -> Result<BoundReport> {
    if phi_grid.is_empty() {
        return Err(Error::domain("empty angle grid"));
    }
    let mut roots = JacobiRoots::new((n as f64 - 3.0) / 2.0)?;
    let mut best: Option<BoundReport> = None;
    let mut last_err = None;
    for &phi in phi_grid {
        let gauge = match moments_levenshtein_with(&mut roots, n, phi, k_max) {
            Ok(g) => g,
            Err(e @ Error::Infeasible(_)) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let report = blichfeldt_bound(n, iv, &gauge, opts)?;
        if best.as_ref().is_none_or(|b| report.log_bound < b.log_bound) {
            best = Some(report);
        }
    }
    best.ok_or_else(|| {
        last_err.unwrap_or_else(|| Error::infeasible("no feasible angle in the grid"))
    })
}

/// Per-dimension best bound from the asymptotic spherical-code gauge.
/// Every report is flagged heuristic.
pub fn kl_asymptotic_sweep(
    ns: &[usize],
    mut iv_for: impl FnMut(usize) -> Result<IntrinsicVolumes>,
    phi_grid: &[f64],
    opts: &OptimizeOpts,
) -> Result<Vec<BoundReport>> {
    if ns.is_empty() {
        return Err(Error::domain("empty dimension list"));
    }
    if phi_grid.is_empty() {
        return Err(Error::domain("empty angle grid"));
    }
    let mut reports = Vec::with_capacity(ns.len());
    for &n in ns {
        let iv = iv_for(n)?;
        let mut best: Option<BoundReport> = None;
        for &phi in phi_grid {
            let gauge = moments_kl_asymptotic(n, phi)?;
            let report = blichfeldt_bound(n, &iv, &gauge, opts)?;
            if best.as_ref().is_none_or(|b| report.log_bound < b.log_bound) {
                best = Some(report);
            }
        }
        reports.push(best.expect("nonempty angle grid"));
    }
    Ok(reports)
}
