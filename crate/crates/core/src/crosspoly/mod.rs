//! Geometry of the regular cross-polytope X^n = conv(±e_1, …, ±e_n):
//! volume, inradius, outer angles, and intrinsic volumes.

mod angles;

pub use angles::{log_outer_angle, GammaCache};

use crate::error::{Error, Result};
use crate::numerics::{ln_binomial, ln_factorial, ln_gamma, LogNonNeg, QuadratureSpec};

/// ln vol(X^n) = ln(2^n / n!).
pub fn log_volume_xn(n: usize) -> Result<LogNonNeg> {
    if n == 0 {
        return Err(Error::domain("volume requires n >= 1"));
    }
    Ok(LogNonNeg::from_ln(
        n as f64 * std::f64::consts::LN_2 - ln_factorial(n),
    ))
}

/// Inradius r_n = 1/√n.
pub fn inradius_xn(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("inradius requires n >= 1"));
    }
    Ok(1.0 / (n as f64).sqrt())
}

/// The intrinsic volumes V_0 … V_n of X^n, in log form, together with the
/// outer angles γ(n, j) they were built from.
///
/// V_j for 1 ≤ j ≤ n-1 uses the Betke–Henk formula
///
///   V_j(X^n) = 2^{j+1} C(n, j+1) · √(j+1)/j! · γ(n, j);
///
/// V_0 = 1 and V_n = vol(X^n) are set from first principles (the formula's
/// γ exponent does not cover j = n).
#[derive(Clone, Debug)]
pub struct IntrinsicVolumes {
    n: usize,
    /// ln V_j, indexed j = 0 … n.
    pub log_v: Vec<LogNonNeg>,
    /// ln γ(n, j), indexed j = 0 … n-1.
    pub log_gamma_angles: Vec<LogNonNeg>,
}

impl IntrinsicVolumes {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn log_v(&self, j: usize) -> LogNonNeg {
        self.log_v[j]
    }
}

/// Computes all intrinsic volumes of X^n, fetching outer angles through
/// the cache.
pub fn intrinsic_volumes(
    n: usize,
    spec: &QuadratureSpec,
    cache: &GammaCache,
) -> Result<IntrinsicVolumes> {
    if n == 0 {
        return Err(Error::domain("intrinsic volumes require n >= 1"));
    }
    let mut log_gamma_angles = Vec::with_capacity(n);
    for j in 0..n {
        log_gamma_angles.push(LogNonNeg::from_ln(cache.get_or_compute(n, j, spec)?));
    }
    let mut log_v = vec![LogNonNeg::ONE; n + 1];
    for j in 1..n {
        let jf = j as f64;
        let ln_vj = (jf + 1.0) * std::f64::consts::LN_2
            + ln_binomial(n, j + 1)?.ln()
            + 0.5 * (jf + 1.0).ln()
            - ln_factorial(j)
            + log_gamma_angles[j].ln();
        log_v[j] = LogNonNeg::from_ln(ln_vj);
    }
    log_v[n] = log_volume_xn(n)?;
    Ok(IntrinsicVolumes {
        n,
        log_v,
        log_gamma_angles,
    })
}

/// Böröczky–Henk large-n approximant for γ(n, j) at fixed j:
///
///   γ(n, j) ≈ (1/2) · (j+1)!/√(j+1) · (π ln n)^{j/2} / n^{j+1}.
///
/// Diagnostic only; the bound pipeline always uses the quadrature values.
pub fn bh_gamma_asymptotic(n: usize, j: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("asymptotic form requires n >= 2"));
    }
    let nf = n as f64;
    let jf = j as f64;
    let ln_value = ln_gamma(jf + 2.0).expect("positive") - 0.5 * (jf + 1.0).ln()
        + 0.5 * jf * (std::f64::consts::PI * nf.ln()).ln()
        - (jf + 1.0) * nf.ln()
        - std::f64::consts::LN_2;
    Ok(ln_value.exp())
}
