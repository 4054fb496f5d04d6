//! Symmetric Jacobi polynomials P_k^{(α,α)} and their largest roots.
//!
//! Only the α = β specialization is needed: the spherical-code bound uses
//! α = (n-3)/2. Evaluation runs the three-term recurrence with periodic
//! renormalization (P_k(1) = C(k+α, k) overflows f64 for large k and α;
//! rescaling preserves sign and root locations). Largest roots come from
//! bisection on brackets guaranteed by root interlacing:
//! t_{1,k-1} < t_{1,k} < 1.

use crate::error::{Error, Result};

const RESCALE_LIMIT: f64 = 1e150;
const ROOT_TOL: f64 = 1e-13;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha <= -1.0 || !alpha.is_finite() {
        return Err(Error::domain(format!(
            "Jacobi parameter must satisfy alpha > -1, got {alpha}"
        )));
    }
    Ok(())
}

/// P_k^{(α,α)}(x) by the three-term recurrence.
///
/// The value is reconstructed from the rescaled recurrence and may overflow
/// to ±inf for large k and α; sign and roots are always correct.
pub fn jacobi_eval(k: usize, alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let (value, ln_scale) = jacobi_eval_scaled(k, alpha, x);
    Ok(value * ln_scale.exp())
}

/// Rescaled evaluation: returns (v, s) with P_k^{(α,α)}(x) = v · e^s.
fn jacobi_eval_scaled(k: usize, alpha: f64, x: f64) -> (f64, f64) {
    if k == 0 {
        return (1.0, 0.0);
    }
    let mut p_prev = 1.0;
    let mut p = (alpha + 1.0) * x;
    let mut ln_scale = 0.0;
    for m in 2..=k {
        let mf = m as f64;
        let s = 2.0 * mf + 2.0 * alpha;
        let a = (s - 1.0) * s / (2.0 * mf * (mf + 2.0 * alpha));
        let c = (mf + alpha - 1.0) * (mf + alpha - 1.0) * s / (mf * (mf + 2.0 * alpha) * (s - 2.0));
        let p_next = a * x * p - c * p_prev;
        p_prev = p;
        p = p_next;
        let mag = p.abs().max(p_prev.abs());
        if mag > RESCALE_LIMIT || (mag > 0.0 && mag < 1.0 / RESCALE_LIMIT) {
            p /= mag;
            p_prev /= mag;
            ln_scale += mag.ln();
        }
    }
    (p, ln_scale)
}

/// Largest root t_{1,k}^{α,α} of P_k^{(α,α)}, to absolute error ≤ 1e-12.
pub fn jacobi_largest_root(k: usize, alpha: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("largest root requires degree k >= 1"));
    }
    let mut table = JacobiRoots::new(alpha)?;
    table.ensure(k)?;
    Ok(table.get(k))
}

/// Incrementally built table of largest roots for a fixed α.
///
/// Root k's bisection bracket is (root k-1, 1), so the table fills in
/// degree order; sharing it across spherical-code bound evaluations avoids
/// recomputing the whole chain per angle.
pub struct JacobiRoots {
    alpha: f64,
    roots: Vec<f64>,
}

impl JacobiRoots {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(JacobiRoots {
            alpha,
            roots: Vec::new(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Largest root of degree k; `ensure(k)` must have succeeded.
    pub fn get(&self, k: usize) -> f64 {
        self.roots[k - 1]
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Extends the table through degree k.
    pub fn ensure(&mut self, k: usize) -> Result<()> {
        if self.roots.is_empty() {
            // P_1 = (α+1) x
            self.roots.push(0.0);
        }
        while self.roots.len() < k {
            let m = self.roots.len() + 1;
            let root = self.bisect_degree(m)?;
            self.roots.push(root);
        }
        Ok(())
    }

    fn bisect_degree(&self, m: usize) -> Result<f64> {
        let mut lo = self.get(m - 1);
        let mut hi = 1.0;
        let sign_lo = jacobi_eval_scaled(m, self.alpha, lo).0;
        let sign_hi = jacobi_eval_scaled(m, self.alpha, hi).0;
        if !(sign_lo < 0.0 && sign_hi > 0.0) {
            return Err(Error::numerical(format!(
                "bisection bracket failure for Jacobi degree {m}, alpha {}",
                self.alpha
            )));
        }
        while hi - lo > ROOT_TOL {
            let mid = 0.5 * (lo + hi);
            let v = jacobi_eval_scaled(m, self.alpha, mid).0;
            if v == 0.0 {
                return Ok(mid);
            }
            if v > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}
