//! Nonnegative reals carried as natural logarithms.
//!
//! Every density, volume, moment, and G-value in this crate is a product
//! or sum of quantities like n! and 24^12 that overflow binary64 long
//! before the dimensions of interest (n up to 1000 and beyond). All such
//! quantities are therefore stored as [`LogNonNeg`]: the log of a
//! nonnegative real, with `-inf` encoding exactly zero.

use std::cmp::Ordering;
use std::iter::Sum;
use std::ops::{Add, Div, Mul};

/// A nonnegative real number represented by its natural logarithm.
///
/// `ln = -inf` encodes exactly zero. Multiplication is exact (addition of
/// logs); addition goes through log-sum-exp and is accurate to a few ulps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogNonNeg {
    ln: f64,
}

impl LogNonNeg {
    /// Exactly zero.
    pub const ZERO: LogNonNeg = LogNonNeg {
        ln: f64::NEG_INFINITY,
    };

    /// Exactly one.
    pub const ONE: LogNonNeg = LogNonNeg { ln: 0.0 };

    /// Wraps a value already in log scale.
    pub fn from_ln(ln: f64) -> Self {
        debug_assert!(!ln.is_nan(), "LogNonNeg::from_ln(NaN)");
        LogNonNeg { ln }
    }

    /// Converts a nonnegative real into log representation.
    ///
    /// Panics on negative or NaN input: callers own the sign of their
    /// quantities, and a negative here is always a programming error.
    pub fn from_real(x: f64) -> Self {
        assert!(x >= 0.0, "LogNonNeg::from_real({x}) on negative input");
        LogNonNeg { ln: x.ln() }
    }

    /// The stored logarithm (`-inf` for zero).
    pub fn ln(self) -> f64 {
        self.ln
    }

    /// Back to a plain real. May underflow to 0.0 or overflow to +inf;
    /// the log representation retains the value either way.
    pub fn to_real(self) -> f64 {
        self.ln.exp()
    }

    pub fn is_zero(self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    /// `self^k` for integer k (exact in log space).
    pub fn powi(self, k: u32) -> Self {
        if k == 0 {
            return LogNonNeg::ONE;
        }
        LogNonNeg {
            ln: self.ln * f64::from(k),
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self.ln >= other.ln {
            self
        } else {
            other
        }
    }
}

impl Add for LogNonNeg {
    type Output = LogNonNeg;

    /// Log-sum-exp of two terms: `ln(e^a + e^b)`.
    ///
    /// `a + ZERO` returns `a` bit-exactly.
    fn add(self, rhs: LogNonNeg) -> LogNonNeg {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.ln >= rhs.ln {
            (self.ln, rhs.ln)
        } else {
            (rhs.ln, self.ln)
        };
        LogNonNeg {
            ln: hi + (lo - hi).exp().ln_1p(),
        }
    }
}

impl Mul for LogNonNeg {
    type Output = LogNonNeg;

    /// Exact in log space: addition of logs. `a * ONE` returns `a` bit-exactly.
    fn mul(self, rhs: LogNonNeg) -> LogNonNeg {
        if self.is_zero() || rhs.is_zero() {
            return LogNonNeg::ZERO;
        }
        LogNonNeg {
            ln: self.ln + rhs.ln,
        }
    }
}

impl Div for LogNonNeg {
    type Output = LogNonNeg;

    fn div(self, rhs: LogNonNeg) -> LogNonNeg {
        assert!(!rhs.is_zero(), "LogNonNeg division by zero");
        if self.is_zero() {
            return LogNonNeg::ZERO;
        }
        LogNonNeg {
            ln: self.ln - rhs.ln,
        }
    }
}

impl Sum for LogNonNeg {
    fn sum<I: Iterator<Item = LogNonNeg>>(iter: I) -> LogNonNeg {
        let lns: Vec<f64> = iter.map(|v| v.ln).collect();
        LogNonNeg::from_ln(log_sum_exp(&lns))
    }
}

impl PartialOrd for LogNonNeg {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogNonNeg {
    fn cmp(&self, other: &Self) -> Ordering {
        // ln is never NaN by construction.
        self.ln.partial_cmp(&other.ln).expect("NaN in LogNonNeg")
    }
}

impl Eq for LogNonNeg {}

/// Two-pass log-sum-exp over a slice of log values.
///
/// `-inf` entries (exact zeros) are skipped; an all-zero input yields `-inf`.
pub fn log_sum_exp(lns: &[f64]) -> f64 {
    let mut m = f64::NEG_INFINITY;
    for &v in lns {
        debug_assert!(!v.is_nan(), "NaN term in log_sum_exp");
        if v > m {
            m = v;
        }
    }
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut s = 0.0;
    for &v in lns {
        if v != f64::NEG_INFINITY {
            s += (v - m).exp();
        }
    }
    m + s.ln()
}
