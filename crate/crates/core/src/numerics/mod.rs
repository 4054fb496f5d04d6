//! Log-space arithmetic, special functions, quadrature, and Jacobi roots.
//!
//! Everything here is a pure function of its inputs and safe to call from
//! multiple threads.

mod jacobi;
mod log_domain;
mod quadrature;
mod special;

pub use jacobi::{jacobi_eval, jacobi_largest_root, JacobiRoots};
pub use log_domain::{log_sum_exp, LogNonNeg};
pub use quadrature::{gauss_legendre, golden_section_max, log_integral_exp, QuadratureSpec};
pub use special::{
    erf, erfc, ln_ball_volume, ln_binomial, ln_erf, ln_factorial, ln_gamma, ln_sphere_surface,
};

pub(crate) use special::ln_erf_raw;
