//! Upper bounds on the packing density of the regular cross-polytope.
//!
//! The regular cross-polytope X^n = conv(±e_1, …, ±e_n) has volume 2^n/n!
//! and inradius 1/√n. This crate computes upper bounds on its packing
//! density δ(X^n) by two routes:
//!
//! * the insphere volume ratio, δ(X^n) ≤ vol(X^n)/(r^n κ_n) · δ(B^n),
//!   fed by known ball-packing bounds;
//! * Blichfeldt's method in the Fejes Tóth–Kuperberg form: for a gauge f
//!   of the unit ball and each ρ in (0, r], δ(X^n) ≤ vol(X^n)/G(ρ) where
//!   G(ρ) = Σ_j ρ^j I_j(f) ((r-ρ)/r)^{n-j} V_{n-j}(X^n).
//!
//! The intrinsic volumes V_j(X^n) come from the Betke–Henk outer-angle
//! formula, evaluated by log-space quadrature; gauges include Blichfeldt's
//! f₀ and f*, the Levenshtein spherical-code gauge with the precise
//! Kabatjanskii–Levenshtein bound, and its asymptotic form. All magnitudes
//! are carried as logarithms so that dimensions up to 1000 and beyond stay
//! representable.

pub mod bounds;
pub mod crosspoly;
mod error;
pub mod gauges;
pub mod numerics;

pub use error::{Error, Result};
