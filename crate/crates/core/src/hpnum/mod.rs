//! Arbitrary-precision scalars, Bessel functions and adaptive quadrature.
//!
//! Every value carries its binary precision; nothing reads a global
//! rounding state. Backed by `astro-float`.

pub mod bessel;
pub mod complex;
pub mod quad;
pub mod real;

pub use bessel::{bessel_i1, bessel_i32, bessel_i32_closed, bessel_i32_series, bessel_i_int};
pub use complex::ComplexHP;
pub use quad::{quad_decay, ErrorModel, quad_finite, quad_finite_with, QuadOptions, QuadratureResult, Rule};
pub use real::{Real, MIN_PREC};

/// Default working precision for the exact formula at index `n`:
/// 64 + ⌈log2(e)·π·√(5n/6)⌉ bits.
pub fn default_precision(n: u64) -> usize {
    let growth = std::f64::consts::LOG2_E * std::f64::consts::PI * (5.0 * n as f64 / 6.0).sqrt();
    64 + growth.ceil() as usize
}
