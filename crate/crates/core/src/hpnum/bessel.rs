//! Modified Bessel functions of the first kind for real non-negative arguments.

use super::real::Real;
use crate::error::{Error, Result};

/// I_ν(x) for integer ν by the power series Σ (x/2)^{2m+ν} / (m! (m+ν)!).
pub fn bessel_i_int(nu: u32, x: &Real) -> Real {
    let p = x.prec();
    if x.is_zero() {
        return if nu == 0 { Real::one(p) } else { Real::zero(p) };
    }
    let half = x / Real::from_i64(2, p);
    let q = half.sqr();
    let mut term = half.powi(nu as usize);
    for j in 2..=nu as i64 {
        term = term / Real::from_i64(j, p);
    }
    series_sum(term, &q, nu as i64, x)
}

/// Sums t_0 Σ_m Π (q / ((j+1)(j+1+ν))) with all terms non-negative.
fn series_sum(first: Real, q: &Real, nu: i64, x: &Real) -> Real {
    let p = x.prec();
    let mut term = first;
    let mut sum = term.clone();
    let stop = -(p as f64) - 4.0;
    let peak = x.to_f64() / 2.0;
    let mut m = 0i64;
    loop {
        term = term * q / Real::from_i64((m + 1) * (m + 1 + nu), p);
        sum = &sum + &term;
        m += 1;
        if (m as f64) > peak && term.log2_abs() - sum.log2_abs() < stop {
            break;
        }
    }
    sum
}

/// I_1(x), x >= 0.
pub fn bessel_i1(x: &Real) -> Result<Real> {
    if x.is_negative() {
        return Err(Error::InvalidArgument("bessel_i1 requires x >= 0".into()));
    }
    Ok(bessel_i_int(1, x))
}

/// I_{3/2}(x) by its power series Σ (x/2)^{2m+3/2} / (m! Γ(m+5/2)).
pub fn bessel_i32_series(x: &Real) -> Result<Real> {
    if x.is_negative() || x.is_zero() {
        return Err(Error::InvalidArgument("bessel_i32 requires x > 0".into()));
    }
    let p = x.prec();
    let half = x / Real::from_i64(2, p);
    // Γ(5/2) = 3√π/4
    let gamma = Real::from_ratio(3, 4, p) * Real::pi(p).sqrt();
    let first = half.sqrt() * &half / gamma;
    // ratio of consecutive terms: (x/2)^2 / ((m+1)(m+5/2)) = 2(x/2)^2 / ((m+1)(2m+5))
    let q = half.sqr();
    let mut term = first;
    let mut sum = term.clone();
    let stop = -(p as f64) - 4.0;
    let peak = x.to_f64() / 2.0;
    let mut m = 0i64;
    loop {
        term = term * &q * Real::from_i64(2, p) / Real::from_i64((m + 1) * (2 * m + 5), p);
        sum = &sum + &term;
        m += 1;
        if (m as f64) > peak && term.log2_abs() - sum.log2_abs() < stop {
            break;
        }
    }
    Ok(sum)
}

/// I_{3/2}(x) = √(2/(πx)) (cosh x − sinh(x)/x), with a series path for small x.
pub fn bessel_i32(x: &Real) -> Result<Real> {
    if x.is_negative() || x.is_zero() {
        return Err(Error::InvalidArgument("bessel_i32 requires x > 0".into()));
    }
    let p = x.prec();
    if *x < Real::from_ratio(1, 4, p) {
        return bessel_i32_series(x);
    }
    bessel_i32_closed(x)
}

/// Closed form only. Guard bits cover the cancellation in cosh x − sinh(x)/x.
pub fn bessel_i32_closed(x: &Real) -> Result<Real> {
    if x.is_negative() || x.is_zero() {
        return Err(Error::InvalidArgument("bessel_i32 requires x > 0".into()));
    }
    let p = x.prec();
    let guard = (2.0 * (-x.log2_abs()).max(0.0)) as usize + 16;
    let xe = x.with_prec(p + guard);
    let pe = xe.prec();
    let c = xe.cosh() - xe.sinh() / &xe;
    let pre = (Real::from_i64(2, pe) / (Real::pi(pe) * &xe)).sqrt();
    Ok((pre * c).with_prec(p))
}
