//! The Bessel-weighted integrals 𝓘_{b,k,ν}(n) of the exact formula.

use num_rational::Rational64;
use serde::Serialize;

use super::mordell::{check_pole_floor, cosh_lower_bound, cosh_offset};
use crate::error::{Error, Result};
use crate::hpnum::{bessel_i1, quad_finite_with, ComplexHP, QuadOptions, Real};

#[derive(Clone, Debug)]
pub struct ScriptI {
    pub value: Real,
    pub imag_residue: Real,
    pub abs_error_estimate: Real,
}

/// 𝓘_{b,k,ν}(n) = ∫_{−1}^{1} √(1−x²) I₁((2π/k)√(2bn(1−x²))) / cosh(πi(ν−1/6)/k − (π/k)√(b/3)x) dx.
///
/// Evaluated after x = sin θ, which removes the square-root endpoint
/// singularity; the integrand becomes cos²θ·I₁(A cos θ)/cosh(…sin θ).
/// `tol` is relative to the peak of the integrand; the imaginary part must
/// cancel to the same tolerance.
pub fn script_i(b: Rational64, k: i64, nu: i64, n: u64, tol: &Real) -> Result<ScriptI> {
    if *b.numer() <= 0 {
        return Err(Error::InvalidArgument("the Bessel integral needs b > 0".into()));
    }
    if k < 1 || n < 1 {
        return Err(Error::InvalidArgument(format!("need k >= 1 and n >= 1, got k={k} n={n}")));
    }
    let p = tol.prec().max(crate::hpnum::MIN_PREC);
    let pi = Real::pi(p);
    let kk = Real::from_i64(k, p);
    let br = Real::from_ratio(*b.numer(), *b.denom(), p);
    let ia = ComplexHP::new(Real::zero(p), cosh_offset(k, nu, p));
    check_pole_floor(&cosh_lower_bound(&ia.im, &ComplexHP::from_real(Real::one(p))), p)?;
    // A = (2π/k)√(2bn), the Bessel argument at x = 0
    let amp = &(&pi * Real::from_i64(2, p) / &kk) * &(&br * Real::from_i64(2 * n as i64, p)).sqrt();
    let slope = &pi * &(&br / Real::from_i64(3, p)).sqrt() / &kk;
    let f = |theta: &Real| {
        let c = theta.cos();
        if c.is_negative() || c.is_zero() {
            return ComplexHP::zero(p);
        }
        let bes = bessel_i1(&(&amp * &c)).expect("non-negative argument");
        let num = ComplexHP::from_real(&c.sqr() * &bes);
        let den = (&ia - &ComplexHP::from_real(&slope * &theta.sin())).cosh();
        &num / &den
    };
    let peak = f(&Real::zero(p)).abs();
    let abs_tol = tol * &Real::max(&Real::one(p), &peak);
    let half_pi = &pi / Real::from_i64(2, p);
    let r = quad_finite_with(&f, &-&half_pi, &half_pi, &abs_tol, &QuadOptions::default())?;
    if r.value.im.abs() > abs_tol {
        return Err(Error::SymmetryViolation(format!(
            "imaginary residue {} exceeds {}",
            r.value.im.to_sci(6),
            abs_tol.to_sci(6)
        )));
    }
    Ok(ScriptI { value: r.value.re.clone(), imag_residue: r.value.im.clone(), abs_error_estimate: r.abs_error_estimate })
}

/// JSON row for integral reports.
#[derive(Clone, Debug, Serialize)]
pub struct IntegralRow {
    /// Absent for the Mordell integral, which has no b.
    pub b: Option<String>,
    pub k: i64,
    pub nu: i64,
    pub n: Option<u64>,
    pub value: String,
    pub err: String,
}
