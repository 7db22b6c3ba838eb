//! L_k(n, y): the Bessel closed form and the rectangle contour integral it equals.

use crate::error::{Error, Result};
use crate::hpnum::{bessel_i1, ErrorModel, quad_finite_with, ComplexHP, QuadOptions, QuadratureResult, Real, Rule};

/// L_k(n, y) = (1/k)√(y/n) I₁(4π√(ny)/k).
pub fn l_closed(k: i64, n: u64, y: &Real) -> Result<Real> {
    if k < 1 || n < 1 || y.is_negative() {
        return Err(Error::InvalidArgument(format!("need k, n >= 1 and y >= 0, got k={k} n={n}")));
    }
    let p = y.prec();
    let nn = Real::from_i64(n as i64, p);
    let kk = Real::from_i64(k, p);
    let arg = Real::pi(p) * Real::from_i64(4, p) * (&nn * y).sqrt() / &kk;
    Ok((y / &nn).sqrt() * bessel_i1(&arg)? / kk)
}

/// Bits of headroom needed for the largest integrand value on the rectangle.
fn headroom_bits(k: i64, n: u64, y: f64, a: f64, c: f64) -> usize {
    let tau = std::f64::consts::TAU;
    let e = tau * n as f64 * a + tau * y / (k * k) as f64 * (1.0 / a).max(1.0 / (2.0 * c));
    (e * std::f64::consts::LOG2_E).ceil() as usize + 32
}

/// (1/2πi)∮ e^{2πnw + 2πy/(k²w)} dw over the rectangle ±1/N² ± i/(k(k+N)), counterclockwise.
///
/// The integrand peaks near w = 1/N² with value e^{2πy N²/k²}, so the working
/// precision rises by that many bits. The vertical edges use w = ±a(1 + i tan φ),
/// which spreads the fast phase near the real axis evenly.
pub fn l_contour(k: i64, n: u64, y: &Real, big_n: i64, tol: &Real) -> Result<QuadratureResult> {
    if k < 1 || n < 1 || y.is_negative() {
        return Err(Error::InvalidArgument(format!("need k, n >= 1 and y >= 0, got k={k} n={n}")));
    }
    if big_n < 1 {
        return Err(Error::InvalidArgument(format!("degenerate rectangle for N={big_n}")));
    }
    let base = y.prec().max(tol.prec());
    let (af, cf) = (1.0 / (big_n * big_n) as f64, 1.0 / (k * (k + big_n)) as f64);
    let p = base + headroom_bits(k, n, y.to_f64(), af, cf);
    let y = y.with_prec(p);
    let tau = Real::pi(p) * Real::from_i64(2, p);
    let alpha = &tau * Real::from_i64(n as i64, p);
    let beta = &tau * &y / Real::from_i64(k * k, p);
    let a = Real::from_ratio(1, big_n * big_n, p);
    let c = Real::from_ratio(1, k * (k + big_n), p);
    let g = |w: &ComplexHP| (&w.scale(&alpha) + &w.recip().scale(&beta)).exp();
    let opts = QuadOptions { rule: Rule::High, max_subdivisions: 4000, error_model: ErrorModel::Spectral };
    let tol = tol.with_prec(p) * Real::from_ratio(1, 4, p);
    // horizontal edges, both traversed as s from −a to a: bottom forward, top backward
    let horiz = |x: &Real| {
        let lo = g(&ComplexHP::new(x.clone(), -&c));
        let hi = g(&ComplexHP::new(x.clone(), c.clone()));
        &lo - &hi
    };
    let h = quad_finite_with(&horiz, &-&a, &a, &tol, &opts)?;
    // vertical edges: w = ±a + i a tan φ, dw = i a sec²φ dφ; right upward, left downward
    let phi_max = (&c / &a).atan();
    let vert = |phi: &Real| {
        let t = &a * &(phi.sin() / phi.cos());
        let sec2 = phi.cos().sqr().recip();
        let jac = ComplexHP::new(Real::zero(p), &a * &sec2);
        let right = g(&ComplexHP::new(a.clone(), t.clone()));
        let left = g(&ComplexHP::new(-&a, t));
        &(&right - &left) * &jac
    };
    let v = quad_finite_with(&vert, &-&phi_max, &phi_max, &tol, &opts)?;
    let total = &h.value + &v.value;
    // divide by 2πi
    let two_pi_i = ComplexHP::new(Real::zero(p), tau.clone());
    let value = (&total / &two_pi_i).with_prec(base);
    let err = ((&h.abs_error_estimate + &v.abs_error_estimate) / &tau).with_prec(base);
    Ok(QuadratureResult { value, abs_error_estimate: err, subdivisions: h.subdivisions + v.subdivisions })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let p = 128;
        assert!(l_closed(3, 2, &Real::zero(p)).unwrap().is_zero());
        let l = l_closed(1, 1, &Real::one(p)).unwrap();
        let want = bessel_i1(&(Real::pi(p) * Real::from_i64(4, p))).unwrap();
        assert!((&l - &want).abs().to_f64() < 1e-30);
    }

    #[test]
    fn contour_matches_closed_form() {
        let p = 96;
        let y = Real::from_ratio(1, 4, p);
        let r = l_contour(2, 3, &y, 8, &Real::pow2(-70, p)).unwrap();
        let want = l_closed(2, 3, &y).unwrap();
        assert!((&r.value.re - &want).abs().to_f64() < 1e-15 * want.to_f64());
        assert!(r.value.im.abs().to_f64() < 1e-15);
        assert!(l_contour(2, 3, &y, 0, &Real::pow2(-70, p)).is_err());
    }
}
