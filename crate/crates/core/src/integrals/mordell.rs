//! Mordell integrals I_{k,ν}(z), the wrapped 𝒥 and its principal part 𝒥*.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hpnum::{quad_decay, quad_finite_with, ComplexHP, QuadOptions, QuadratureResult, Real};

/// a = π(ν − 1/6)/k, the imaginary offset inside every cosh denominator.
pub fn cosh_offset(k: i64, nu: i64, prec: usize) -> Real {
    Real::pi(prec) * Real::from_ratio(6 * nu - 1, 6 * k, prec)
}

/// Lower bound for |cosh(ia − s·x)| over real x.
///
/// |cosh(u+iv)|² = sinh²u + cos²v; splitting at |x| = δ = |cos a|/(Re s + |Im s|)
/// gives the bound |cos a|·Re s/(Re s + |Im s|).
pub fn cosh_lower_bound(a: &Real, s: &ComplexHP) -> Real {
    let ca = a.cos().abs();
    if s.im.is_zero() {
        return ca;
    }
    let den = &s.re + &s.im.abs();
    ca * &s.re / den
}

/// Refuses paths whose cosh bound falls under 2^{−P/2}.
pub fn check_pole_floor(c0: &Real, prec: usize) -> Result<()> {
    let floor = Real::pow2(-(prec as i64) / 2, prec);
    if *c0 < floor {
        return Err(Error::PoleProximity(format!("path too close to pole: |cosh| bound {}", c0.to_sci(6))));
    }
    Ok(())
}

fn working_prec(z: &ComplexHP, tol: &Real) -> usize {
    z.prec().max(tol.prec()).max(crate::hpnum::MIN_PREC)
}

fn ratio(b: Rational64, prec: usize) -> Real {
    Real::from_ratio(*b.numer(), *b.denom(), prec)
}

/// ∫_ℝ e^{−3πzx²/k} / cosh(πi(ν − 1/6)/k − πzx/k) dx.
pub fn mordell_i(k: i64, nu: i64, z: &ComplexHP, tol: &Real) -> Result<QuadratureResult> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
    }
    let p = working_prec(z, tol);
    let z = z.with_prec(p);
    if z.re.is_negative() || z.re.is_zero() {
        return Err(Error::InvalidArgument("Mordell integral needs Re z > 0".into()));
    }
    let pi = Real::pi(p);
    let kk = Real::from_i64(k, p);
    let ia = ComplexHP::new(Real::zero(p), cosh_offset(k, nu, p));
    let s = z.scale(&(&pi / &kk));
    let c0 = cosh_lower_bound(&ia.im, &s);
    check_pole_floor(&c0, p)?;
    let c = s.scale(&Real::from_i64(3, p));
    let f = |x: &Real| {
        let g = (-c.scale(&x.sqr())).exp();
        let h = (&ia - &s.scale(x)).cosh();
        &g / &h
    };
    quad_decay(&f, &c, &c0.recip(), tol, &QuadOptions::default())
}

/// 𝒥_{b,k,ν}(z) = z e^{πb/(kz)} I_{k,ν}(z).
pub fn j_wrapped(b: Rational64, k: i64, nu: i64, z: &ComplexHP, tol: &Real) -> Result<ComplexHP> {
    let p = working_prec(z, tol);
    let z = z.with_prec(p);
    let i = mordell_i(k, nu, &z, tol)?;
    let e = z.recip().scale(&(Real::pi(p) * ratio(b, p) / Real::from_i64(k, p))).exp();
    Ok(&(&z * &e) * &i.value)
}

/// cosh(πi(ν − 1/6)/k − π√(b/3)u/k) as a function of real u.
fn principal_denominator(b: Rational64, k: i64, nu: i64, p: usize) -> impl Fn(&Real) -> ComplexHP {
    let ia = ComplexHP::new(Real::zero(p), cosh_offset(k, nu, p));
    let slope = Real::pi(p) * (ratio(b, p) / Real::from_i64(3, p)).sqrt() / Real::from_i64(k, p);
    move |u: &Real| (&ia - &ComplexHP::from_real(&slope * u)).cosh()
}

fn check_principal_path(k: i64, nu: i64, p: usize) -> Result<()> {
    let c0 = cosh_lower_bound(&cosh_offset(k, nu, p), &ComplexHP::from_real(Real::one(p)));
    check_pole_floor(&c0, p)
}

/// 𝒥*_{b,k,ν}(z) = √(b/3) ∫_{−1}^{1} e^{πb(1−x²)/(kz)} / cosh(πi(ν−1/6)/k − π√(b/3)x/k) dx.
pub fn j_star(b: Rational64, k: i64, nu: i64, z: &ComplexHP, tol: &Real) -> Result<QuadratureResult> {
    if *b.numer() <= 0 {
        return Err(Error::InvalidArgument("principal part needs b > 0".into()));
    }
    let p = working_prec(z, tol);
    let z = z.with_prec(p);
    check_principal_path(k, nu, p)?;
    let den = principal_denominator(b, k, nu, p);
    let w = z.recip().scale(&(Real::pi(p) * ratio(b, p) / Real::from_i64(k, p)));
    let root = (ratio(b, p) / Real::from_i64(3, p)).sqrt();
    let one = Real::one(p);
    let f = |x: &Real| &w.scale(&(&one - &x.sqr())).exp() / &den(x);
    // relative tolerance against the size of the exponential factor
    let scale = Real::max(&one, &w.re.exp());
    let mut r = quad_finite_with(&f, &-&one, &one, &(tol * &scale), &QuadOptions::default())?;
    r.value = r.value.scale(&root);
    r.abs_error_estimate = &r.abs_error_estimate * &root;
    Ok(r)
}

/// 𝒥 − 𝒥* for real z > 0, computed as the tail √(b/3)∫_{|u|>1} e^{πb(1−u²)/(kz)}/cosh(…) du.
///
/// The substitution x = √(b/3)u/z turns 𝒥 into the same integral as 𝒥* over
/// the whole line, so the difference never forms the two large values.
pub fn principal_gap(b: Rational64, k: i64, nu: i64, z: &Real, tol: &Real) -> Result<QuadratureResult> {
    if *b.numer() <= 0 {
        return Err(Error::InvalidArgument("principal part needs b > 0".into()));
    }
    if z.is_negative() || z.is_zero() {
        return Err(Error::InvalidArgument("the tail form needs real z > 0".into()));
    }
    let p = z.prec().max(tol.prec()).max(crate::hpnum::MIN_PREC);
    let z = z.with_prec(p);
    check_principal_path(k, nu, p)?;
    let den = principal_denominator(b, k, nu, p);
    let c = Real::pi(p) * ratio(b, p) / (Real::from_i64(k, p) * &z);
    let root = (ratio(b, p) / Real::from_i64(3, p)).sqrt();
    let one = Real::one(p);
    let c0 = cosh_lower_bound(&cosh_offset(k, nu, p), &ComplexHP::from_real(one.clone()));
    // u = ±(1 + t): the weight is e^{−c(2t + t²)}; cut where c·t·(2 + t) exceeds the budget
    let budget = (Real::from_i64(8, p) / tol).ln() + (&one + &c0.recip()).ln();
    let t_max = (&(&one + &(&budget / &c)).sqrt()) - &one;
    let t_max = Real::max(&t_max, &Real::from_ratio(1, 64, p));
    let f = |t: &Real| {
        let u = &one + t;
        let g = ComplexHP::from_real((-(&c * &(t * &(Real::from_i64(2, p) + t)))).exp());
        let plus = &g / &den(&u);
        let minus = &g / &den(&-&u);
        &plus + &minus
    };
    let half = tol * Real::from_ratio(1, 2, p);
    let mut r = quad_finite_with(&f, &Real::zero(p), &t_max, &half, &QuadOptions::default())?;
    r.value = r.value.scale(&root);
    r.abs_error_estimate = &r.abs_error_estimate * &root + &half;
    Ok(r)
}

/// One row of a principal-part gap record.
#[derive(Clone, Debug, Serialize)]
pub struct GapRow {
    pub z: String,
    /// |𝒥 − 𝒥*| for b > 0, |𝒥| otherwise.
    pub value: f64,
    /// value · |π/2 − π(ν − 1/6)/k|.
    pub constant: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub b: String,
    pub k: i64,
    pub nu: i64,
    pub denominator: f64,
    pub rows: Vec<GapRow>,
    pub c_max: f64,
}

/// |π/2 − π(ν − 1/6)/k|.
pub fn gap_denominator(k: i64, nu: i64) -> f64 {
    let pi = std::f64::consts::PI;
    (pi / 2.0 - pi * (nu as f64 - 1.0 / 6.0) / k as f64).abs()
}

/// Tabulates |𝒥 − 𝒥*| (or |𝒥| when b ≤ 0) along a sequence of real z.
pub fn gap_report(b: Rational64, k: i64, nu: i64, zs: &[Real], tol: &Real) -> Result<GapReport> {
    let den = gap_denominator(k, nu);
    let mut rows = Vec::new();
    for z in zs {
        let value = if *b.numer() > 0 {
            principal_gap(b, k, nu, z, tol)?.value.abs().to_f64()
        } else {
            j_wrapped(b, k, nu, &ComplexHP::from_real(z.clone()), tol)?.abs().to_f64()
        };
        rows.push(GapRow { z: z.to_sci(6), value, constant: value * den });
    }
    let c_max = rows.iter().map(|r| r.constant).fold(0.0, f64::max);
    Ok(GapReport { b: format!("{}/{}", b.numer(), b.denom()), k, nu, denominator: den, rows, c_max })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: usize) -> Real {
        Real::pow2(-60, p)
    }

    #[test]
    fn real_z_gives_real_value() {
        let p = 128;
        for (k, nu) in [(1, 1), (2, 1), (3, 2), (5, 5)] {
            let z = ComplexHP::from_real(Real::from_ratio(4, 5, p));
            let r = mordell_i(k, nu, &z, &t(p)).unwrap();
            assert!(r.value.im.abs().to_f64() < 1e-15, "k={k} nu={nu}");
        }
    }

    #[test]
    fn doubled_precision_oracle() {
        let z = ComplexHP::from_real(Real::one(128));
        let a = mordell_i(1, 1, &z, &t(128)).unwrap().value;
        let z2 = ComplexHP::from_real(Real::one(256));
        let b = mordell_i(1, 1, &z2, &Real::pow2(-120, 256)).unwrap().value;
        assert!((&a.with_prec(256) - &b).abs().to_f64() < 1e-16);
    }

    #[test]
    fn decreases_along_real_axis() {
        let p = 128;
        let v: Vec<f64> = [1, 2, 4]
            .iter()
            .map(|&s| mordell_i(2, 1, &ComplexHP::from_real(Real::from_i64(s, p)), &t(p)).unwrap().value.abs().to_f64())
            .collect();
        assert!(v[0] > v[1] && v[1] > v[2], "{v:?}");
    }

    #[test]
    fn j_at_b_zero() {
        let p = 128;
        let z = ComplexHP::new(Real::from_ratio(1, 2, p), Real::from_ratio(1, 5, p));
        let j = j_wrapped(Rational64::from_integer(0), 3, 2, &z, &t(p)).unwrap();
        let i = mordell_i(3, 2, &z, &t(p)).unwrap().value;
        assert!((&j - &(&z * &i)).abs().to_f64() < 1e-15);
    }

    #[test]
    fn tail_matches_subtraction() {
        let p = 160;
        let b = Rational64::new(5, 12);
        for (k, nu) in [(1, 1), (2, 1), (5, 2)] {
            for zf in [(1, 10), (1, 2), (1, 1)] {
                let z = Real::from_ratio(zf.0, zf.1, p);
                let tol = Real::pow2(-90, p);
                let zc = ComplexHP::from_real(z.clone());
                let direct = &j_wrapped(b, k, nu, &zc, &tol).unwrap() - &j_star(b, k, nu, &zc, &tol).unwrap().value;
                let tail = principal_gap(b, k, nu, &z, &tol).unwrap().value;
                assert!((&direct - &tail).abs().to_f64() < 1e-14, "k={k} nu={nu} z={zf:?}");
            }
        }
    }

    #[test]
    fn star_needs_positive_b() {
        let z = ComplexHP::from_real(Real::one(96));
        assert!(j_star(Rational64::new(-1, 12), 1, 1, &z, &t(96)).is_err());
    }

    #[test]
    fn bound_denominator_k1() {
        assert!((gap_denominator(1, 1) - std::f64::consts::PI / 3.0).abs() < 1e-15);
    }
}
