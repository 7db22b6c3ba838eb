//! Frozen reference values computed independently of this crate.

use num_rational::Rational64;

use circleforge::hpnum::{bessel_i1, quad_decay, ComplexHP, QuadOptions, Real};
use circleforge::integrals::{mordell_i, script_i};
use circleforge::qseries::{g1_series, mock_f, overpartition_series, partition_series, SeriesName};
use circleforge::transform::evaluate_at;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

#[test]
fn partition_generating_value() {
    let p = 128;
    let q = ComplexHP::from_real((-(Real::pi(p) * Real::from_i64(2, p))).exp());
    let v = evaluate_at(SeriesName::P, &q, &Real::pow2(-100, p)).unwrap();
    assert!(close(v.re.to_f64(), 1.001_874_437_014_624_04, 1e-16));
}

#[test]
fn gaussian_over_cosh() {
    // ∫ e^{-x²}/cosh x dx
    let p = 128;
    let f = |x: &Real| ComplexHP::from_real((-x.sqr()).exp() / x.cosh());
    let r = quad_decay(&f, &ComplexHP::one(p), &Real::one(p), &Real::pow2(-90, p), &QuadOptions::default()).unwrap();
    assert!(close(r.value.re.to_f64(), 1.479_061_171_449_575_89, 1e-16));
}

#[test]
fn mordell_at_k1() {
    // I_{1,1}(1) = ∫ e^{-3πx²}/cosh(5πi/6 - πx) dx, real by symmetry
    let p = 128;
    let r = mordell_i(1, 1, &ComplexHP::one(p), &Real::pow2(-90, p)).unwrap();
    assert!(r.value.im.abs().to_f64() < 1e-25);
    let direct = {
        let f = |x: &Real| {
            let pi = Real::pi(p);
            let d = ComplexHP::new(-(&pi * x), &pi * Real::from_ratio(5, 6, p));
            ComplexHP::from_real((-(&pi * Real::from_i64(3, p) * x.sqr())).exp()) / d.cosh()
        };
        quad_decay(&f, &ComplexHP::from_real(Real::pi(p) * Real::from_i64(3, p)), &Real::from_i64(4, p), &Real::pow2(-80, p), &QuadOptions::default())
            .unwrap()
    };
    assert!((&r.value - &direct.value).abs().to_f64() < 1e-22);
}

#[test]
fn bessel_i1_values() {
    let p = 128;
    let v = bessel_i1(&Real::one(p)).unwrap().to_f64();
    assert!(close(v, 0.565_159_103_992_485_0, 1e-16));
    let v = bessel_i1(&Real::from_i64(10, p)).unwrap().to_f64();
    assert!(close(v, 2_670.988_303_701_255, 1e-15));
}

#[test]
fn coefficient_tables() {
    let g1: Vec<String> = g1_series(12).coeffs().iter().map(|c| c.to_string()).collect();
    assert_eq!(g1, ["1", "2", "4", "6", "12", "18", "30", "44", "68", "98", "146", "204", "294"]);
    let p: Vec<String> = partition_series(10).coeffs().iter().map(|c| c.to_string()).collect();
    assert_eq!(p, ["1", "1", "2", "3", "5", "7", "11", "15", "22", "30", "42"]);
    let ob: Vec<String> = overpartition_series(8).coeffs().iter().map(|c| c.to_string()).collect();
    assert_eq!(ob, ["1", "2", "4", "8", "14", "24", "40", "64", "100"]);
    let f: Vec<String> = mock_f(10).coeffs().iter().map(|c| c.to_string()).collect();
    assert_eq!(f, ["1", "1", "-2", "3", "-3", "3", "-5", "7", "-6", "6", "-10"]);
    assert_eq!(partition_series(200).coeff(200).to_string(), "3972999029388");
}

#[test]
fn bessel_integral_pair_at_n4() {
    let p = 128;
    let tol = Real::pow2(-70, p);
    let b = Rational64::new(5, 12);
    let i1 = script_i(b, 2, 1, 4, &tol).unwrap().value.to_f64();
    let i2 = script_i(b, 2, 2, 4, &tol).unwrap().value.to_f64();
    let i0 = script_i(b, 2, 0, 4, &tol).unwrap().value.to_f64();
    assert!(i1 > 0.0 && i2 < 0.0);
    assert!((i0 + i2).abs() < 1e-15 * i2.abs());
}
