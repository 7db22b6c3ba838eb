//! Mordell integrals and the gap between the wrapped integral and its principal part.

use num_rational::Rational64;

use circleforge::hpnum::{ComplexHP, Real};
use circleforge::integrals::{gap_report, j_star, j_wrapped, mordell_i};

fn main() -> circleforge::Result<()> {
    let p = 128;
    let tol = Real::pow2(-80, p);
    let z = ComplexHP::new(Real::from_ratio(4, 5, p), Real::from_ratio(1, 5, p));
    for (k, nu) in [(1, 1), (2, 1), (3, 2), (5, 4)] {
        let r = mordell_i(k, nu, &z, &tol)?;
        println!("I_{{{k},{nu}}}(4/5+i/5) = {}", r.value);
    }
    let b = Rational64::new(5, 12);
    let zr = ComplexHP::from_real(Real::from_ratio(1, 10, p));
    println!("J = {}", j_wrapped(b, 2, 1, &zr, &tol)?);
    println!("J* = {}", j_star(b, 2, 1, &zr, &tol)?.value);
    let zs: Vec<Real> = (1..=4).map(|j| Real::from_f64(10f64.powi(-j), p)).collect();
    let g = gap_report(b, 2, 1, &zs, &Real::pow2(-60, p))?;
    println!("{}", serde_json::to_string_pretty(&g).unwrap());
    Ok(())
}
