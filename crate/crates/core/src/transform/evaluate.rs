//! Numerical evaluation of the named q-series at a complex nome, with tail doubling.

use crate::error::{Error, Result};
use crate::hpnum::{ComplexHP, Real};
use crate::qseries::SeriesName;

/// Initial truncation order and the number of doublings allowed.
pub const INITIAL_ORDER: usize = 64;
pub const MAX_DOUBLINGS: usize = 8;

/// (x; x)_M = Π_{n=1}^{M} (1 − xⁿ).
fn euler(x: &ComplexHP, m: usize) -> ComplexHP {
    let p = x.prec();
    let one = ComplexHP::one(p);
    let mut acc = one.clone();
    let mut xn = one.clone();
    for _ in 0..m {
        xn = &xn * x;
        acc = &acc * &(&one - &xn);
    }
    acc
}

fn partial(name: SeriesName, q: &ComplexHP, m: usize) -> ComplexHP {
    let p = q.prec();
    let one = ComplexHP::one(p);
    let q2 = q * q;
    let q4 = &q2 * &q2;
    match name {
        SeriesName::P => euler(q, m).recip(),
        SeriesName::Pbar => &euler(&q2, m) / &euler(q, m).powi(2),
        SeriesName::F => {
            // Σ q^{n²}/(−q;q)_n²
            let mut s = ComplexHP::zero(p);
            let mut den = one.clone();
            let mut qn = one.clone();
            let mut qsq = one.clone();
            for n in 0..m {
                if n > 0 {
                    // q^{n²} = q^{(n−1)²} · q^{n−1} · qⁿ
                    let prev = qn.clone();
                    qn = &qn * q;
                    let t = &one + &qn;
                    den = &den * &(&t * &t);
                    qsq = &(&qsq * &prev) * &qn;
                }
                s = &s + &(&qsq / &den);
            }
            s
        }
        SeriesName::Phi => {
            // Σ q^{n²}/(−q²;q²)_n
            let mut s = ComplexHP::zero(p);
            let mut den = one.clone();
            let mut q2n = one.clone();
            let mut qsq = one.clone();
            let mut qodd = q.clone();
            for n in 0..m {
                if n > 0 {
                    q2n = &q2n * &q2;
                    den = &den * &(&one + &q2n);
                    if n > 1 {
                        qodd = &qodd * &q2;
                    }
                    qsq = &qsq * &qodd;
                }
                s = &s + &(&qsq / &den);
            }
            s
        }
        SeriesName::OmegaMock => {
            // Σ q^{2n(n+1)}/(q;q²)²_{n+1}
            let mut s = ComplexHP::zero(p);
            let t = &one - q;
            let mut den = &t * &t;
            let mut lead = one.clone();
            let mut step = q4.clone();
            let mut qodd = q.clone();
            for n in 0..m {
                if n > 0 {
                    // 2n(n+1) − 2(n−1)n = 4n
                    lead = &lead * &step;
                    step = &step * &q4;
                    qodd = &qodd * &q2;
                    let u = &one - &qodd;
                    den = &den * &(&u * &u);
                }
                s = &s + &(&lead / &den);
            }
            s
        }
        SeriesName::Xi => &(&euler(&q4, m).powi(2) * &euler(q, m)) / &euler(&q2, m).powi(4),
        SeriesName::G1 => &(&euler(&q4, m) / &(&euler(q, m) * &euler(&q2, m))) * &partial(SeriesName::Phi, q, m),
        SeriesName::G1bar => partial(SeriesName::G1, &-q, m),
        SeriesName::Gone => (&partial(SeriesName::Xi, q, m) * &partial(SeriesName::F, q, m)).scale(&Real::from_ratio(1, 2, p)),
        SeriesName::Gtwo => (&(&euler(&q4, m).powi(2) * &euler(q, m).powi(4)) / &euler(&q2, m).powi(6))
            .scale(&Real::from_ratio(1, 2, p)),
    }
}

/// Value of a named series at `nome`, doubling the truncation order from 64 until two
/// successive values agree to relative tolerance `tol`.
pub fn evaluate_at(name: SeriesName, nome: &ComplexHP, tol: &Real) -> Result<ComplexHP> {
    let p = nome.prec().max(tol.prec());
    let q = nome.with_prec(p);
    if q.abs() >= Real::one(p) {
        return Err(Error::InvalidArgument("nome must satisfy |q| < 1".into()));
    }
    let mut m = INITIAL_ORDER;
    let mut prev = partial(name, &q, m);
    for _ in 0..MAX_DOUBLINGS {
        m *= 2;
        let next = partial(name, &q, m);
        let scale = Real::max(&Real::one(p), &next.abs());
        if (&next - &prev).abs() < tol * &scale {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergent(format!("{name} did not settle within order {m}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::named_series;

    fn tol() -> Real {
        Real::pow2(-100, 128)
    }

    #[test]
    fn constant_term_at_zero() {
        let z = ComplexHP::zero(128);
        assert!((evaluate_at(SeriesName::P, &z, &tol()).unwrap().re.to_f64() - 1.0).abs() < 1e-30);
        assert!(evaluate_at(SeriesName::P, &ComplexHP::one(128), &tol()).is_err());
    }

    #[test]
    fn partition_value_at_e_minus_2pi() {
        let q = ComplexHP::from_real((-(Real::pi(128) * Real::from_i64(2, 128))).exp());
        let v = evaluate_at(SeriesName::P, &q, &tol()).unwrap();
        assert!((v.re.to_f64() - 1.001_874_437_014_624).abs() < 1e-15);
    }

    #[test]
    fn matches_exact_coefficients() {
        // a small real nome where 60 exact coefficients already give 1e-25
        let p = 128;
        let x = Real::from_ratio(1, 3, p);
        let q = ComplexHP::new(x.clone(), Real::from_ratio(1, 5, p));
        for name in SeriesName::ALL {
            let s = named_series(name, 120);
            let mut acc = ComplexHP::zero(p);
            let mut qn = ComplexHP::one(p);
            for c in s.coeffs() {
                acc = &acc + &qn.scale(&Real::from_rational(c, p));
                qn = &qn * &q;
            }
            let v = evaluate_at(name, &q, &tol()).unwrap();
            assert!((&v - &acc).abs().to_f64() < 1e-25, "{name}");
        }
    }

    #[test]
    fn mock_functions_converge_at_e_minus_half() {
        let r = Real::from_ratio(-1, 2, 128).exp();
        for name in [SeriesName::F, SeriesName::Phi, SeriesName::OmegaMock] {
            let q = ComplexHP::new(Real::zero(128), r.clone());
            assert!(evaluate_at(name, &q, &tol()).unwrap().abs().is_finite());
        }
    }
}
