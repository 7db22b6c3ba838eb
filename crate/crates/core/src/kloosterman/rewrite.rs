//! Classical forms of the modified sums: each equals c·K_k(n′, m′) for an explicit root c.

use serde::Serialize;

use super::cyclo::CycloSum;
use super::families::{classical_terms, Family, KloostermanSpec, SumValue};
use crate::error::{Error, Result};
use crate::modular::{inverse_mod, RootOfUnity};

/// c·K_k(n′, m′) (or the incomplete analogue) equivalent to a modified sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalForm {
    pub c: RootOfUnity,
    pub n: i64,
    pub m: i64,
}

fn inv(a: i64, k: i64) -> i128 {
    inverse_mod(a, k).expect("invertible") as i128
}

fn exact_div(a: i128, b: i128, what: &str) -> Result<i128> {
    if a % b != 0 {
        return Err(Error::Integrality(format!("{what}: {a} is not divisible by {b}")));
    }
    Ok(a / b)
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::InvalidArgument(format!("shifted argument {x} out of range")))
}

pub fn classical_form(spec: &KloostermanSpec) -> Result<ClassicalForm> {
    spec.validate()?;
    if !matches!(spec.family, Family::Modified | Family::ModifiedIncomplete) {
        return Err(Error::InvalidArgument("only modified families have a classical rewrite".into()));
    }
    let k = spec.k as i128;
    let (n, m) = (spec.n as i128, spec.m as i128);
    let nu = spec.nu.unwrap_or(0) as i128;
    // ν(1−3ν)/2 is an integer for every ν
    let nu_shift = nu * (1 - 3 * nu) / 2;
    let (c, n2, m2) = match (spec.d.unwrap(), spec.j.unwrap()) {
        (4, j) if j < 3 => {
            let n2 = n - exact_div(2 * k * k + 4 * k, 16, "n shift")?;
            let m2 = if j == 1 {
                m - exact_div(5 * k * k - 4 * k, 16, "m shift")?
            } else {
                m + exact_div(k * k, 16, "m shift")? + nu_shift
            };
            (RootOfUnity::minus_one(), n2, m2)
        }
        (4, _) => (RootOfUnity::one(), n + exact_div(k * k, 8, "n shift")?, m - exact_div(k * k, 16, "m shift")?),
        (2, j) => {
            let t2 = inv(2, spec.k / 2);
            let (a, b) = if spec.k % 3 == 0 {
                (16 * t2 - 8 + 12 * k + 8 * k * k - 4 * t2 * k * k, 4 * t2 - 8 - t2 * k * k + 2 * k * k)
            } else {
                let t3 = inv(3, spec.k);
                (
                    48 * t2 * t3 - 24 * t3 + 12 * k + 6 * k * k + 6 * t3 * k * k - 12 * t2 * t3 * k * k,
                    3 * t3 * (4 * t2 - 8 - t2 * k * k + 2 * k * k),
                )
            };
            let n2 = n - exact_div(a, 24, "n shift")?;
            let m2 = match j {
                2 => m + exact_div(b, 24, "m shift")? + nu_shift,
                _ => m + exact_div(b, 24, "m shift")? - exact_div(3 * k * k - 2 * k, 8, "m shift")?,
            };
            // e^{2πi(3k² − 30k)/(24k)}, negated for the third family
            let mut c = RootOfUnity::from_i128(2 * (3 * k * k - 30 * k), 24 * k);
            if j == 3 {
                c = c * RootOfUnity::minus_one();
            }
            (c, n2, m2)
        }
        (_, j) => {
            let (t2, t4, t8) = (inv(2, spec.k), inv(4, spec.k), inv(8, spec.k));
            let e = 1 - k * k;
            if j < 3 {
                let (a, b) = if spec.k % 3 == 0 {
                    (e * (-8 * t2 + 16 * t4), e * (t4 - 2 * t2))
                } else {
                    let t12 = 12 * inv(12, spec.k);
                    (e * t12 * (-8 * t2 + 16 * t4), e * t12 * (t4 - 2 * t2))
                };
                let n2 = n - exact_div(a, 12, "n shift")?;
                let extra = if j == 1 { 3 * t8 } else { -nu * (3 * nu + 1) / 2 };
                let m2 = 2 * t8 * m + extra + exact_div(b, 12, "m shift")?;
                (RootOfUnity::from_i128(2 * (1 - k), 4), n2, m2)
            } else {
                let (a, b, dv) = if spec.k % 3 == 0 {
                    (
                        e * (16 * t8 - 96 * t2 * t8 + 128 * t4 * t8),
                        e * (16 * t8 - 24 * t2 * t8 + 8 * t4 * t8),
                        12,
                    )
                } else {
                    let t24 = 2 * inv(24, spec.k);
                    (e * t24 * (2 - 12 * t2 + 16 * t4), e * t24 * (2 - 3 * t2 + t4), 1)
                };
                (RootOfUnity::one(), n - exact_div(a, dv, "n shift")?, 2 * t8 * m + exact_div(b, dv, "m shift")?)
            }
        }
    };
    // the classical sum only sees n′, m′ modulo k
    Ok(ClassicalForm { c, n: narrow(n2.rem_euclid(k))?, m: narrow(m2.rem_euclid(k))? })
}

pub fn rewritten_terms(spec: &KloostermanSpec) -> Result<CycloSum> {
    let f = classical_form(spec)?;
    let window = spec.ell.zip(spec.big_n);
    Ok(classical_terms(spec.k, f.n, f.m, window)?.scale(f.c))
}

/// The classical-form evaluation of a modified sum; the second path for dual verification.
pub fn rewritten_classical_form(spec: &KloostermanSpec) -> Result<SumValue> {
    let terms = rewritten_terms(spec)?;
    let term_count = terms.term_count();
    Ok(SumValue { value: terms.to_complex(super::families::SUM_PREC), term_count, exact: Some(terms) })
}

#[cfg(test)]
mod tests {
    use super::super::families::modified_terms;
    use super::*;

    fn specs(k: i64, n: i64, m: i64) -> Vec<KloostermanSpec> {
        let mut v = vec![KloostermanSpec::modified(1, k, None, n, m), KloostermanSpec::modified(3, k, None, n, m)];
        for nu in 1..=k {
            v.push(KloostermanSpec::modified(2, k, Some(nu), n, m));
        }
        v
    }

    #[test]
    fn k4_example() {
        let f = classical_form(&KloostermanSpec::modified(1, 4, None, 1, 0)).unwrap();
        assert_eq!(f.c, RootOfUnity::minus_one());
        assert_eq!((f.n, f.m), ((-2i64).rem_euclid(4), (-4i64).rem_euclid(4)));
    }

    #[test]
    fn dual_path_small() {
        for k in 1..=16 {
            for n in 0..4 {
                for m in 0..4 {
                    for s in specs(k, n, m) {
                        let a = modified_terms(&s).unwrap();
                        let b = rewritten_terms(&s).unwrap();
                        assert!(a.exact_eq(&b), "{s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn dual_path_incomplete() {
        for k in [3, 4, 5, 6, 8, 10] {
            for big_n in [k, k + 2] {
                for ell in big_n + 1..=big_n + k + 1 {
                    for j in [1, 3] {
                        let s = KloostermanSpec::modified_incomplete(j, k, None, ell, big_n, 2, 1);
                        assert!(modified_terms(&s).unwrap().exact_eq(&rewritten_terms(&s).unwrap()), "{s:?}");
                    }
                }
            }
        }
    }
}
