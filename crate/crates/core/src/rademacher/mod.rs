//! Exact formulas: Rademacher's series for p(n) and the Bessel-integral series for p̄₁(n).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hpnum::{bessel_i32, default_precision, ComplexHP, Real};
use crate::integrals::script_i;
use crate::kloosterman::{a_terms, modified_terms, KloostermanSpec};
use crate::qseries::{g1_series, partition_series, DEFAULT_CEILING};

/// Rounding distance above which a result is flagged.
pub const FLAG_DISTANCE: f64 = 0.25;

/// K(n) = ⌈√n⌉ + 10.
pub fn default_kmax(n: u64) -> i64 {
    (n as f64).sqrt().ceil() as i64 + 10
}

/// A truncated exact-formula evaluation.
#[derive(Clone, Debug)]
pub struct FormulaResult {
    pub n: u64,
    pub kmax: i64,
    pub value: Real,
    pub rounded: BigInt,
    pub distance_to_integer: Real,
    /// Magnitude of the last non-empty band of terms.
    pub tail_estimate: Real,
    pub per_k_terms: Vec<(i64, Real)>,
    pub imag_residue: Real,
    pub flagged: bool,
}

impl FormulaResult {
    fn assemble(n: u64, kmax: i64, per_k: Vec<(i64, ComplexHP)>, prec: usize) -> FormulaResult {
        let mut total = ComplexHP::zero(prec);
        for (_, t) in &per_k {
            total = &total + t;
        }
        let value = total.re.clone();
        let rounded_r = value.round();
        let rounded = rounded_r.to_bigint_round();
        let distance_to_integer = (&value - &rounded_r).abs();
        let tail_estimate =
            per_k.iter().rev().map(|(_, t)| t.abs()).find(|a| !a.is_zero()).unwrap_or_else(|| Real::zero(prec));
        let flagged = distance_to_integer.to_f64() >= FLAG_DISTANCE;
        FormulaResult {
            n,
            kmax,
            value,
            rounded,
            distance_to_integer,
            tail_estimate,
            per_k_terms: per_k.into_iter().map(|(k, t)| (k, t.re)).collect(),
            imag_residue: total.im,
            flagged,
        }
    }
}

/// p(n) = (2π/(24n−1)^{3/4}) Σ_{k≤K} (A_k(n)/k) I_{3/2}(π√(24n−1)/(6k)).
pub fn p_rademacher(n: u64, kmax: i64, prec: usize) -> Result<FormulaResult> {
    if n < 1 || kmax < 1 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and K >= 1, got n={n} K={kmax}")));
    }
    let p = prec.max(crate::hpnum::MIN_PREC);
    let pi = Real::pi(p);
    let m = Real::from_i64(24 * n as i64 - 1, p);
    let root = m.sqrt();
    let pref = &(&pi * Real::from_i64(2, p)) / &(&root * &root.sqrt());
    let per_k: Vec<(i64, ComplexHP)> = (1..=kmax)
        .into_par_iter()
        .map(|k| {
            let a = a_terms(k, n as i64)?.to_complex(p);
            let kk = Real::from_i64(k, p);
            let x = &(&pi * &root) / &(&kk * Real::from_i64(6, p));
            let s = &pref * &(bessel_i32(&x)? / &kk);
            Ok((k, a.scale(&s)))
        })
        .collect::<Result<_>>()?;
    Ok(FormulaResult::assemble(n, kmax, per_k, p))
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// (1/k²) Σ_{ν=1}^{k} (−1)^{n+ν} K_k(ν, n) 𝓘_{b,k,ν}(n), with K^{[12]}, b = 1/24 when k is odd
/// and K^{[22]}, b = 5/12 when k ≡ 2 (mod 4).
pub fn p1bar_term(d: i64, k: i64, n: u64, tol: f64, prec: usize) -> Result<ComplexHP> {
    check_tol(tol)?;
    if k.gcd(&4) != d || d == 4 {
        return Err(Error::GcdClass { expected: d, k });
    }
    let p = prec.max(crate::hpnum::MIN_PREC);
    let b = if d == 1 { Rational64::new(1, 24) } else { Rational64::new(5, 12) };
    let t = Real::from_f64(tol, p);
    let mut acc = ComplexHP::zero(p);
    for nu in 1..=k {
        let ks = modified_terms(&KloostermanSpec::modified(2, k, Some(nu), n as i64, 0))?.to_complex(p);
        let i = script_i(b, k, nu, n, &t)?;
        let mut term = ks.scale(&i.value);
        if (n as i64 + nu) % 2 != 0 {
            term = -term;
        }
        acc = &acc + &term;
    }
    Ok(acc.scale(&Real::from_ratio(1, k * k, p)))
}

/// π/(12√(6n)) for odd k, 5π/(12√(6n)) for k ≡ 2 (mod 4).
fn band_prefactor(d: i64, n: u64, p: usize) -> Real {
    let c = if d == 1 { 1 } else { 5 };
    Real::pi(p) * Real::from_i64(c, p) / (Real::from_i64(12, p) * Real::from_i64(6 * n as i64, p).sqrt())
}

/// The exact formula for p̄₁(n) truncated at k ≤ K; k divisible by 4 contributes nothing.
pub fn p1bar_exact(n: u64, kmax: i64, tol: f64, prec: usize) -> Result<FormulaResult> {
    check_tol(tol)?;
    if n < 1 || kmax < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and K >= 2, got n={n} K={kmax}")));
    }
    let p = prec.max(crate::hpnum::MIN_PREC);
    let per_k: Vec<(i64, ComplexHP)> = (1..=kmax)
        .into_par_iter()
        .map(|k| {
            let d = k.gcd(&4);
            if d == 4 {
                return Ok((k, ComplexHP::zero(p)));
            }
            // each k band gets tol/(4Kk) for its k inner integrals
            let t = tol / (4.0 * kmax as f64 * k as f64);
            let term = p1bar_term(d, k, n, t, p)?;
            Ok((k, term.scale(&band_prefactor(d, n, p))))
        })
        .collect::<Result<_>>()?;
    let r = FormulaResult::assemble(n, kmax, per_k, p);
    let scale = Real::max(&Real::one(p), &r.value.abs());
    if r.imag_residue.abs() >= &Real::from_f64(tol, p) * &scale {
        return Err(Error::SymmetryViolation(format!("imaginary residue {}", r.imag_residue.to_sci(6))));
    }
    Ok(r)
}

/// p1bar_exact at the default precision P(n).
pub fn p1bar_exact_default(n: u64, kmax: i64, tol: f64) -> Result<FormulaResult> {
    p1bar_exact(n, kmax, tol, default_precision(n))
}

/// √5/(4√6·n) · e^{π√(5n/6)}.
pub fn p1bar_asymptotic(n: u64, prec: usize) -> Result<Real> {
    if n < 1 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let p = prec.max(crate::hpnum::MIN_PREC);
    let nn = Real::from_i64(n as i64, p);
    let e = (Real::pi(p) * (&(&nn * Real::from_i64(5, p)) / Real::from_i64(6, p)).sqrt()).exp();
    Ok(Real::from_i64(5, p).sqrt() / (Real::from_i64(4, p) * Real::from_i64(6, p).sqrt() * nn) * e)
}

/// 5π/(48√(6n)) · (𝓘_{5/12,2,0}(n) + 𝓘_{5/12,2,1}(n)), the k = 2 band on its own.
pub fn p1bar_dominant(n: u64, tol: f64, prec: usize) -> Result<Real> {
    check_tol(tol)?;
    if n < 1 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let p = prec.max(crate::hpnum::MIN_PREC);
    let b = Rational64::new(5, 12);
    let t = Real::from_f64(tol, p);
    let s = script_i(b, 2, 0, n, &t)?.value + script_i(b, 2, 1, n, &t)?.value;
    Ok(band_prefactor(2, n, p) / Real::from_i64(4, p) * s)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyRow {
    pub n: u64,
    pub value: String,
    pub rounded: String,
    pub oracle: String,
    #[serde(rename = "match")]
    pub matches: bool,
    pub dist: String,
    pub kmax: i64,
    pub tail: String,
}

impl VerifyRow {
    pub fn new(r: &FormulaResult, oracle: &BigInt) -> VerifyRow {
        VerifyRow {
            n: r.n,
            value: r.value.to_fixed(6),
            rounded: r.rounded.to_string(),
            oracle: oracle.to_string(),
            matches: &r.rounded == oracle,
            dist: r.distance_to_integer.to_sci(6),
            kmax: r.kmax,
            tail: r.tail_estimate.to_sci(6),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub max_dist: f64,
    pub mismatches: Vec<u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the exact formula with the G₁ coefficients for n in [lo, hi].
///
/// `kmax = None` uses K(n) per n.
pub fn verify_range(lo: u64, hi: u64, kmax: Option<i64>, tol: f64) -> Result<VerifyReport> {
    let mut rows = Vec::new();
    let mut max_dist: f64 = 0.0;
    let mut mismatches = Vec::new();
    if lo <= hi {
        let oracle = g1_series(hi as usize);
        for n in lo.max(1)..=hi {
            let r = p1bar_exact_default(n, kmax.unwrap_or_else(|| default_kmax(n)), tol)?;
            let row = VerifyRow::new(&r, &oracle.coeff(n as usize));
            max_dist = max_dist.max(r.distance_to_integer.to_f64());
            if !row.matches {
                mismatches.push(n);
            }
            rows.push(row);
        }
    }
    Ok(VerifyReport { rows, max_dist, mismatches })
}

/// Compares Rademacher's series with the partition coefficients for n in [lo, hi].
pub fn verify_partitions(lo: u64, hi: u64) -> Result<VerifyReport> {
    let mut rows = Vec::new();
    let mut max_dist: f64 = 0.0;
    let mut mismatches = Vec::new();
    if lo <= hi {
        let oracle = partition_series(hi as usize);
        for n in lo.max(1)..=hi {
            let r = p_rademacher(n, default_kmax(n), default_precision(n))?;
            let row = VerifyRow::new(&r, &oracle.coeff(n as usize));
            max_dist = max_dist.max(r.distance_to_integer.to_f64());
            if !row.matches {
                mismatches.push(n);
            }
            rows.push(row);
        }
    }
    Ok(VerifyReport { rows, max_dist, mismatches })
}

/// Ratio p̄₁(n)/asymptotic from exact coefficients.
pub fn asymptotic_ratio(coeff: &BigInt, n: u64) -> Result<f64> {
    let p = 128;
    let a = p1bar_asymptotic(n, p)?;
    let c = Real::from_bigint(&coeff.abs(), p);
    Ok((c / a).to_f64())
}

/// Upper end of the enumeration oracle.
pub const ENUMERATION_CEILING: usize = DEFAULT_CEILING;
