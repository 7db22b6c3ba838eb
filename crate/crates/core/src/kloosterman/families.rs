//! Direct evaluation of the classical, incomplete, A_k and modified sums.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::cyclo::CycloSum;
use crate::error::{Error, Result};
use crate::hpnum::{ComplexHP, Real};
use crate::modular::{farey_neighbors, inverse_mod, omega_canonical, strengthened_inverse, totient, RootOfUnity};

/// Beyond this modulus sums are evaluated in floating mode only.
pub const EXACT_LIMIT: i64 = 64;

/// Working precision of `SumValue::value`.
pub const SUM_PREC: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Classical,
    Incomplete,
    A,
    Modified,
    ModifiedIncomplete,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "classical" => Family::Classical,
            "incomplete" => Family::Incomplete,
            "A" | "a" => Family::A,
            "modified" => Family::Modified,
            "modified_incomplete" => Family::ModifiedIncomplete,
            _ => return Err(Error::UnknownTag(s.to_string())),
        })
    }
}

/// One Kloosterman-type sum with all of its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KloostermanSpec {
    pub family: Family,
    pub d: Option<i64>,
    pub j: Option<i64>,
    pub k: i64,
    /// Any integer; the summands depend on the representative, and the exact formula uses 1..=k.
    pub nu: Option<i64>,
    pub n: i64,
    pub m: i64,
    pub ell: Option<i64>,
    #[serde(rename = "N")]
    pub big_n: Option<i64>,
}

impl KloostermanSpec {
    pub fn classical(k: i64, n: i64, m: i64) -> Self {
        KloostermanSpec { family: Family::Classical, d: None, j: None, k, nu: None, n, m, ell: None, big_n: None }
    }

    pub fn incomplete(k: i64, ell: i64, big_n: i64, n: i64, m: i64) -> Self {
        KloostermanSpec { family: Family::Incomplete, ell: Some(ell), big_n: Some(big_n), ..Self::classical(k, n, m) }
    }

    pub fn a(k: i64, n: i64) -> Self {
        KloostermanSpec { family: Family::A, ..Self::classical(k, n, 0) }
    }

    /// The gcd class d is inferred from k.
    pub fn modified(j: i64, k: i64, nu: Option<i64>, n: i64, m: i64) -> Self {
        KloostermanSpec {
            family: Family::Modified,
            d: Some(k.gcd(&4)),
            j: Some(j),
            nu,
            ..Self::classical(k, n, m)
        }
    }

    pub fn modified_incomplete(j: i64, k: i64, nu: Option<i64>, ell: i64, big_n: i64, n: i64, m: i64) -> Self {
        KloostermanSpec {
            family: Family::ModifiedIncomplete,
            ell: Some(ell),
            big_n: Some(big_n),
            ..Self::modified(j, k, nu, n, m)
        }
    }

    /// Two-digit family label such as "41" or "12"; `None` for unmodified sums.
    pub fn label(&self) -> Option<String> {
        match (self.d, self.j) {
            (Some(d), Some(j)) => Some(format!("{d}{j}")),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k;
        if k < 1 {
            return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
        }
        let incomplete = matches!(self.family, Family::Incomplete | Family::ModifiedIncomplete);
        if incomplete {
            let (ell, big_n) = match (self.ell, self.big_n) {
                (Some(l), Some(b)) => (l, b),
                _ => return Err(Error::InvalidArgument("incomplete sums need ell and N".into())),
            };
            if big_n < k {
                return Err(Error::InvalidArgument(format!("need N >= k, got N={big_n} k={k}")));
            }
            if !(big_n < ell && ell <= big_n + k + 1) {
                return Err(Error::InvalidArgument(format!("need N+1 <= ell <= N+k+1, got ell={ell} N={big_n}")));
            }
        }
        if matches!(self.family, Family::Modified | Family::ModifiedIncomplete) {
            let d = self.d.ok_or_else(|| Error::InvalidArgument("modified sums need d".into()))?;
            let j = self.j.ok_or_else(|| Error::InvalidArgument("modified sums need j".into()))?;
            if ![1, 2, 4].contains(&d) {
                return Err(Error::InvalidArgument(format!("d must be 1, 2 or 4, got {d}")));
            }
            if k.gcd(&4) != d {
                return Err(Error::GcdClass { expected: d, k });
            }
            if !(1..=3).contains(&j) {
                return Err(Error::InvalidArgument(format!("j must be 1, 2 or 3, got {j}")));
            }
            match (j, self.nu) {
                (2, Some(_)) => {}
                (2, None) => return Err(Error::InvalidArgument("j = 2 needs nu".into())),
                (_, Some(_)) => return Err(Error::InvalidArgument("nu is only used with j = 2".into())),
                _ => {}
            }
        }
        Ok(())
    }
}

/// A sum value together with its exact form when available.
#[derive(Clone, Debug)]
pub struct SumValue {
    pub value: ComplexHP,
    pub term_count: usize,
    pub exact: Option<CycloSum>,
}

impl SumValue {
    fn from_terms(terms: CycloSum, k: i64) -> SumValue {
        let term_count = terms.term_count();
        if k <= EXACT_LIMIT {
            SumValue { value: terms.to_complex(SUM_PREC), term_count, exact: Some(terms) }
        } else {
            let mut acc = ComplexHP::zero(SUM_PREC);
            for t in terms.terms() {
                acc = &acc + &t.to_complex(SUM_PREC);
            }
            SumValue { value: acc, term_count, exact: None }
        }
    }

    pub fn abs(&self) -> Real {
        self.value.abs()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        self.value.to_f64_pair()
    }
}

/// h with 0 ≤ h < k and gcd(h, k) = 1, admitted by the Farey condition N < k + k₁ ≤ ℓ when given.
fn admitted(k: i64, window: Option<(i64, i64)>) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for h in 0..k {
        if h.gcd(&k) != 1 {
            continue;
        }
        if let Some((ell, big_n)) = window {
            let k1 = farey_neighbors(h, k, big_n)?.k1;
            if !(big_n < k + k1 && k + k1 <= ell) {
                continue;
            }
        }
        out.push(h);
    }
    Ok(out)
}

/// e^{−2πi(nh − mh′)/k} with hh′ ≡ −1 (mod k).
fn classical_term(h: i64, k: i64, n: i64, m: i64) -> RootOfUnity {
    let hp = (-inverse_mod(h, k).expect("coprime")).rem_euclid(k);
    let e = (n as i128 * h as i128 - m as i128 * hp as i128).rem_euclid(k as i128);
    RootOfUnity::from_i128(-2 * e, k as i128)
}

pub fn classical_terms(k: i64, n: i64, m: i64, window: Option<(i64, i64)>) -> Result<CycloSum> {
    let mut s = CycloSum::new();
    for h in admitted(k, window)? {
        s.push(classical_term(h, k, n, m));
    }
    Ok(s)
}

/// K_k(n, m).
pub fn classical_k(k: i64, n: i64, m: i64) -> Result<SumValue> {
    let spec = KloostermanSpec::classical(k, n, m);
    spec.validate()?;
    Ok(SumValue::from_terms(classical_terms(k, n, m, None)?, k))
}

/// 𝕂_{k,ℓ}(n, m), restricted by the left Farey neighbour of h/k in order N.
pub fn incomplete_k(k: i64, ell: i64, big_n: i64, n: i64, m: i64) -> Result<SumValue> {
    let spec = KloostermanSpec::incomplete(k, ell, big_n, n, m);
    spec.validate()?;
    Ok(SumValue::from_terms(classical_terms(k, n, m, Some((ell, big_n)))?, k))
}

pub fn a_terms(k: i64, n: i64) -> Result<CycloSum> {
    let mut s = CycloSum::new();
    for h in admitted(k, None)? {
        let e = (n as i128 * h as i128).rem_euclid(k as i128);
        s.push(omega_canonical(h, k)? * RootOfUnity::from_i128(-2 * e, k as i128));
    }
    Ok(s)
}

/// A_k(n) = Σ ω_{h,k} e^{−2πinh/k}.
pub fn a_k(k: i64, n: i64) -> Result<SumValue> {
    KloostermanSpec::a(k, n).validate()?;
    Ok(SumValue::from_terms(a_terms(k, n)?, k))
}

fn w(h: i64, k: i64) -> Result<RootOfUnity> {
    omega_canonical(h.rem_euclid(k), k)
}

/// The multiplier of one summand of a modified sum, including the (n, m) exponential.
///
/// `shift` replaces h′ by h′ + shift·L(k) in every explicit h′ occurrence.
pub fn modified_summand(spec: &KloostermanSpec, h: i64, shift: i64) -> Result<RootOfUnity> {
    let (d, j, k) = (spec.d.unwrap_or(0), spec.j.unwrap_or(0), spec.k);
    let s = strengthened_inverse(h, k)?;
    let hp = s.hprime as i128 + shift as i128 * s.modulus as i128;
    let (n, m, h_, k_) = (spec.n as i128, spec.m as i128, h as i128, k as i128);
    let nu = spec.nu.unwrap_or(0) as i128;
    let r = |a: i128, b: i128| RootOfUnity::from_i128(a.rem_euclid(2 * b), b);
    Ok(match d {
        4 | 2 => {
            let half = w(h, k / 2)?;
            let low = if d == 4 { w(h, k / 4)? } else { w(2 * h, k / 2)? };
            let tail = r(2 * (-n * h_ + m * hp), k_);
            match j {
                1 => half.pow(4) * low.pow(-2) * r(hp * (2 - 3 * k_), 4) * tail,
                2 => half.pow(4) * low.pow(-2) * r(hp * (-3 * nu * nu + nu), k_) * tail,
                _ => half.pow(6) * w(h, k)?.pow(-4) * low.pow(-2) * tail,
            }
        }
        _ => {
            // 1/4 ≡ 2[8]_k (mod k) for odd k
            let i8 = inverse_mod(8, k).expect("odd k") as i128;
            let two = w(2 * h, k)?;
            let four = w(4 * h, k)?;
            let tail = r(2 * (-n * h_ + 2 * i8 * m * hp), k_);
            match j {
                1 => two.pow(4) * four.pow(-2) * r(6 * i8 * hp, k_) * tail,
                2 => two.pow(4) * four.pow(-2) * r(hp * (-3 * nu * nu - nu), k_) * tail,
                _ => two.pow(6) * w(h, k)?.pow(-4) * four.pow(-2) * tail,
            }
        }
    })
}

pub fn modified_terms_shifted(spec: &KloostermanSpec, shift: i64) -> Result<CycloSum> {
    spec.validate()?;
    if !matches!(spec.family, Family::Modified | Family::ModifiedIncomplete) {
        return Err(Error::InvalidArgument("not a modified family".into()));
    }
    let window = spec.ell.zip(spec.big_n);
    let mut s = CycloSum::new();
    for h in admitted(spec.k, window)? {
        s.push(modified_summand(spec, h, shift)?);
    }
    Ok(s)
}

pub fn modified_terms(spec: &KloostermanSpec) -> Result<CycloSum> {
    modified_terms_shifted(spec, 0)
}

/// Direct evaluation of any modified family, complete or incomplete.
pub fn modified_k(spec: &KloostermanSpec) -> Result<SumValue> {
    Ok(SumValue::from_terms(modified_terms(spec)?, spec.k))
}

/// Terms of any family.
pub fn sum_terms(spec: &KloostermanSpec) -> Result<CycloSum> {
    spec.validate()?;
    let window = spec.ell.zip(spec.big_n);
    match spec.family {
        Family::Classical | Family::Incomplete => classical_terms(spec.k, spec.n, spec.m, window),
        Family::A => a_terms(spec.k, spec.n),
        Family::Modified | Family::ModifiedIncomplete => modified_terms(spec),
    }
}

pub fn evaluate(spec: &KloostermanSpec) -> Result<SumValue> {
    Ok(SumValue::from_terms(sum_terms(spec)?, spec.k))
}

/// |value| / (max(|n|,1)^{1/3} k^{2/3}).
pub fn bound_ratio(spec: &KloostermanSpec) -> Result<f64> {
    let v = evaluate(spec)?;
    let (re, im) = v.to_f64_pair();
    let n = spec.n.unsigned_abs().max(1) as f64;
    Ok(re.hypot(im) / (n.cbrt() * (spec.k as f64).powf(2.0 / 3.0)))
}

/// One row of the JSON report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub family: Family,
    pub d: Option<i64>,
    pub j: Option<i64>,
    pub k: i64,
    pub nu: Option<i64>,
    pub n: i64,
    pub m: i64,
    pub re: f64,
    pub im: f64,
    pub bound_ratio: f64,
}

pub fn report_row(spec: &KloostermanSpec) -> Result<ReportRow> {
    let v = evaluate(spec)?;
    let (re, im) = v.to_f64_pair();
    let n = spec.n.unsigned_abs().max(1) as f64;
    Ok(ReportRow {
        family: spec.family,
        d: spec.d,
        j: spec.j,
        k: spec.k,
        nu: spec.nu,
        n: spec.n,
        m: spec.m,
        re,
        im,
        bound_ratio: re.hypot(im) / (n.cbrt() * (spec.k as f64).powf(2.0 / 3.0)),
    })
}

/// φ(k), the number of terms in a complete sum.
pub fn complete_term_count(k: i64) -> usize {
    totient(k) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(v: &SumValue, re: f64, im: f64) -> bool {
        let (a, b) = v.to_f64_pair();
        (a - re).abs() < 1e-12 && (b - im).abs() < 1e-12
    }

    #[test]
    fn trivial_values() {
        assert!(close(&classical_k(1, 5, 3).unwrap(), 1.0, 0.0));
        assert!(close(&classical_k(2, 0, 0).unwrap(), 1.0, 0.0));
        for n in 0..6 {
            assert!(close(&a_k(1, n).unwrap(), 1.0, 0.0));
        }
    }

    #[test]
    fn classical_brute_force() {
        // h h' ≡ −1 (mod 5): (1,4), (2,2), (3,3), (4,1)
        let mut re = 0.0;
        let mut im = 0.0;
        for (h, hp) in [(1.0, 4.0), (2.0, 2.0), (3.0, 3.0), (4.0, 1.0)] {
            let t = -2.0 * std::f64::consts::PI * (h - hp) / 5.0;
            re += f64::cos(t);
            im += f64::sin(t);
        }
        let v = classical_k(5, 1, 1).unwrap();
        assert!(close(&v, re, im));
        assert!(im.abs() < 1e-12);
    }

    #[test]
    fn a2_values() {
        // A_2(n) = ω_{1,2} e^{−πin}
        let w = omega_canonical(1, 2).unwrap().to_f64_pair();
        assert!(close(&a_k(2, 0).unwrap(), w.0, w.1));
        assert!(close(&a_k(2, 1).unwrap(), -w.0, -w.1));
        for k in 1..30 {
            for n in 0..5 {
                let v = a_k(k, n).unwrap();
                assert!(v.abs().to_f64() <= totient(k) as f64 + 1e-12);
            }
        }
    }

    #[test]
    fn incomplete_restriction() {
        for (k, n, m) in [(3, 1, 2), (5, 2, 0), (7, 1, 1)] {
            for big_n in k..k + 4 {
                let full = incomplete_k(k, big_n + k + 1, big_n, n, m).unwrap();
                let c = classical_k(k, n, m).unwrap();
                assert!(full.exact.unwrap().exact_eq(&c.exact.unwrap()));
            }
        }
        // ℓ = N+1 leaves only h with k₁ = N + 1 − k
        let v = incomplete_k(5, 8, 6, 1, 0).unwrap();
        let mut want = CycloSum::new();
        for h in 1..5 {
            let k1 = farey_neighbors(h, 5, 6).unwrap().k1;
            if 6 < 5 + k1 && 5 + k1 <= 8 {
                want.push(classical_term(h, 5, 1, 0));
            }
        }
        assert!(v.exact.unwrap().exact_eq(&want));
        assert!(incomplete_k(5, 6, 6, 1, 0).is_err());
        assert!(incomplete_k(5, 9, 4, 1, 0).is_err());
    }

    #[test]
    fn gcd_class_is_enforced() {
        let mut s = KloostermanSpec::modified(1, 6, None, 1, 0);
        s.d = Some(4);
        assert!(modified_k(&s).is_err());
        assert!(modified_k(&KloostermanSpec::modified(2, 6, None, 1, 0)).is_err());
        assert!(modified_k(&KloostermanSpec::modified(1, 6, Some(1), 1, 0)).is_err());
    }

    #[test]
    fn k2_family22() {
        for n in 0..=20 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!(close(&modified_k(&KloostermanSpec::modified(2, 2, Some(0), n, 0)).unwrap(), sign, 0.0));
            assert!(close(&modified_k(&KloostermanSpec::modified(2, 2, Some(1), n, 0)).unwrap(), -sign, 0.0));
            // ν ↦ ν + k flips the sign when k ≡ 2 (mod 4)
            assert!(close(&modified_k(&KloostermanSpec::modified(2, 2, Some(2), n, 0)).unwrap(), -sign, 0.0));
        }
    }

    #[test]
    fn sign_identity_21_23() {
        for k in (2..=50).filter(|k| k % 4 == 2) {
            for n in 0..=10 {
                for m in 0..=10 {
                    let a = modified_terms(&KloostermanSpec::modified(1, k, None, n, m)).unwrap();
                    let b = modified_terms(&KloostermanSpec::modified(3, k, None, n, m)).unwrap();
                    assert!(a.exact_eq(&b.neg()), "k={k} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn representative_independence() {
        for k in 1..25 {
            for j in 1..=3 {
                let nus: Vec<Option<i64>> = if j == 2 { (1..=k).map(Some).collect() } else { vec![None] };
                for nu in nus {
                    let s = KloostermanSpec::modified(j, k, nu, 3, 2);
                    let a = modified_terms(&s).unwrap();
                    for shift in [1, 5] {
                        assert_eq!(a, modified_terms_shifted(&s, shift).unwrap(), "k={k} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn periodicity_and_conjugation() {
        for k in 1..20 {
            for (n, m) in [(0, 0), (2, 3), (-1, 4)] {
                let a = classical_terms(k, n, m, None).unwrap();
                let b = classical_terms(k, -n, -m, None).unwrap();
                assert!(a.exact_eq(&b.conj()));
                for j in [1, 3] {
                    let base = modified_terms(&KloostermanSpec::modified(j, k, None, n, m)).unwrap();
                    let pn = modified_terms(&KloostermanSpec::modified(j, k, None, n + k, m)).unwrap();
                    let pm = modified_terms(&KloostermanSpec::modified(j, k, None, n, m + k)).unwrap();
                    assert!(base.exact_eq(&pn) && base.exact_eq(&pm), "k={k} j={j}");
                }
            }
        }
    }

    #[test]
    fn bound_ratio_trivial() {
        assert!((bound_ratio(&KloostermanSpec::classical(1, 1, 0)).unwrap() - 1.0).abs() < 1e-12);
        let row = report_row(&KloostermanSpec::modified(2, 6, Some(3), 1, 0)).unwrap();
        let s = serde_json::to_string(&row).unwrap();
        assert!(s.contains("\"family\":\"modified\"") && s.contains("\"nu\":3"));
    }

    #[test]
    fn floating_mode_matches_exact_sum() {
        let v = classical_k(67, 3, 5).unwrap();
        assert!(v.exact.is_none());
        let (re, im) = classical_terms(67, 3, 5, None).unwrap().to_f64_pair();
        assert!(close(&v, re, im));
    }
}
