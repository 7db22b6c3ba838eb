//! The invariant suite behind `selftest`.

use num_bigint::BigInt;
use serde::Serialize;

use super::cache::CoeffCache;
use crate::error::Result;
use crate::hpnum::{ComplexHP, Real};
use crate::integrals::{l_closed, l_contour};
use crate::kloosterman::{modified_terms, rewritten_terms, CycloSum, KloostermanSpec};
use crate::modular::{branch_agreement, multiplier_identity_check, RootOfUnity};
use crate::qseries::{check_decomposition, check_ramanujan_relation, enumerate_p1bar, g1_series};
use crate::rademacher::{p1bar_exact_default, verify_partitions};
use crate::transform::{check_law, LawId};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(check: &str, passed: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome { check: check.to_string(), passed, detail: detail.into() }
}

fn guarded(check: &str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckOutcome {
    match f() {
        Ok((ok, d)) => outcome(check, ok, d),
        Err(e) => outcome(check, false, e.to_string()),
    }
}

fn family_specs(k: i64, n: i64, m: i64) -> Vec<KloostermanSpec> {
    let mut v = vec![KloostermanSpec::modified(1, k, None, n, m), KloostermanSpec::modified(3, k, None, n, m)];
    v.extend((1..=k).map(|nu| KloostermanSpec::modified(2, k, Some(nu), n, m)));
    v
}

fn single(r: RootOfUnity) -> CycloSum {
    let mut s = CycloSum::new();
    s.push(r);
    s
}

/// Runs every check; `cache` adds an audit of the coefficient cache.
pub fn run_selftest(cache: Option<&CoeffCache>) -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    let r = check_ramanujan_relation(200);
    out.push(outcome("ramanujan_relation", r.holds, format!("order 200, first failing {:?}", r.first_failing)));
    let r = check_decomposition(200);
    out.push(outcome("g1_decomposition", r.holds, format!("order 200, first failing {:?}", r.first_failing)));

    out.push(guarded("enumeration_oracle", || {
        let s = g1_series(20);
        for n in 0..=20 {
            if BigInt::from(enumerate_p1bar(n)?) != s.coeff(n) {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, "n <= 20".into()))
    }));

    let b = branch_agreement(61);
    out.push(outcome("omega_branches", b.disagreements.is_empty(), format!("{} pairs", b.checked)));

    out.push(guarded("multiplier_identity", || {
        let mut count = 0;
        for k in (2..=50).filter(|k| k % 4 == 2) {
            for h in (0..k).filter(|h| num_integer::Integer::gcd(h, &k) == 1) {
                count += 1;
                if !multiplier_identity_check(h, k)?.holds {
                    return Ok((false, format!("h = {h}, k = {k}")));
                }
            }
        }
        Ok((true, format!("{count} pairs")))
    }));

    out.push(guarded("kloosterman_sign_identity", || {
        for k in (2..=30).filter(|k| k % 4 == 2) {
            for n in 0..=5 {
                for m in 0..=5 {
                    let a = modified_terms(&KloostermanSpec::modified(1, k, None, n, m))?;
                    let b = modified_terms(&KloostermanSpec::modified(3, k, None, n, m))?;
                    if !a.exact_eq(&b.neg()) {
                        return Ok((false, format!("k = {k}, n = {n}, m = {m}")));
                    }
                }
            }
        }
        Ok((true, "k <= 30, n, m <= 5".into()))
    }));

    out.push(guarded("kloosterman_k2_values", || {
        for n in 0..=20 {
            let even = if n % 2 == 0 { RootOfUnity::one() } else { RootOfUnity::minus_one() };
            let at0 = modified_terms(&KloostermanSpec::modified(2, 2, Some(0), n, 0))?;
            let at1 = modified_terms(&KloostermanSpec::modified(2, 2, Some(1), n, 0))?;
            if !at0.exact_eq(&single(even)) || !at1.exact_eq(&single(even * RootOfUnity::minus_one())) {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, "n <= 20".into()))
    }));

    out.push(guarded("kloosterman_rewrites", || {
        for k in 1..=16 {
            for n in 0..=3 {
                for m in 0..=3 {
                    for s in family_specs(k, n, m) {
                        if !modified_terms(&s)?.exact_eq(&rewritten_terms(&s)?) {
                            return Ok((false, format!("{s:?}")));
                        }
                    }
                }
            }
        }
        Ok((true, "k <= 16, n, m <= 3".into()))
    }));

    out.push(guarded("residue_identity", || {
        let p = 96;
        let y = Real::from_ratio(5, 24, p);
        let c = l_contour(3, 4, &y, 8, &Real::pow2(-60, p))?;
        let want = l_closed(3, 4, &y)?;
        let rel = ((&c.value.re - &want).abs() / &want).to_f64();
        Ok((rel < 1e-10, format!("relative error {rel:.3e}")))
    }));

    out.push(guarded("transform_laws", || {
        let tol = Real::pow2(-36, 128);
        let z = ComplexHP::new(Real::from_ratio(4, 5, 128), Real::from_ratio(1, 5, 128));
        for (law, h, k) in [(LawId::PLaw, 1, 3), (LawId::XiGcd2, 1, 6), (LawId::FEven, 1, 2), (LawId::FOdd, 2, 3)] {
            let c = check_law(law, h, k, &z, &tol)?;
            if !c.passed {
                return Ok((false, format!("{law} at h = {h}, k = {k}")));
            }
        }
        Ok((true, "spot checks at z = 4/5 + i/5".into()))
    }));

    out.push(guarded("exact_formula_n4", || {
        let r = p1bar_exact_default(4, 15, 1e-12)?;
        Ok((r.rounded == BigInt::from(12), format!("value {}", r.value.to_fixed(6))))
    }));

    out.push(guarded("rademacher_partitions", || {
        let r = verify_partitions(1, 60)?;
        Ok((r.passed(), format!("n <= 60, max distance {:.3e}", r.max_dist)))
    }));

    if let Some(c) = cache {
        out.push(guarded("cache_audit", || {
            let a = c.audit(usize::MAX)?;
            Ok((a.passed(), format!("{} rows", a.sampled)))
        }));
    }
    out
}
