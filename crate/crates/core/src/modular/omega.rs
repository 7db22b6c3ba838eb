//! The eta multiplier ω_{h,k} and the multiplier identity for gcd(4,k) = 2.

use num_integer::Integer;
use serde::Serialize;

use super::arith::{kronecker, strengthened_inverse};
use super::root_of_unity::RootOfUnity;
use crate::error::{Error, Result};

/// Which of the two closed forms to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OmegaBranch {
    /// Requires h odd: (−k/h) e^{−πi(¼(2−hk−h) + (1/12)(k−1/k)(2h−h′+h²h′))}.
    HOdd,
    /// Requires k odd: (−h/k) e^{−πi(¼(k−1) + (1/12)(k−1/k)(2h−h′+h²h′))}.
    KOdd,
}

/// ω_{h,k} on an explicit branch.
pub fn omega_branch(h: i64, k: i64, hprime: i64, branch: OmegaBranch) -> Result<RootOfUnity> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
    }
    if h.gcd(&k) != 1 {
        return Err(Error::NotCoprime { h, k });
    }
    let (h_, k_, hp) = (h as i128, k as i128, hprime as i128);
    // (k − 1/k)(2h − h′ + h²h′)/12 = (k²−1)(2h − h′ + h²h′)/(12k)
    let common = (k_ * k_ - 1) * (2 * h_ - hp + h_ * h_ % (24 * k_) * hp);
    let (first, symbol) = match branch {
        OmegaBranch::HOdd => {
            if h % 2 == 0 {
                return Err(Error::InvalidArgument("h-odd branch needs odd h".into()));
            }
            (3 * k_ * (2 - h_ * k_ - h_), kronecker(-k, h))
        }
        OmegaBranch::KOdd => {
            if k % 2 == 0 {
                return Err(Error::InvalidArgument("k-odd branch needs odd k".into()));
            }
            (3 * k_ * (k_ - 1), kronecker(-h, k))
        }
    };
    let den = 12 * k_;
    let mut num = -(first + common) % (2 * den);
    if symbol == -1 {
        num += den;
    }
    Ok(RootOfUnity::from_i128(num, den))
}

/// ω_{h,k} with the branch fixed by parity: the k-odd form whenever k is odd.
pub fn omega(h: i64, k: i64, hprime: i64) -> Result<RootOfUnity> {
    if h.gcd(&k) != 1 {
        return Err(Error::NotCoprime { h, k });
    }
    if k % 2 == 1 {
        omega_branch(h, k, hprime, OmegaBranch::KOdd)
    } else {
        omega_branch(h, k, hprime, OmegaBranch::HOdd)
    }
}

/// ω_{h,k} using the least strengthened inverse of this very (h, k).
pub fn omega_canonical(h: i64, k: i64) -> Result<RootOfUnity> {
    let s = strengthened_inverse(h, k)?;
    omega(h, k, s.hprime)
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplierIdentity {
    pub h: i64,
    pub k: i64,
    pub holds: bool,
    pub lhs: RootOfUnity,
    pub rhs: RootOfUnity,
}

/// (−1)^{k/2} e^{πih′(1 − 3k/2)/2} = ω²_{h,k/2} / ω⁴_{h,k} for gcd(4,k) = 2.
pub fn multiplier_identity_check(h: i64, k: i64) -> Result<MultiplierIdentity> {
    if k.gcd(&4) != 2 {
        return Err(Error::GcdClass { expected: 2, k });
    }
    let s = strengthened_inverse(h, k)?;
    let hp = s.hprime;
    // exponent of the left side in units of π: k/2 + h′(2 − 3k)/4
    let lhs = RootOfUnity::new(k / 2, 1) * RootOfUnity::new(hp * (2 - 3 * k), 4);
    let rhs = omega_canonical(h, k / 2)?.pow(2) * omega_canonical(h, k)?.pow(-4);
    Ok(MultiplierIdentity { h, k, holds: lhs == rhs, lhs, rhs })
}

/// Outcome of comparing the two branches where both apply (h, k odd).
#[derive(Clone, Debug, Serialize)]
pub struct BranchAgreement {
    pub checked: usize,
    pub disagreements: Vec<(i64, i64)>,
}

/// Scans all coprime (h, k), both odd, with k ≤ kmax and 0 < h < 2k.
pub fn branch_agreement(kmax: i64) -> BranchAgreement {
    let mut checked = 0;
    let mut disagreements = Vec::new();
    for k in (1..=kmax).step_by(2) {
        for h in (1..2 * k).step_by(2) {
            if h.gcd(&k) != 1 {
                continue;
            }
            let hp = strengthened_inverse(h, k).expect("coprime").hprime;
            let a = omega_branch(h, k, hp, OmegaBranch::HOdd).expect("odd h");
            let b = omega_branch(h, k, hp, OmegaBranch::KOdd).expect("odd k");
            checked += 1;
            if a != b {
                disagreements.push((h, k));
            }
        }
    }
    BranchAgreement { checked, disagreements }
}

/// Dedekind sum s(h,k) as an exact rational (num, den); used only as an independent oracle.
pub fn dedekind_sum(h: i64, k: i64) -> (i64, i64) {
    // s(h,k) = Σ_{r=1}^{k−1} (r/k)((hr/k)) with ((x)) the sawtooth
    let mut num: i128 = 0;
    let den: i128 = 2 * (k as i128) * (k as i128);
    for r in 1..k {
        let hr = (h as i128 * r as i128).rem_euclid(k as i128);
        if hr == 0 {
            continue;
        }
        // (r/k)·(hr/k − 1/2) = r(2hr − k)/(2k²)
        num += r as i128 * (2 * hr - k as i128);
    }
    let g = num.gcd(&den).max(1);
    ((num / g) as i64, (den / g) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert!(omega(0, 1, 0).unwrap().is_one());
        let w = omega_canonical(1, 2).unwrap();
        assert_eq!(24 % w.exponent().1, 0);
        assert!(omega(2, 4, 1).is_err());
    }

    #[test]
    fn matches_dedekind_sum() {
        for k in 1..40i64 {
            for h in 0..3 * k {
                if h.gcd(&k) != 1 {
                    continue;
                }
                let (n, d) = dedekind_sum(h, k);
                assert_eq!(omega_canonical(h, k).unwrap(), RootOfUnity::new(n, d), "h={h} k={k}");
            }
        }
    }

    #[test]
    fn order_divides_24k() {
        for k in 1..30i64 {
            for h in 0..k {
                if h.gcd(&k) == 1 {
                    let w = omega_canonical(h, k).unwrap();
                    assert!(w.pow(24 * k).is_one());
                    assert_eq!((12 * k) % w.exponent().1, 0);
                }
            }
        }
    }

    #[test]
    fn both_branches_agree() {
        let r = branch_agreement(25);
        assert!(r.checked > 100);
        assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
    }

    #[test]
    fn identity_nine_small() {
        for (h, k) in [(1, 2), (1, 6), (5, 6)] {
            assert!(multiplier_identity_check(h, k).unwrap().holds);
        }
        assert!(multiplier_identity_check(1, 4).is_err());
    }
}
