//! Exact roots of unity e^{πit} with rational t normalised to [0, 2).

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::hpnum::{ComplexHP, Real};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    num: i64,
    den: i64,
}

impl RootOfUnity {
    /// e^{πi·num/den}.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_i128(num: i128, den: i128) -> Self {
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = num.gcd(&den).max(1);
        let (n, d) = (num / g, den / g);
        let n = n.rem_euclid(2 * d);
        RootOfUnity { num: n as i64, den: d as i64 }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { num: 1, den: 1 }
    }

    /// e^{2πi·num/den}.
    pub fn from_turns(num: i64, den: i64) -> Self {
        Self::from_i128(2 * num as i128, den as i128)
    }

    /// t as (numerator, denominator), 0 ≤ t < 2, reduced.
    pub fn exponent(&self) -> (i64, i64) {
        (self.num, self.den)
    }

    pub fn inv(&self) -> Self {
        Self::from_i128(-(self.num as i128), self.den as i128)
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::from_i128(self.num as i128 * e as i128, self.den as i128)
    }

    /// Multiplicative order.
    pub fn order(&self) -> i64 {
        // e^{πi n/d} has order 2d/gcd(n, 2d)
        let two_d = 2 * self.den;
        two_d / self.num.gcd(&two_d)
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn to_complex(&self, prec: usize) -> ComplexHP {
        let t = Real::pi(prec) * Real::from_i64(self.num, prec) / Real::from_i64(self.den, prec);
        ComplexHP::cis(&t)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let t = std::f64::consts::PI * self.num as f64 / self.den as f64;
        (t.cos(), t.sin())
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, o: RootOfUnity) -> RootOfUnity {
        let l = self.den.lcm(&o.den) as i128;
        let n = self.num as i128 * (l / self.den as i128) + o.num as i128 * (l / o.den as i128);
        RootOfUnity::from_i128(n, l)
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(πi·{}/{})", self.num, self.den)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
