//! Arbitrary-precision real scalar with an explicit binary precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

const RM: RoundingMode = RoundingMode::ToEven;

/// Smallest precision accepted anywhere in the crate.
pub const MIN_PREC: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// A real number at binary precision `prec`.
///
/// Binary operations run at the larger of the two operand precisions.
#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    prec: usize,
}

impl Real {
    fn wrap(v: BigFloat, prec: usize) -> Self {
        Real { v, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(x: i64, prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        Self::wrap(BigFloat::from_i64(x, prec), prec)
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        Self::wrap(BigFloat::from_f64(x, prec), prec)
    }

    pub fn from_ratio(num: i64, den: i64, prec: usize) -> Self {
        Self::from_i64(num, prec) / Self::from_i64(den, prec)
    }

    pub fn from_bigint(x: &BigInt, prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        let (sign, digits) = x.to_u64_digits();
        let base = Self::from_i64(2, prec).powi(64);
        let mut acc = Self::zero(prec);
        for d in digits.iter().rev() {
            acc = acc * &base + Self::wrap(BigFloat::from_u64(*d, prec), prec);
        }
        if sign == num_bigint::Sign::Minus {
            -acc
        } else {
            acc
        }
    }

    pub fn from_rational(x: &BigRational, prec: usize) -> Self {
        Self::from_bigint(x.numer(), prec) / Self::from_bigint(x.denom(), prec)
    }

    /// Parses a decimal literal such as `"0.8"` or `"-1.5e-3"`.
    pub fn parse(s: &str, prec: usize) -> Option<Self> {
        let prec = prec.max(MIN_PREC);
        let v = with_cc(|cc| BigFloat::parse(s.trim(), Radix::Dec, prec, RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(Self::wrap(v, prec))
        }
    }

    pub fn pi(prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        Self::wrap(with_cc(|cc| cc.pi(prec, RM)), prec)
    }

    /// 2^e as an exact power of two.
    pub fn pow2(e: i64, prec: usize) -> Self {
        let two = Self::from_i64(2, prec);
        if e >= 0 {
            two.powi(e as usize)
        } else {
            Self::one(prec) / two.powi((-e) as usize)
        }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn raw(&self) -> &BigFloat {
        &self.v
    }

    /// Re-rounds to a new precision. Lowering is explicit and never implicit.
    pub fn with_prec(&self, prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        let mut v = self.v.clone();
        let _ = v.set_precision(prec, RM);
        Self::wrap(v, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.prec)
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.prec, RM), self.prec)
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.v.reciprocal(self.prec, RM), self.prec)
    }

    pub fn powi(&self, n: usize) -> Self {
        Self::wrap(self.v.powi(n, self.prec, RM), self.prec)
    }

    pub fn exp(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.exp(self.prec, RM, cc)), self.prec)
    }

    pub fn ln(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.ln(self.prec, RM, cc)), self.prec)
    }

    pub fn sin(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.sin(self.prec, RM, cc)), self.prec)
    }

    pub fn cos(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.cos(self.prec, RM, cc)), self.prec)
    }

    pub fn sinh(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.sinh(self.prec, RM, cc)), self.prec)
    }

    pub fn cosh(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.cosh(self.prec, RM, cc)), self.prec)
    }

    pub fn atan(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.atan(self.prec, RM, cc)), self.prec)
    }

    /// Four-quadrant arctangent of `y/x`.
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let prec = y.prec.max(x.prec);
        if x.is_zero() {
            if y.is_zero() {
                return Real::zero(prec);
            }
            let half = Real::pi(prec) / Real::from_i64(2, prec);
            return if y.is_negative() { -half } else { half };
        }
        let base = (y / x).atan();
        if !x.is_negative() {
            base
        } else if y.is_negative() {
            base - Real::pi(prec)
        } else {
            base + Real::pi(prec)
        }
    }

    pub fn floor(&self) -> Self {
        Self::wrap(self.v.floor(), self.prec)
    }

    /// Nearest integer, ties away from zero.
    pub fn round(&self) -> Self {
        let half = Real::from_ratio(1, 2, self.prec);
        if self.is_negative() {
            -((-self) + half).floor()
        } else {
            (self + &half).floor()
        }
    }

    pub fn max(a: &Real, b: &Real) -> Real {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            self.v.exponent().map(|e| e as i64)
        }
    }

    /// Exact conversion of the integer part (truncated toward zero).
    pub fn to_bigint_trunc(&self) -> BigInt {
        let int = self.v.int();
        let Some((words, _n, sign, e, _)) = int.as_raw_parts() else {
            return BigInt::zero();
        };
        if int.is_zero() || e <= 0 {
            return BigInt::zero();
        }
        let mut mag = BigUint::zero();
        for w in words.iter().rev() {
            mag = (mag << 64u32) + BigUint::from(*w);
        }
        let total_bits = 64 * words.len() as i64;
        let shift = total_bits - e as i64;
        let mag = if shift >= 0 {
            mag >> (shift as u64)
        } else {
            mag << ((-shift) as u64)
        };
        let out = BigInt::from(mag);
        if sign == Sign::Neg {
            -out
        } else {
            out
        }
    }

    /// Nearest integer as an exact `BigInt`.
    pub fn to_bigint_round(&self) -> BigInt {
        self.round().to_bigint_trunc()
    }

    /// Nearest f64 (truncated mantissa; saturates to ±inf / 0 outside range).
    pub fn to_f64(&self) -> f64 {
        let l = self.log2_abs();
        if l == f64::NEG_INFINITY {
            return 0.0;
        }
        let Some((words, _, sign, e, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *words.last().unwrap_or(&0) as f64 / 18446744073709551616.0;
        let mag = top * 2f64.powi(e.clamp(-1100, 1100));
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// log2 |x| to f64 accuracy, `-inf` for zero. Cheap: reads the raw exponent.
    pub fn log2_abs(&self) -> f64 {
        if self.v.is_zero() {
            return f64::NEG_INFINITY;
        }
        match self.v.as_raw_parts() {
            Some((words, _, _, e, _)) => {
                let top = *words.last().unwrap_or(&0) as f64 / 18446744073709551616.0;
                e as f64 + top.log2()
            }
            None => f64::NAN,
        }
    }

    /// Scientific notation with `digits` significant decimal digits, e.g. `1.2340e3`.
    pub fn to_sci(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if !self.is_finite() {
            return "nan".to_string();
        }
        if self.is_zero() {
            return format!("0.{}e0", "0".repeat(digits - 1));
        }
        let prec = self.prec + 16;
        let x = self.with_prec(prec).abs();
        let log10 = Real::from_i64(10, prec).ln();
        let est = (x.ln() / &log10).floor().to_bigint_trunc().to_i64().unwrap_or(0);
        let mut e10 = est;
        let mut mant;
        loop {
            let shift = digits as i64 - 1 - e10;
            let scale = pow10(shift, prec);
            mant = (&x * &scale).round().to_bigint_trunc();
            let len = mant.to_string().len() as i64;
            if len > digits as i64 {
                e10 += 1;
            } else if len < digits as i64 {
                e10 -= 1;
            } else {
                break;
            }
        }
        let s = mant.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if self.is_negative() { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }

    /// Fixed-point notation with exactly `decimals` digits after the point.
    pub fn to_fixed(&self, decimals: usize) -> String {
        if !self.is_finite() {
            return "nan".to_string();
        }
        let prec = self.prec + 16;
        let scaled = (self.with_prec(prec) * pow10(decimals as i64, prec)).round();
        let mut int = scaled.to_bigint_trunc();
        let neg = int.is_negative();
        if neg {
            int = -int;
        }
        let mut s = int.to_string();
        if s.len() <= decimals {
            s = format!("{}{}", "0".repeat(decimals + 1 - s.len()), s);
        }
        let (a, b) = s.split_at(s.len() - decimals);
        let sign = if neg { "-" } else { "" };
        if decimals == 0 {
            format!("{sign}{a}")
        } else {
            format!("{sign}{a}.{b}")
        }
    }
}

fn pow10(e: i64, prec: usize) -> Real {
    let ten = Real::from_i64(10, prec);
    if e >= 0 {
        ten.powi(e as usize)
    } else {
        Real::one(prec) / ten.powi((-e) as usize)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(24))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(20);
        write!(f, "{}", self.to_sci(d))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.prec.max(rhs.prec);
                Real::wrap(self.v.$inner(&rhs.v, p, RM), p)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

bin_op!(Add, add, add);
bin_op!(Sub, sub, sub);
bin_op!(Mul, mul, mul);
bin_op!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.neg(), self.prec)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.clone().neg(), self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_roundtrip() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let r = Real::from_bigint(&big, 192);
        assert_eq!(r.to_bigint_trunc(), big);
        assert_eq!(Real::from_i64(-17, 64).to_bigint_trunc(), BigInt::from(-17));
        assert_eq!(Real::from_ratio(7, 2, 64).to_bigint_round(), BigInt::from(4));
        assert_eq!(Real::from_ratio(-7, 2, 64).to_bigint_round(), BigInt::from(-4));
    }

    #[test]
    fn decimal_rendering() {
        let pi = Real::pi(128);
        assert_eq!(pi.to_sci(10), "3.141592654e0");
        assert_eq!(pi.to_fixed(5), "3.14159");
        assert_eq!(Real::from_ratio(-1, 8, 64).to_fixed(2), "-0.13");
        assert_eq!(Real::from_ratio(1, 1000, 64).to_sci(3), "1.00e-3");
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn atan2_quadrants() {
        let p = 96;
        let one = Real::one(p);
        let m1 = -Real::one(p);
        let q = Real::atan2(&one, &m1).to_f64();
        assert!((q - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        let q = Real::atan2(&m1, &m1).to_f64();
        assert!((q + 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn parse_literals() {
        let x = Real::parse("0.8", 128).unwrap();
        let y = Real::from_ratio(4, 5, 128);
        assert!((x - y).abs() < Real::pow2(-120, 128));
        assert!(Real::parse("abc", 64).is_none());
    }
}
