//! Truncated power series with exact coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact coefficient ring of a [`TruncatedSeries`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_i64(v: i64) -> Self;
    /// Exact decimal rendering; non-terminating rationals fall back to `p/q`.
    fn to_decimal(&self) -> String;
    fn is_unit(&self) -> bool {
        *self == Self::one() || *self == -Self::one()
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_decimal(&self) -> String {
        self.to_string()
    }
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_decimal(&self) -> String {
        rational_to_decimal(self)
    }
}

/// Exact decimal string for a rational whose denominator has only the prime factors 2 and 5.
pub fn rational_to_decimal(x: &BigRational) -> String {
    if x.is_integer() {
        return x.numer().to_string();
    }
    let mut d = x.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut e2, mut e5) = (0usize, 0usize);
    while d.is_even() {
        d /= &two;
        e2 += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        e5 += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", x.numer(), x.denom());
    }
    let places = e2.max(e5);
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = (x * BigRational::from_integer(scale)).to_integer();
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (a, b) = digits.split_at(digits.len() - places);
    format!("{}{}.{}", if neg { "-" } else { "" }, a, b)
}

/// Coefficients of q^0..q^M, exact.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    /// Builds a series of order `order`, padding with zeros or dropping terms above `order`.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_i64s(c: &[i64], order: usize) -> Self {
        Self::new(c.iter().map(|&v| C::from_i64(v)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one()], order)
    }

    /// The monomial c·q^e (zero if e exceeds the order).
    pub fn monomial(c: C, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    fn aligned(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.aligned(other);
        Self::new((0..=m).map(|i| self.coeffs[i].clone() + &other.coeffs[i]).collect(), m)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.aligned(other);
        Self::new((0..=m).map(|i| self.coeffs[i].clone() - &other.coeffs[i]).collect(), m)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.aligned(other);
        let mut out = vec![C::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(m + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(m + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + &(a.clone() * b);
                }
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse; the constant term must be ±1.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if !c0.is_unit() {
            return Err(Error::NotInvertible);
        }
        let m = self.order();
        let mut out = vec![C::zero(); m + 1];
        out[0] = c0.clone();
        for n in 1..=m {
            let mut s = C::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    s = s + &(self.coeffs[j].clone() * &out[n - j]);
                }
            }
            // c0 is ±1 so division is multiplication by c0
            out[n] = -(s * &c0);
        }
        Ok(Self { coeffs: out })
    }

    /// Substitutes q → q^r.
    pub fn compose_power(&self, r: usize) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidArgument("compose_power requires r >= 1".into()));
        }
        let m = self.order();
        let mut out = vec![C::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i * r > m {
                break;
            }
            out[i * r] = a.clone();
        }
        Ok(Self { coeffs: out })
    }

    /// Substitutes q → −q.
    pub fn negate_variable(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a.clone() } else { a.clone() })
                .collect(),
        }
    }

    /// Multiplies by q^s.
    pub fn shift(&self, s: usize) -> Self {
        let m = self.order();
        let mut out = vec![C::zero(); m + 1];
        for i in 0..=m {
            if i + s > m {
                break;
            }
            out[i + s] = self.coeffs[i].clone();
        }
        Self { coeffs: out }
    }

    /// In-place multiplication by (1 − sign·q^a), O(M).
    pub fn mul_binomial(&mut self, sign: i64, a: usize) {
        if a == 0 {
            let c = C::one() - &C::from_i64(sign);
            for x in self.coeffs.iter_mut() {
                *x = x.clone() * &c;
            }
            return;
        }
        let m = self.order();
        let s = C::from_i64(sign);
        for i in (a..=m).rev() {
            let t = self.coeffs[i - a].clone() * &s;
            self.coeffs[i] = self.coeffs[i].clone() - &t;
        }
    }

    /// In-place division by (1 − sign·q^a) for a ≥ 1, O(M).
    pub fn div_binomial(&mut self, sign: i64, a: usize) {
        assert!(a >= 1, "div_binomial needs a >= 1");
        let m = self.order();
        let s = C::from_i64(sign);
        for i in a..=m {
            let t = self.coeffs[i - a].clone() * &s;
            self.coeffs[i] = self.coeffs[i].clone() + &t;
        }
    }
}

impl<C: Coeff> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c.to_decimal())?,
                1 => write!(f, "{}·q", c.to_decimal())?,
                _ => write!(f, "{}·q^{}", c.to_decimal(), i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl TruncatedSeries<BigInt> {
    pub fn to_rational(&self) -> TruncatedSeries<BigRational> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        }
    }
}

impl TruncatedSeries<BigRational> {
    /// Integer coefficients, if every coefficient is integral.
    pub fn to_integer(&self) -> Option<TruncatedSeries<BigInt>> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c.to_integer()).collect() })
        } else {
            None
        }
    }
}

/// Arithmetic selector matching the command-line names.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Invert,
    ComposePower(usize),
}

/// Dispatches one arithmetic operation (the second operand is ignored for unary ops).
pub fn series_arith<C: Coeff>(a: &TruncatedSeries<C>, b: &TruncatedSeries<C>, op: SeriesOp) -> Result<TruncatedSeries<C>> {
    match op {
        SeriesOp::Add => Ok(a.add(b)),
        SeriesOp::Sub => Ok(a.sub(b)),
        SeriesOp::Mul => Ok(a.mul(b)),
        SeriesOp::Invert => a.invert(),
        SeriesOp::ComposePower(r) => a.compose_power(r),
    }
}

/// (sign·q^a; q^b)_∞ truncated at order M.
pub fn pochhammer_inf(sign: i64, a: usize, b: usize, order: usize) -> Result<TruncatedSeries<BigInt>> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidArgument("pochhammer_inf requires a, b >= 1".into()));
    }
    check_sign(sign)?;
    let mut s = TruncatedSeries::one(order);
    let mut e = a;
    while e <= order {
        s.mul_binomial(sign, e);
        e += b;
    }
    Ok(s)
}

/// (sign·q^a; q^b)_n truncated at order M.
pub fn pochhammer_fin(sign: i64, a: usize, b: usize, n: usize, order: usize) -> Result<TruncatedSeries<BigInt>> {
    check_sign(sign)?;
    let mut s = TruncatedSeries::one(order);
    for j in 0..n {
        let e = a + j * b;
        if e > order && e > 0 {
            break;
        }
        s.mul_binomial(sign, e);
    }
    Ok(s)
}

fn check_sign(sign: i64) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("sign must be ±1, got {sign}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = TruncatedSeries<BigInt>;

    #[test]
    fn geometric_inverse() {
        let s = S::from_i64s(&[1, -1], 3);
        assert_eq!(s.invert().unwrap(), S::from_i64s(&[1, 1, 1, 1], 3));
        let bad = S::from_i64s(&[2, 1], 3);
        assert!(matches!(bad.invert(), Err(Error::NotInvertible)));
    }

    #[test]
    fn small_products() {
        let a = S::from_i64s(&[1, 1], 2);
        let b = S::from_i64s(&[1, -1], 2);
        assert_eq!(a.mul(&b), S::from_i64s(&[1, 0, -1], 2));
        let c = S::from_i64s(&[1, 1], 4).compose_power(2).unwrap();
        assert_eq!(c, S::from_i64s(&[1, 0, 1], 4));
        assert!(a.compose_power(0).is_err());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer_inf(1, 1, 1, 5).unwrap(), S::from_i64s(&[1, -1, -1, 0, 0, 1], 5));
        assert_eq!(pochhammer_inf(-1, 1, 1, 2).unwrap(), S::from_i64s(&[1, 1, 1], 2));
        assert_eq!(pochhammer_inf(1, 1, 1, 0).unwrap(), S::one(0));
        assert_eq!(pochhammer_fin(1, 1, 1, 0, 4).unwrap(), S::one(4));
        assert_eq!(pochhammer_fin(-1, 1, 1, 2, 3).unwrap(), S::from_i64s(&[1, 1, 1, 1], 3));
        assert_eq!(pochhammer_fin(1, 1, 2, 1, 2).unwrap(), S::from_i64s(&[1, -1], 2));
    }

    #[test]
    fn binomial_division_matches_inverse() {
        let mut s = S::from_i64s(&[1, 3, -2, 5, 7, 0, 1], 6);
        let orig = s.clone();
        s.div_binomial(-1, 2);
        let mut back = s.clone();
        back.mul_binomial(-1, 2);
        assert_eq!(back, orig);
        let d = S::from_i64s(&[1, 0, 1], 6).invert().unwrap();
        assert_eq!(s, orig.mul(&d));
    }

    #[test]
    fn decimal_strings() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_to_decimal(&half), "0.5");
        let x = BigRational::new(BigInt::from(-7), BigInt::from(4));
        assert_eq!(rational_to_decimal(&x), "-1.75");
        let t = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(rational_to_decimal(&t), "1/3");
    }
}
