//! Complex numbers over [`Real`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::real::Real;

#[derive(Clone, PartialEq)]
pub struct ComplexHP {
    pub re: Real,
    pub im: Real,
}

impl ComplexHP {
    pub fn new(re: Real, im: Real) -> Self {
        ComplexHP { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.prec();
        ComplexHP { re, im: Real::zero(p) }
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_real(Real::zero(prec))
    }

    pub fn one(prec: usize) -> Self {
        Self::from_real(Real::one(prec))
    }

    pub fn i(prec: usize) -> Self {
        ComplexHP { re: Real::zero(prec), im: Real::one(prec) }
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    /// e^{iθ}.
    pub fn cis(theta: &Real) -> Self {
        ComplexHP { re: theta.cos(), im: theta.sin() }
    }

    /// e^{πi t} for an exact rational t = num/den.
    pub fn exp_pi_i(num: i64, den: i64, prec: usize) -> Self {
        let t = Real::pi(prec) * Real::from_i64(num, prec) / Real::from_i64(den, prec);
        Self::cis(&t)
    }

    pub fn conj(&self) -> Self {
        ComplexHP { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    pub fn scale(&self, s: &Real) -> Self {
        ComplexHP { re: &self.re * s, im: &self.im * s }
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        ComplexHP { re: &self.re / &d, im: -(&self.im / &d) }
    }

    pub fn exp(&self) -> Self {
        Self::cis(&self.im).scale(&self.re.exp())
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        ComplexHP { re: self.abs().ln(), im: self.arg() }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.im.is_zero() && !self.re.is_negative() {
            return Self::from_real(self.re.sqrt());
        }
        let r = self.abs();
        let half = Real::from_ratio(1, 2, p);
        let a = ((&r + &self.re) * &half).sqrt();
        let b = ((&r - &self.re) * &half).sqrt();
        let b = if self.im.is_negative() { -b } else { b };
        ComplexHP { re: a, im: b }
    }

    /// Principal power z^a for real a.
    pub fn powr(&self, a: &Real) -> Self {
        if self.re.is_zero() && self.im.is_zero() {
            return Self::zero(self.prec());
        }
        let l = self.ln();
        ComplexHP { re: &l.re * a, im: &l.im * a }.exp()
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec());
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn cosh(&self) -> Self {
        let e = self.exp();
        let ei = e.recip();
        let half = Real::from_ratio(1, 2, self.prec());
        (&e + &ei).scale(&half)
    }

    pub fn sinh(&self) -> Self {
        let e = self.exp();
        let ei = e.recip();
        let half = Real::from_ratio(1, 2, self.prec());
        (&e - &ei).scale(&half)
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        ComplexHP { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for ComplexHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for ComplexHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(20);
        write!(f, "{} + {}i", self.re.to_sci(d), self.im.to_sci(d))
    }
}

impl Add<&ComplexHP> for &ComplexHP {
    type Output = ComplexHP;
    fn add(self, o: &ComplexHP) -> ComplexHP {
        ComplexHP { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub<&ComplexHP> for &ComplexHP {
    type Output = ComplexHP;
    fn sub(self, o: &ComplexHP) -> ComplexHP {
        ComplexHP { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul<&ComplexHP> for &ComplexHP {
    type Output = ComplexHP;
    fn mul(self, o: &ComplexHP) -> ComplexHP {
        ComplexHP {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div<&ComplexHP> for &ComplexHP {
    type Output = ComplexHP;
    fn div(self, o: &ComplexHP) -> ComplexHP {
        let d = o.norm_sqr();
        ComplexHP {
            re: (&self.re * &o.re + &self.im * &o.im) / &d,
            im: (&self.im * &o.re - &self.re * &o.im) / &d,
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<ComplexHP> for ComplexHP {
            type Output = ComplexHP;
            fn $m(self, o: ComplexHP) -> ComplexHP {
                (&self).$m(&o)
            }
        }
        impl $tr<&ComplexHP> for ComplexHP {
            type Output = ComplexHP;
            fn $m(self, o: &ComplexHP) -> ComplexHP {
                (&self).$m(o)
            }
        }
        impl $tr<ComplexHP> for &ComplexHP {
            type Output = ComplexHP;
            fn $m(self, o: ComplexHP) -> ComplexHP {
                self.$m(&o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for ComplexHP {
    type Output = ComplexHP;
    fn neg(self) -> ComplexHP {
        ComplexHP { re: -self.re, im: -self.im }
    }
}

impl Neg for &ComplexHP {
    type Output = ComplexHP;
    fn neg(self) -> ComplexHP {
        ComplexHP { re: -&self.re, im: -&self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &ComplexHP, b: &ComplexHP, eps: f64) -> bool {
        (a - b).abs().to_f64() < eps
    }

    #[test]
    fn euler_identity() {
        let p = 128;
        let z = ComplexHP::new(Real::zero(p), Real::pi(p)).exp();
        assert!(close(&z, &-ComplexHP::one(p), 1e-35));
        let w = ComplexHP::exp_pi_i(1, 2, p);
        assert!(close(&w, &ComplexHP::i(p), 1e-35));
    }

    #[test]
    fn sqrt_and_powers() {
        let p = 128;
        let z = ComplexHP::new(Real::from_ratio(4, 5, p), Real::from_ratio(1, 5, p));
        let s = z.sqrt();
        assert!(close(&(&s * &s), &z, 1e-35));
        let h = Real::from_ratio(1, 2, p);
        assert!(close(&z.powr(&h), &s, 1e-35));
        let m = ComplexHP::from_real(-Real::one(p)).sqrt();
        assert!(close(&m, &ComplexHP::i(p), 1e-35));
        assert!(close(&z.powi(3), &(&(&z * &z) * &z), 1e-35));
    }

    #[test]
    fn cosh_identity() {
        let p = 128;
        let z = ComplexHP::new(Real::from_ratio(1, 3, p), Real::from_ratio(2, 7, p));
        let c = z.cosh();
        let s = z.sinh();
        assert!(close(&(&(&c * &c) - &(&s * &s)), &ComplexHP::one(p), 1e-35));
    }
}
