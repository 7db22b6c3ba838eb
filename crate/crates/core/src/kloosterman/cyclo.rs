//! Exact sums of roots of unity, compared in ℤ[ζ_M] after reduction modulo Φ_M.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;

use crate::hpnum::{ComplexHP, Real};
use crate::modular::RootOfUnity;

/// A formal sum Σ e^{πi t_j}; each term has modulus one.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CycloSum {
    terms: Vec<RootOfUnity>,
}

impl CycloSum {
    pub fn new() -> Self {
        CycloSum { terms: Vec::new() }
    }

    pub fn push(&mut self, r: RootOfUnity) {
        self.terms.push(r);
    }

    pub fn terms(&self) -> &[RootOfUnity] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, r: RootOfUnity) -> Self {
        CycloSum { terms: self.terms.iter().map(|t| *t * r).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(RootOfUnity::minus_one())
    }

    pub fn conj(&self) -> Self {
        CycloSum { terms: self.terms.iter().map(|t| t.inv()).collect() }
    }

    fn histogram(&self) -> BTreeMap<RootOfUnity, i64> {
        let mut h = BTreeMap::new();
        for t in &self.terms {
            *h.entry(*t).or_insert(0) += 1;
        }
        h
    }

    /// Numerical value at `prec` bits; each distinct root is evaluated once.
    pub fn to_complex(&self, prec: usize) -> ComplexHP {
        let mut acc = ComplexHP::zero(prec);
        for (r, c) in self.histogram() {
            acc = &acc + &r.to_complex(prec).scale(&Real::from_i64(c, prec));
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (r, c) in self.histogram() {
            let (a, b) = r.to_f64_pair();
            re += a * c as f64;
            im += b * c as f64;
        }
        (re, im)
    }

    /// Exact equality of the two algebraic numbers.
    pub fn exact_eq(&self, other: &CycloSum) -> bool {
        if self.histogram() == other.histogram() {
            return true;
        }
        let mut d = 1i64;
        for t in self.terms.iter().chain(other.terms.iter()) {
            d = d.lcm(&t.exponent().1);
        }
        // e^{πi a/d} = ζ_{2d}^a
        let m = 2 * d;
        let mut c = vec![0i64; m as usize];
        for t in &self.terms {
            let (a, b) = t.exponent();
            c[(a * (d / b)) as usize] += 1;
        }
        for t in &other.terms {
            let (a, b) = t.exponent();
            c[(a * (d / b)) as usize] -= 1;
        }
        is_zero_mod_cyclotomic(&c, m)
    }

    /// Exact test for the value zero.
    pub fn is_exact_zero(&self) -> bool {
        self.exact_eq(&CycloSum::new())
    }
}

thread_local! {
    static PHI: RefCell<HashMap<i64, Vec<i64>>> = RefCell::new(HashMap::new());
}

fn mobius(n: i64) -> i64 {
    let mut n = n;
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

/// Coefficients of Φ_n, constant term first.
pub fn cyclotomic_poly(n: i64) -> Vec<i64> {
    if let Some(p) = PHI.with(|t| t.borrow().get(&n).cloned()) {
        return p;
    }
    let divisors: Vec<i64> = (1..=n).filter(|d| n % d == 0).collect();
    let deg = crate::modular::totient(n) as usize;
    // Φ_n = Π_{d|n} (x^d − 1)^{μ(n/d)} = Π_{d|n} (1 − x^d)^{μ(n/d)} up to sign, as power series
    let mut p = vec![0i64; deg + 1];
    p[0] = 1;
    for &d in &divisors {
        let mu = mobius(n / d);
        let du = d as usize;
        if mu == 1 {
            for i in (du..=deg).rev() {
                p[i] -= p[i - du];
            }
        } else if mu == -1 {
            for i in du..=deg {
                p[i] += p[i - du];
            }
        }
    }
    // the product of (1 − x^d) factors equals ±Φ_n; normalise to monic
    if p[deg] < 0 {
        for c in p.iter_mut() {
            *c = -*c;
        }
    }
    PHI.with(|t| t.borrow_mut().insert(n, p.clone()));
    p
}

/// Whether Σ c_a ζ_m^a = 0, i.e. Φ_m divides the polynomial Σ c_a x^a.
pub fn is_zero_mod_cyclotomic(c: &[i64], m: i64) -> bool {
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    let mut r: Vec<i128> = c.iter().map(|&x| x as i128).collect();
    for i in (deg..r.len()).rev() {
        let lead = r[i];
        if lead == 0 {
            continue;
        }
        for (j, &pj) in phi.iter().enumerate() {
            if pj != 0 {
                r[i - deg + j] -= lead * pj as i128;
            }
        }
    }
    r.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_poly(105);
        assert_eq!(p105.len(), 49);
        assert_eq!(p105[7], -2);
    }

    #[test]
    fn sums_of_roots() {
        // 1 + ω + ω² = 0 for ω = e^{2πi/3}
        let mut s = CycloSum::new();
        for j in 0..3 {
            s.push(RootOfUnity::from_turns(j, 3));
        }
        assert!(s.is_exact_zero());
        // i + (−i) = 0 but i ≠ 1
        let mut a = CycloSum::new();
        a.push(RootOfUnity::new(1, 2));
        let mut b = CycloSum::new();
        b.push(RootOfUnity::one());
        assert!(!a.exact_eq(&b));
        let mut z = a.clone();
        z.push(RootOfUnity::new(3, 2));
        assert!(z.is_exact_zero());
        // ζ5 + ζ5⁴ = 2cos(2π/5) = (√5 − 1)/2 ≠ 0
        let mut w = CycloSum::new();
        w.push(RootOfUnity::from_turns(1, 5));
        w.push(RootOfUnity::from_turns(4, 5));
        assert!(!w.is_exact_zero());
        let (re, im) = w.to_f64_pair();
        assert!((re - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12 && im.abs() < 1e-12);
    }
}
