//! Kronecker symbol, modular inverses and the strengthened inverse h′.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Jacobi symbol (a/n) for odd n > 0.
fn jacobi(a: i64, n: i64) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut r = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                r = -r;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            r = -r;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        r
    } else {
        0
    }
}

/// Kronecker symbol (a/n) for arbitrary integers.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut r = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            r = -r;
        }
    }
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let a8 = a.rem_euclid(8);
        if a8 == 3 || a8 == 5 {
            r = -r;
        }
    }
    r * jacobi(a, n)
}

/// Least non-negative inverse of `a` modulo `m`; `[a]_1 = 0`.
pub fn inverse_mod(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// L(k) = k · (3 if 3 | k) · (16 if 2 | k).
pub fn strengthened_modulus(k: i64) -> i64 {
    k * if k % 3 == 0 { 3 } else { 1 } * if k % 2 == 0 { 16 } else { 1 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StrengthenedInverse {
    pub h: i64,
    pub k: i64,
    pub hprime: i64,
    pub modulus: i64,
}

/// The least h′ ≥ 0 with h·h′ ≡ −1 (mod L(k)).
pub fn strengthened_inverse(h: i64, k: i64) -> Result<StrengthenedInverse> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
    }
    if h.gcd(&k) != 1 {
        return Err(Error::NotCoprime { h, k });
    }
    let l = strengthened_modulus(k);
    let inv = inverse_mod(h, l).ok_or(Error::NotCoprime { h, k })?;
    Ok(StrengthenedInverse { h, k, hprime: (-inv).rem_euclid(l), modulus: l })
}

/// Euler's totient.
pub fn totient(k: i64) -> i64 {
    (1..=k).filter(|h| h.gcd(&k) == 1).count() as i64
}
