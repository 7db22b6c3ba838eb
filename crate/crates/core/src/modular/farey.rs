//! Farey dissection data: neighbours and arc endpoints.

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

use super::arith::inverse_mod;
use crate::error::{Error, Result};

/// The arc around h/k in the Farey dissection of order N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FareyArc {
    pub h: i64,
    pub k: i64,
    pub n: i64,
    /// Left neighbour h₁/k₁.
    pub h1: i64,
    pub k1: i64,
    /// Right neighbour h₂/k₂.
    pub h2: i64,
    pub k2: i64,
    /// ϑ′ = 1/(k(k+k₁)).
    #[serde(serialize_with = "ser_ratio")]
    pub theta_left: Rational64,
    /// ϑ″ = 1/(k(k+k₂)).
    #[serde(serialize_with = "ser_ratio")]
    pub theta_right: Rational64,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

impl FareyArc {
    pub fn center(&self) -> Rational64 {
        Rational64::new(self.h, self.k)
    }

    pub fn left_end(&self) -> Rational64 {
        self.center() - self.theta_left
    }

    pub fn right_end(&self) -> Rational64 {
        self.center() + self.theta_right
    }

    pub fn is_unimodular(&self) -> bool {
        (self.h * self.k1 - self.h1 * self.k).abs() == 1 && (self.h2 * self.k - self.h * self.k2).abs() == 1
    }

    /// 1/(2kN) ≤ ϑ′, ϑ″ ≤ 1/(kN).
    pub fn within_envelope(&self) -> bool {
        let lo = Rational64::new(1, 2 * self.k * self.n);
        let hi = Rational64::new(1, self.k * self.n);
        [self.theta_left, self.theta_right].iter().all(|t| *t >= lo && *t <= hi)
    }
}

/// Largest d ≤ n with d ≡ r (mod k), r taken in 1..=k.
fn largest_in_class(r: i64, k: i64, n: i64) -> i64 {
    let r = if r == 0 { k } else { r };
    r + Integer::div_floor(&(n - r), &k) * k
}

pub fn farey_neighbors(h: i64, k: i64, n: i64) -> Result<FareyArc> {
    if !(0 <= h && h < k && k <= n) {
        return Err(Error::InvalidArgument(format!("need 0 <= h < k <= N, got h={h} k={k} N={n}")));
    }
    if h.gcd(&k) != 1 {
        return Err(Error::NotCoprime { h, k });
    }
    let (h1, k1, h2, k2) = if k == 1 {
        (-1, n, 1, n)
    } else {
        let r = inverse_mod(h, k).expect("coprime");
        // h·k₁ ≡ 1 and h·k₂ ≡ −1 (mod k)
        let k1 = largest_in_class(r, k, n);
        let k2 = largest_in_class((k - r) % k, k, n);
        ((h * k1 - 1) / k, k1, (h * k2 + 1) / k, k2)
    };
    Ok(FareyArc {
        h,
        k,
        n,
        h1,
        k1,
        h2,
        k2,
        theta_left: Rational64::new(1, k * (k + k1)),
        theta_right: Rational64::new(1, k * (k + k2)),
    })
}

/// Fractions h/k with 0 ≤ h < k ≤ N, gcd = 1, in ascending order.
pub fn farey_sequence(n: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(0, 1)];
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, n);
    while c < d {
        out.push((c, d));
        let t = (n + b) / d;
        let (na, nb, nc, nd) = (c, d, t * c - a, t * d - b);
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    out
}

/// Whether the arcs of order N tile [−1/(N+1), 1 − 1/(N+1)] exactly, without overlap.
pub fn arcs_tile(n: i64) -> Result<bool> {
    let arcs: Vec<FareyArc> =
        farey_sequence(n).into_iter().map(|(h, k)| farey_neighbors(h, k, n)).collect::<Result<_>>()?;
    let start = Rational64::new(-1, n + 1);
    let end = Rational64::from_integer(1) - Rational64::new(1, n + 1);
    if arcs[0].left_end() != start || arcs[arcs.len() - 1].right_end() != end {
        return Ok(false);
    }
    Ok(arcs.windows(2).all(|w| w[0].right_end() == w[1].left_end()))
}
