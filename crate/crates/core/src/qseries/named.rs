//! The named q-series: partition generating functions, the third-order mock
//! theta functions f, φ, ω, the eta quotient ξ, and the lower 1-run
//! overpartition generating function with its decomposition.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::series::{pochhammer_inf, Coeff, TruncatedSeries};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SeriesName {
    P,
    Pbar,
    F,
    Phi,
    OmegaMock,
    Xi,
    G1,
    G1bar,
    Gone,
    Gtwo,
}

impl SeriesName {
    pub const ALL: [SeriesName; 10] = [
        SeriesName::P,
        SeriesName::Pbar,
        SeriesName::F,
        SeriesName::Phi,
        SeriesName::OmegaMock,
        SeriesName::Xi,
        SeriesName::G1,
        SeriesName::G1bar,
        SeriesName::Gone,
        SeriesName::Gtwo,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SeriesName::P => "P",
            SeriesName::Pbar => "Pbar",
            SeriesName::F => "f",
            SeriesName::Phi => "phi",
            SeriesName::OmegaMock => "omega_mock",
            SeriesName::Xi => "xi",
            SeriesName::G1 => "G1",
            SeriesName::G1bar => "G1bar",
            SeriesName::Gone => "g1",
            SeriesName::Gtwo => "g2",
        }
    }

    /// Whether the coefficients are integers (g1 and g2 carry a global factor 1/2).
    pub fn is_integral(self) -> bool {
        !matches!(self, SeriesName::Gone | SeriesName::Gtwo)
    }
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SeriesName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SeriesName::ALL
            .iter()
            .copied()
            .find(|n| n.tag() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

type IntSeries = TruncatedSeries<BigInt>;

/// 1/(q^a; q^a)_∞ applied in place: divides by every (1 − q^{ja}).
fn div_euler(s: &mut IntSeries, a: usize) {
    let mut e = a;
    while e <= s.order() {
        s.div_binomial(1, e);
        e += a;
    }
}

fn mul_euler(s: &mut IntSeries, a: usize) {
    let mut e = a;
    while e <= s.order() {
        s.mul_binomial(1, e);
        e += a;
    }
}

/// P(q) = 1/(q;q)_∞.
pub fn partition_series(m: usize) -> IntSeries {
    let mut s = IntSeries::one(m);
    div_euler(&mut s, 1);
    s
}

/// P̄(q) = (−q;q)_∞/(q;q)_∞.
pub fn overpartition_series(m: usize) -> IntSeries {
    let mut s = pochhammer_inf(-1, 1, 1, m).expect("valid parameters");
    div_euler(&mut s, 1);
    s
}

/// Σ_{n ≥ 0} q^{lead(n)} D_n where D_n = D_{n−1} / Π factors(n), each term truncated at M − lead(n).
fn mock_sum(m: usize, lead: impl Fn(usize) -> usize, mut step: impl FnMut(&mut IntSeries, usize)) -> IntSeries {
    let mut out = IntSeries::zero(m);
    let mut d = IntSeries::one(m);
    let mut n = 0usize;
    while lead(n) <= m {
        if n > 0 {
            step(&mut d, n);
        }
        let e = lead(n);
        let term = d.truncate(m - e);
        let mut c: Vec<BigInt> = out.coeffs().to_vec();
        for (i, a) in term.coeffs().iter().enumerate() {
            c[e + i] += a;
        }
        out = IntSeries::new(c, m);
        n += 1;
    }
    out
}

/// f(q) = Σ q^{n²}/(−q;q)_n².
pub fn mock_f(m: usize) -> IntSeries {
    mock_sum(m, |n| n * n, |d, n| {
        if n <= d.order() {
            d.div_binomial(-1, n);
            d.div_binomial(-1, n);
        }
    })
}

/// φ(q) = Σ q^{n²}/(−q²;q²)_n.
pub fn mock_phi(m: usize) -> IntSeries {
    mock_sum(m, |n| n * n, |d, n| {
        if 2 * n <= d.order() {
            d.div_binomial(-1, 2 * n);
        }
    })
}

/// ω(q) = Σ q^{2n(n+1)}/(q;q²)²_{n+1}.
pub fn mock_omega(m: usize) -> IntSeries {
    let mut d0 = IntSeries::one(m);
    d0.div_binomial(1, 1);
    d0.div_binomial(1, 1);
    let mut out = IntSeries::zero(m);
    let mut d = d0;
    let mut n = 0usize;
    while 2 * n * (n + 1) <= m {
        if n > 0 {
            let e = 2 * n + 1;
            if e <= m {
                d.div_binomial(1, e);
                d.div_binomial(1, e);
            }
        }
        let lead = 2 * n * (n + 1);
        let mut c: Vec<BigInt> = out.coeffs().to_vec();
        for (i, a) in d.coeffs().iter().enumerate().take(m - lead + 1) {
            c[lead + i] += a;
        }
        out = IntSeries::new(c, m);
        n += 1;
    }
    out
}

/// ξ(q) = P(q²)⁴/(P(q⁴)²P(q)) = (q⁴;q⁴)²(q;q)/(q²;q²)⁴.
pub fn xi_series(m: usize) -> IntSeries {
    let mut s = IntSeries::one(m);
    mul_euler(&mut s, 4);
    mul_euler(&mut s, 4);
    mul_euler(&mut s, 1);
    for _ in 0..4 {
        div_euler(&mut s, 2);
    }
    s
}

/// G₁(q) = (q⁴;q⁴)_∞/((q;q)_∞(q²;q²)_∞) · φ(q), the generating function of p̄₁(n).
pub fn g1_series(m: usize) -> IntSeries {
    let mut s = mock_phi(m);
    mul_euler(&mut s, 4);
    div_euler(&mut s, 1);
    div_euler(&mut s, 2);
    s
}

/// Ḡ₁(q) = G₁(−q).
pub fn g1bar_series(m: usize) -> IntSeries {
    g1_series(m).negate_variable()
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

/// g₁ = ½ ξ f.
pub fn little_g1(m: usize) -> TruncatedSeries<BigRational> {
    xi_series(m).mul(&mock_f(m)).to_rational().scale(&half())
}

/// g₂ = (q⁴;q⁴)²(q;q)⁴ / (2 (q²;q²)⁶).
pub fn little_g2(m: usize) -> TruncatedSeries<BigRational> {
    let mut s = IntSeries::one(m);
    mul_euler(&mut s, 4);
    mul_euler(&mut s, 4);
    for _ in 0..4 {
        mul_euler(&mut s, 1);
    }
    for _ in 0..6 {
        div_euler(&mut s, 2);
    }
    s.to_rational().scale(&half())
}

/// r(n): Σ r(n) qⁿ = ξ(q).
pub fn r_coeffs(m: usize) -> IntSeries {
    xi_series(m)
}

/// a(n): Σ a(n) qⁿ = ½ ξ(q) f(q).
pub fn a_coeffs(m: usize) -> TruncatedSeries<BigRational> {
    little_g1(m)
}

/// Builds any named series, exact, to order M. Integral series are embedded in ℚ.
pub fn named_series(name: SeriesName, m: usize) -> TruncatedSeries<BigRational> {
    match name {
        SeriesName::Gone => little_g1(m),
        SeriesName::Gtwo => little_g2(m),
        other => named_series_int(other, m).expect("integral series").to_rational(),
    }
}

/// Builds an integral named series; g1 and g2 are rejected.
pub fn named_series_int(name: SeriesName, m: usize) -> Result<IntSeries> {
    Ok(match name {
        SeriesName::P => partition_series(m),
        SeriesName::Pbar => overpartition_series(m),
        SeriesName::F => mock_f(m),
        SeriesName::Phi => mock_phi(m),
        SeriesName::OmegaMock => mock_omega(m),
        SeriesName::Xi => xi_series(m),
        SeriesName::G1 => g1_series(m),
        SeriesName::G1bar => g1bar_series(m),
        SeriesName::Gone | SeriesName::Gtwo => {
            return Err(Error::InvalidArgument(format!("{name} has non-integral coefficients")))
        }
    })
}

/// JSON export row: exponents 0..M as exact decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesExport {
    pub name: String,
    pub order: usize,
    pub coeffs: Vec<String>,
}

pub fn export_series<C: Coeff>(name: &str, s: &TruncatedSeries<C>) -> SeriesExport {
    SeriesExport {
        name: name.to_string(),
        order: s.order(),
        coeffs: s.coeffs().iter().map(|c| c.to_decimal()).collect(),
    }
}

/// Outcome of a coefficientwise identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub holds: bool,
    pub first_failing: Option<usize>,
}

fn compare<C: Coeff>(a: &TruncatedSeries<C>, b: &TruncatedSeries<C>) -> RelationCheck {
    let m = a.order().min(b.order());
    let first_failing = (0..=m).find(|&i| a.coeff(i) != b.coeff(i));
    RelationCheck { holds: first_failing.is_none(), first_failing }
}

/// 2φ(−q) − f(q) = (q;q)²_∞ / ((−q;q)_∞ (q²;q²)_∞), coefficientwise to order M.
pub fn check_ramanujan_relation(m: usize) -> RelationCheck {
    check_ramanujan_relation_with(&mock_f(m), m)
}

/// The same identity with a caller-supplied f, for negative controls.
pub fn check_ramanujan_relation_with(f: &IntSeries, m: usize) -> RelationCheck {
    let lhs = mock_phi(m).negate_variable().scale(&BigInt::from(2)).sub(&f.truncate(m));
    let mut rhs = IntSeries::one(m);
    mul_euler(&mut rhs, 1);
    mul_euler(&mut rhs, 1);
    let mut e = 1;
    while e <= m {
        rhs.div_binomial(-1, e);
        e += 1;
    }
    div_euler(&mut rhs, 2);
    compare(&lhs, &rhs)
}

/// Ḡ₁ = g₁ + g₂, coefficientwise to order M.
pub fn check_decomposition(m: usize) -> RelationCheck {
    let lhs = g1bar_series(m).to_rational();
    let rhs = little_g1(m).add(&little_g2(m));
    compare(&lhs, &rhs)
}
