//! The transformation laws of P, ξ, f and g₂ under q = e^{2πi(h+iz)/k} ↦ q₁.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::evaluate::evaluate_at;
use crate::error::{Error, Result};
use crate::hpnum::{ComplexHP, Real, MIN_PREC};
use crate::integrals::mordell_i;
use crate::modular::{omega_canonical, strengthened_inverse, strengthened_modulus, RootOfUnity};
use crate::qseries::SeriesName;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LawId {
    PLaw,
    PrLaw,
    XiGcd4,
    XiGcd2,
    XiGcd1,
    FEven,
    FOdd,
    G2Gcd4,
    G2Gcd2,
    G2Gcd1,
}

impl LawId {
    pub const ALL: [LawId; 10] = [
        LawId::PLaw,
        LawId::PrLaw,
        LawId::XiGcd4,
        LawId::XiGcd2,
        LawId::XiGcd1,
        LawId::FEven,
        LawId::FOdd,
        LawId::G2Gcd4,
        LawId::G2Gcd2,
        LawId::G2Gcd1,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            LawId::PLaw => "P_law",
            LawId::PrLaw => "Pr_law",
            LawId::XiGcd4 => "xi_gcd4",
            LawId::XiGcd2 => "xi_gcd2",
            LawId::XiGcd1 => "xi_gcd1",
            LawId::FEven => "f_even",
            LawId::FOdd => "f_odd",
            LawId::G2Gcd4 => "g2_gcd4",
            LawId::G2Gcd2 => "g2_gcd2",
            LawId::G2Gcd1 => "g2_gcd1",
        }
    }

    /// Whether the law applies at denominator k.
    pub fn applies_to(self, k: i64) -> bool {
        let d = k.gcd(&4);
        match self {
            LawId::PLaw | LawId::PrLaw => true,
            LawId::XiGcd4 | LawId::G2Gcd4 => d == 4,
            LawId::XiGcd2 | LawId::G2Gcd2 => d == 2,
            LawId::XiGcd1 | LawId::G2Gcd1 => d == 1,
            LawId::FEven => k % 2 == 0,
            LawId::FOdd => k % 2 == 1,
        }
    }

    fn requirement(self) -> &'static str {
        match self {
            LawId::PLaw | LawId::PrLaw => "any k",
            LawId::XiGcd4 | LawId::G2Gcd4 => "gcd(4,k) = 4",
            LawId::XiGcd2 | LawId::G2Gcd2 => "gcd(4,k) = 2",
            LawId::XiGcd1 | LawId::G2Gcd1 => "gcd(4,k) = 1",
            LawId::FEven => "even k",
            LawId::FOdd => "odd k",
        }
    }

    /// The ratio is a root of unity that the check does not pin down.
    pub fn phase_only(self) -> bool {
        self == LawId::PrLaw
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for LawId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LawId::ALL.into_iter().find(|l| l.tag() == s).ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

impl Serialize for LawId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// Outcome of one law at one (h, k, z).
#[derive(Clone, Debug)]
pub struct LawCheck {
    pub law: LawId,
    pub h: i64,
    pub k: i64,
    /// The power r for Pr_law.
    pub r: Option<i64>,
    pub z: ComplexHP,
    pub lhs: ComplexHP,
    pub rhs: ComplexHP,
    pub ratio: ComplexHP,
    pub modulus_defect: Real,
    /// arg(ratio) in (−π, π].
    pub phase: Real,
    /// For Pr_law: the root of unity separating the nome Q used on the right from q₁^{g/ρ}.
    pub zeta: Option<RootOfUnity>,
    pub passed: bool,
}

/// JSON form of a [`LawCheck`], numbers as decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct LawRow {
    pub law: LawId,
    pub h: i64,
    pub k: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    pub z: [String; 2],
    pub lhs: [String; 2],
    pub rhs: [String; 2],
    pub ratio: [String; 2],
    pub modulus_defect: String,
    pub phase: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<String>,
    pub passed: bool,
}

fn pair(c: &ComplexHP, digits: usize) -> [String; 2] {
    [c.re.to_sci(digits), c.im.to_sci(digits)]
}

impl LawCheck {
    /// |ratio − 1|.
    pub fn deviation(&self) -> Real {
        (&self.ratio - &ComplexHP::one(self.ratio.prec())).abs()
    }

    pub fn row(&self) -> LawRow {
        LawRow {
            law: self.law,
            h: self.h,
            k: self.k,
            r: self.r,
            z: pair(&self.z, 6),
            lhs: pair(&self.lhs, 20),
            rhs: pair(&self.rhs, 20),
            ratio: pair(&self.ratio, 20),
            modulus_defect: self.modulus_defect.to_sci(6),
            phase: self.phase.to_sci(12),
            zeta: self.zeta.map(|z| {
                let (a, b) = z.exponent();
                format!("{a}/{b}")
            }),
            passed: self.passed,
        }
    }
}

/// Mordell integrals I_{k,ν}(z) for ν = 1..k, shared by every h at the same (k, z).
pub fn mordell_table(k: i64, z: &ComplexHP, tol: &Real) -> Result<Vec<ComplexHP>> {
    (1..=k).map(|nu| mordell_i(k, nu, z, tol).map(|r| r.value)).collect()
}

struct Frame {
    p: usize,
    h: i64,
    k: i64,
    hprime: i64,
    z: ComplexHP,
    pi: Real,
    stol: Real,
}

impl Frame {
    fn new(h: i64, k: i64, hprime: i64, z: &ComplexHP, p: usize, stol: Real) -> Self {
        Frame { p, h, k, hprime, z: z.with_prec(p), pi: Real::pi(p), stol }
    }

    fn real(&self, a: i64, b: i64) -> Real {
        Real::from_ratio(a, b, self.p)
    }

    fn root(&self, w: RootOfUnity) -> ComplexHP {
        w.to_complex(self.p)
    }

    fn w(&self, h: i64, k: i64) -> Result<ComplexHP> {
        Ok(self.root(omega_canonical(h, k)?))
    }

    /// e^{2πi·a·(x + i y)/m} for real rational a
    fn nome(&self, a: &Real, x: i64, y: &ComplexHP, m: i64) -> ComplexHP {
        let t = ComplexHP::new(Real::from_i64(x, self.p) - &y.im, y.re.clone());
        let s = &self.pi * Real::from_i64(2, self.p) * a / Real::from_i64(m, self.p);
        (&ComplexHP::i(self.p) * &t.scale(&s)).exp()
    }

    /// q = e^{2πir(h + iz)/k}.
    fn q_pow(&self, r: i64) -> ComplexHP {
        self.nome(&Real::from_i64(r, self.p), self.h, &self.z, self.k)
    }

    /// q₁^α = e^{2πiα(h′ + i/z)/k}.
    fn q1_pow(&self, alpha: &Real) -> ComplexHP {
        self.nome(alpha, self.hprime, &self.z.recip(), self.k)
    }

    fn q1(&self) -> ComplexHP {
        self.q1_pow(&Real::one(self.p))
    }

    /// The nome Q_{1,r} in the modular image of q^r, with its multiplier and ζ.
    fn image_r(&self, r: i64) -> Result<ImageR> {
        let g = r.gcd(&self.k);
        let (rho, kr) = (r / g, self.k / g);
        let hr = (self.h * rho).rem_euclid(kr);
        let big_h = if kr == 1 { 0 } else { strengthened_inverse(hr, kr)?.hprime };
        let rz = self.z.scale(&Real::from_i64(rho, self.p));
        let nome = self.nome(&Real::one(self.p), big_h, &rz.recip(), kr);
        let zeta = RootOfUnity::from_turns(rho * big_h - self.hprime, rho * kr);
        Ok(ImageR { nome, w: omega_canonical(hr, kr)?, rho, kr, zeta })
    }

    fn eval(&self, name: SeriesName, q: &ComplexHP) -> Result<ComplexHP> {
        evaluate_at(name, q, &self.stol)
    }

    fn p(&self, q: &ComplexHP) -> Result<ComplexHP> {
        self.eval(SeriesName::P, q)
    }

    // π·(a/z + b·z)/c as a complex exponent
    fn expo(&self, a: i64, b: i64, c: i64) -> ComplexHP {
        let t = &self.z.recip().scale(&Real::from_i64(a, self.p)) + &self.z.scale(&Real::from_i64(b, self.p));
        t.scale(&(&self.pi / Real::from_i64(c, self.p))).exp()
    }
}

struct ImageR {
    nome: ComplexHP,
    w: RootOfUnity,
    rho: i64,
    kr: i64,
    zeta: RootOfUnity,
}

fn precondition(id: LawId, h: i64, k: i64, z: &ComplexHP, r: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
    }
    if h.gcd(&k) != 1 {
        return Err(Error::NotCoprime { h, k });
    }
    if z.re.is_negative() || z.re.is_zero() {
        return Err(Error::InvalidArgument("transformation laws need Re z > 0".into()));
    }
    if !id.applies_to(k) {
        return Err(Error::InvalidArgument(format!("{id} needs {}, got k = {k}", id.requirement())));
    }
    if r < 1 {
        return Err(Error::InvalidArgument(format!("r must be positive, got {r}")));
    }
    Ok(())
}

/// Check a law at (h, k, z). Pr_law uses r = 2; see [`check_law_r`].
pub fn check_law(id: LawId, h: i64, k: i64, z: &ComplexHP, tol: &Real) -> Result<LawCheck> {
    check_inner(id, h, k, z, 2, tol, None)
}

/// Pr_law with an explicit power r.
pub fn check_law_r(h: i64, k: i64, r: i64, z: &ComplexHP, tol: &Real) -> Result<LawCheck> {
    check_inner(LawId::PrLaw, h, k, z, r, tol, None)
}

/// As [`check_law`], reusing Mordell integrals from [`mordell_table`].
pub fn check_law_with(id: LawId, h: i64, k: i64, z: &ComplexHP, tol: &Real, mordell: &[ComplexHP]) -> Result<LawCheck> {
    check_inner(id, h, k, z, 2, tol, Some(mordell))
}

fn working_prec(tol: &Real) -> usize {
    let bits = (-tol.log2_abs()).max(0.0) as usize;
    (bits + 48).max(MIN_PREC).max(tol.prec())
}

fn check_inner(
    id: LawId,
    h: i64,
    k: i64,
    z: &ComplexHP,
    r: i64,
    tol: &Real,
    mordell: Option<&[ComplexHP]>,
) -> Result<LawCheck> {
    precondition(id, h, k, z, r)?;
    let p = working_prec(tol);
    let stol = tol.with_prec(p) * Real::pow2(-24, p);
    let mut hprime = strengthened_inverse(h, k)?.hprime;
    if id == LawId::FOdd {
        // the odd-k law needs h′ ≡ 0 (mod 8) as well
        let l = strengthened_modulus(k);
        hprime = (0..8).map(|j| hprime + j * l).find(|x| x % 8 == 0).expect("L(k) odd");
    }
    let f = Frame::new(h, k, hprime, z, p, stol.clone());
    let q = f.q_pow(1);
    let q1 = f.q1();
    let sz = f.z.sqrt();
    let wk = f.w(h, k)?;
    let mut zeta = None;
    let (lhs, rhs) = match id {
        LawId::PLaw => {
            let rhs = &(&(&wk * &sz) * &f.expo(1, -1, 12 * k)) * &f.p(&q1)?;
            (f.p(&q)?, rhs)
        }
        LawId::PrLaw => {
            let im = f.image_r(r)?;
            zeta = Some(im.zeta);
            let rz = f.z.scale(&Real::from_i64(im.rho, p));
            let e = (&rz.recip() - &rz).scale(&(&f.pi / Real::from_i64(12 * im.kr, p))).exp();
            let rhs = &(&(&f.root(im.w) * &rz.sqrt()) * &e) * &f.p(&im.nome)?;
            (f.p(&f.q_pow(r))?, rhs)
        }
        LawId::XiGcd4 => {
            let m = f.root(omega_canonical(h, k / 2)?.pow(4))
                / (&wk * &f.root(omega_canonical(h, k / 4)?.pow(2)));
            let rhs = &(&(&m * &sz) * &f.expo(-1, 1, 12 * k)) * &f.eval(SeriesName::Xi, &q1)?;
            (f.eval(SeriesName::Xi, &q)?, rhs)
        }
        LawId::XiGcd2 | LawId::XiGcd1 | LawId::G2Gcd2 | LawId::G2Gcd1 => {
            let q2 = f.image_r(2)?.nome;
            let q4 = f.image_r(4)?.nome;
            let (p1, p2, p4) = (f.p(&q1)?, f.p(&q2)?, f.p(&q4)?);
            let (top, low) = if k % 2 == 0 {
                (omega_canonical(h, k / 2)?, omega_canonical(2 * h, k / 2)?)
            } else {
                (omega_canonical(2 * h, k)?, omega_canonical(4 * h, k)?)
            };
            match id {
                LawId::XiGcd2 | LawId::XiGcd1 => {
                    let m = f.root(top.pow(4)) / (&wk * &f.root(low.pow(2)));
                    let (m, e) = if id == LawId::XiGcd2 {
                        (m.scale(&f.real(1, 2)), f.expo(5, 1, 12 * k))
                    } else {
                        (m, f.expo(1, 2, 24 * k))
                    };
                    let prod = &p2.powi(4) / &(&p1 * &p4.powi(2));
                    (f.eval(SeriesName::Xi, &q)?, &(&(&m * &sz) * &e) * &prod)
                }
                _ => {
                    let m = f.root(top.pow(6)) / (&f.root(omega_canonical(h, k)?.pow(4)) * &f.root(low.pow(2)));
                    let (m, e) = if id == LawId::G2Gcd2 {
                        (m.scale(&f.real(1, 4)), f.expo(1, 0, 2 * k))
                    } else {
                        (m, f.expo(-1, 0, 8 * k))
                    };
                    let prod = &p2.powi(6) / &(&p1.powi(4) * &p4.powi(2));
                    (f.eval(SeriesName::Gtwo, &q)?, &(&m * &e) * &prod)
                }
            }
        }
        LawId::G2Gcd4 => {
            let m = f.root(omega_canonical(h, k / 2)?.pow(6))
                / (&f.root(omega_canonical(h, k)?.pow(4)) * &f.root(omega_canonical(h, k / 4)?.pow(2)));
            (f.eval(SeriesName::Gtwo, &q)?, &m * &f.eval(SeriesName::Gtwo, &q1)?)
        }
        LawId::FEven | LawId::FOdd => {
            let owned;
            let table = match mordell {
                Some(t) if t.len() == k as usize => t,
                _ => {
                    owned = mordell_table(k, &f.z, &stol)?;
                    &owned[..]
                }
            };
            let mut sum = ComplexHP::zero(p);
            for (i, val) in table.iter().enumerate() {
                let nu = i as i64 + 1;
                let sign = if nu % 2 == 0 { 1 } else { -1 };
                let ph = RootOfUnity::new(hprime * (-3 * nu * nu + nu), k);
                let t = &f.root(ph) * &val.with_prec(p);
                sum = if sign > 0 { &sum + &t } else { &sum - &t };
            }
            let mordell_part =
                &(&(&wk.scale(&f.real(2, k)) * &sz) * &f.expo(0, -1, 12 * k)) * &sum;
            let modular_part = if id == LawId::FEven {
                let sgn = if (k / 2 + 1) % 2 == 0 { 1 } else { -1 };
                let ph = f.root(RootOfUnity::new(2 * hprime - 3 * hprime * k, 4));
                let c = &(&ph * &wk) / &sz;
                &(&c * &f.expo(1, -1, 12 * k)) * &f.eval(SeriesName::F, &q1)?.scale(&Real::from_i64(sgn, p))
            } else {
                let sgn = if ((k - 1) / 2) % 2 == 0 { 2 } else { -2 };
                let ph = f.root(RootOfUnity::new(3 * hprime, 4 * k));
                let c = &(&ph * &wk) / &sz;
                // e^{−2π/(3kz) − πz/(12k)}
                let e = &f.expo(-8, 0, 12 * k) * &f.expo(0, -1, 12 * k);
                let half = f.q1_pow(&f.real(1, 2));
                &(&c * &e) * &f.eval(SeriesName::OmegaMock, &half)?.scale(&Real::from_i64(sgn, p))
            };
            (f.eval(SeriesName::F, &q)?, &modular_part + &mordell_part)
        }
    };
    finish(id, h, k, if id == LawId::PrLaw { Some(r) } else { None }, z, lhs, rhs, zeta, tol)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    law: LawId,
    h: i64,
    k: i64,
    r: Option<i64>,
    z: &ComplexHP,
    lhs: ComplexHP,
    rhs: ComplexHP,
    zeta: Option<RootOfUnity>,
    tol: &Real,
) -> Result<LawCheck> {
    let p = lhs.prec();
    let ratio = &lhs / &rhs;
    let modulus_defect = (ratio.abs() - Real::one(p)).abs();
    let phase = ratio.arg();
    let tol = tol.with_prec(p);
    let passed = if law.phase_only() {
        // phase/(π/(12k·k_r·ρ)) must be an integer
        let (rho, kr) = {
            let rr = r.unwrap_or(2);
            let g = rr.gcd(&k);
            (rr / g, k / g)
        };
        let unit = Real::pi(p) / Real::from_i64(12 * k * kr * rho, p);
        let x = &phase / &unit;
        let off = (&x - &x.round()).abs();
        modulus_defect < tol && off < tol
    } else {
        let dev = (&ratio - &ComplexHP::one(p)).abs();
        modulus_defect < tol && dev < tol
    };
    Ok(LawCheck { law, h, k, r, z: z.clone(), lhs, rhs, ratio, modulus_defect, phase, zeta, passed })
}

/// The standard evaluation points 1, 4/5 + i/5 and 1/2.
pub fn standard_points(prec: usize) -> Vec<ComplexHP> {
    vec![
        ComplexHP::one(prec),
        ComplexHP::new(Real::from_ratio(4, 5, prec), Real::from_ratio(1, 5, prec)),
        ComplexHP::from_real(Real::from_ratio(1, 2, prec)),
    ]
}

/// Powers r exercised for Pr_law in sweeps.
pub const SWEEP_POWERS: [i64; 4] = [2, 3, 4, 6];

/// Every applicable (law, h, k, z) with k ≤ `kmax`, in a fixed order; Pr_law runs over
/// [`SWEEP_POWERS`]. Grouped by (law, k, z) so that Mordell integrals are shared.
pub fn sweep(laws: &[LawId], kmax: i64, zs: &[ComplexHP], tol: &Real) -> Result<Vec<LawCheck>> {
    let mut groups = Vec::new();
    for &law in laws {
        for k in 1..=kmax {
            if !law.applies_to(k) {
                continue;
            }
            for (zi, _) in zs.iter().enumerate() {
                groups.push((law, k, zi));
            }
        }
    }
    let out: Vec<Result<Vec<LawCheck>>> = groups
        .par_iter()
        .map(|&(law, k, zi)| {
            let z = &zs[zi];
            let table = if matches!(law, LawId::FEven | LawId::FOdd) {
                let p = working_prec(tol);
                Some(mordell_table(k, &z.with_prec(p), &(tol.with_prec(p) * Real::pow2(-24, p)))?)
            } else {
                None
            };
            let mut rows = Vec::new();
            for h in (0..k).filter(|h| h.gcd(&k) == 1) {
                if law == LawId::PrLaw {
                    for r in SWEEP_POWERS {
                        rows.push(check_inner(law, h, k, z, r, tol, None)?);
                    }
                } else {
                    rows.push(check_inner(law, h, k, z, 2, tol, table.as_deref())?);
                }
            }
            Ok(rows)
        })
        .collect();
    let mut all = Vec::new();
    for r in out {
        all.extend(r?);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Real {
        Real::pow2(-40, 128)
    }

    fn pt(re: (i64, i64), im: (i64, i64)) -> ComplexHP {
        ComplexHP::new(Real::from_ratio(re.0, re.1, 128), Real::from_ratio(im.0, im.1, 128))
    }

    #[test]
    fn tags_round_trip() {
        for l in LawId::ALL {
            assert_eq!(l.tag().parse::<LawId>().unwrap(), l);
        }
        assert!("xi_gcd3".parse::<LawId>().is_err());
    }

    #[test]
    fn p_law_fixed_point() {
        let c = check_law(LawId::PLaw, 0, 1, &ComplexHP::one(128), &tol()).unwrap();
        assert!(c.passed);
        assert!((&c.lhs - &c.rhs).abs().to_f64() < 1e-20);
    }

    #[test]
    fn p_law_at_half() {
        let c = check_law(LawId::PLaw, 1, 2, &pt((4, 5), (0, 1)), &tol()).unwrap();
        assert!(c.passed, "{:?}", c.row());
    }

    #[test]
    fn preconditions() {
        let z = ComplexHP::one(128);
        assert!(check_law(LawId::XiGcd4, 1, 6, &z, &tol()).is_err());
        assert!(check_law(LawId::FOdd, 1, 4, &z, &tol()).is_err());
        assert!(check_law(LawId::PLaw, 2, 4, &z, &tol()).is_err());
        assert!(check_law(LawId::PLaw, 1, 3, &pt((-1, 2), (0, 1)), &tol()).is_err());
    }

    #[test]
    fn f_even_at_k2() {
        let c = check_law(LawId::FEven, 1, 2, &ComplexHP::one(128), &tol()).unwrap();
        assert!(c.passed, "{:?}", c.row());
    }

    #[test]
    fn every_law_small_k() {
        let zs = vec![pt((4, 5), (1, 5))];
        let rows = sweep(&LawId::ALL, 6, &zs, &tol()).unwrap();
        for r in &rows {
            assert!(r.passed, "{:?}", r.row());
        }
        assert!(rows.iter().any(|r| r.law == LawId::FOdd));
    }

    #[test]
    fn pr_law_reports_zeta() {
        let c = check_law_r(1, 4, 6, &ComplexHP::one(128), &tol()).unwrap();
        assert!(c.passed && c.zeta.is_some());
    }

    #[test]
    fn gcd2_laws_near_the_real_axis() {
        let z = pt((1, 10), (0, 1));
        for law in [LawId::XiGcd2, LawId::G2Gcd2] {
            let c = check_law(law, 1, 6, &z, &tol()).unwrap();
            assert!(c.passed, "{:?}", c.row());
        }
    }
}
