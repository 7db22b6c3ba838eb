//! Command-line front end. Every subcommand writes JSON lines to the given writer.
//!
//! Exit codes: 0 on success, 1 when a check or comparison fails (or a computation
//! errors), 2 on usage errors.

mod cache;
mod config;
mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::Rational64;
use serde::Serialize;

pub use cache::{AuditReport, CacheRecord, CoeffCache, AUDIT_SAMPLE};
pub use config::{Config, KmaxPolicy, Overrides, DEFAULT_TOL, ENV_CACHE, ENV_PREC};
pub use selftest::{run_selftest, CheckOutcome};

use crate::error::{Error, Result};
use crate::hpnum::{ComplexHP, Real};
use crate::integrals::{j_star, j_wrapped, l_closed, l_contour, mordell_i, script_i, IntegralRow};
use crate::kloosterman::{report_row, Family, KloostermanSpec};
use crate::qseries::{enumerate_p1bar_with_ceiling, export_series, g1_series, named_series, partition_series, SeriesName};
use crate::rademacher::{
    asymptotic_ratio, p1bar_asymptotic, p1bar_dominant, p1bar_exact, p_rademacher, VerifyReport, VerifyRow,
};
use crate::transform::{check_law, check_law_r, standard_points, sweep, LawId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "circleforge", version, about = "Exact formula for lower 1-run overpartitions and its ingredients")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Working precision in bits (default: chosen per computation).
    #[arg(long, global = true)]
    precision_bits: Option<usize>,
    /// Coefficient cache (JSON lines).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Upper end of the enumeration oracle.
    #[arg(long, global = true)]
    oracle_ceiling: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact coefficients of a named series.
    Coeffs {
        #[arg(long)]
        series: String,
        #[arg(long)]
        order: usize,
    },
    /// Count lower 1-run overpartitions of n by enumeration.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Truncated exact formula at n.
    Exact {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        kmax: Option<i64>,
        #[arg(long)]
        tol: Option<String>,
        /// Rademacher's series for p(n) instead.
        #[arg(long)]
        partitions: bool,
    },
    /// Leading asymptotic, the dominant term and the exact coefficient at n.
    Asymptotic {
        #[arg(long)]
        n: u64,
    },
    /// One Kloosterman-type sum.
    Kloosterman {
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        j: Option<i64>,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        nu: Option<i64>,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 0)]
        m: i64,
        #[arg(long)]
        ell: Option<i64>,
        #[arg(long = "big-n")]
        big_n: Option<i64>,
    },
    /// One of the integrals: mordell, J, Jstar, scriptI, L.
    Integral {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        nu: i64,
        #[arg(long)]
        b: Option<String>,
        /// Complex point as "re,im".
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long = "big-n")]
        big_n: Option<i64>,
        #[arg(long)]
        tol: Option<String>,
    },
    /// One transformation law at (h, k, z), or a sweep with --grid.
    CheckTransform {
        #[arg(long)]
        law: String,
        #[arg(long, default_value_t = 1)]
        h: i64,
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long, default_value = "1,0")]
        z: String,
        /// The power r for Pr_law.
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        tol: Option<String>,
        /// Sweep every k up to this bound at the standard points.
        #[arg(long)]
        grid: Option<i64>,
    },
    /// Compare the formula with the series oracle for n in [from, to].
    Verify {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        kmax: Option<i64>,
        #[arg(long)]
        tol: Option<String>,
        #[arg(long)]
        partitions: bool,
    },
    /// The invariant suite.
    Selftest,
}

fn emit<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(v)?)?;
    Ok(())
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_complex(s: &str, prec: usize) -> Result<ComplexHP> {
    let mut it = s.split(',');
    let re = it.next().map(str::trim).unwrap_or("");
    let im = it.next().map(str::trim).unwrap_or("0");
    if it.next().is_some() {
        return Err(usage(format!("expected \"re,im\", got {s:?}")));
    }
    let part = |x: &str| parse_real(x, prec);
    Ok(ComplexHP::new(part(re)?, part(im)?))
}

/// Decimal or p/q.
fn parse_real(s: &str, prec: usize) -> Result<Real> {
    if let Ok(r) = s.parse::<Rational64>() {
        return Ok(Real::from_ratio(*r.numer(), *r.denom(), prec));
    }
    Real::parse(s, prec).ok_or_else(|| usage(format!("not a number: {s:?}")))
}

fn parse_b(s: Option<&str>) -> Result<Rational64> {
    let s = s.ok_or_else(|| usage("--b is required for this integral"))?;
    s.parse().map_err(|_| usage(format!("--b must be a fraction, got {s:?}")))
}

fn field_tol(cfg: &Config, tol: &Option<String>) -> Result<f64> {
    let c = Config { default_tol: tol.clone().unwrap_or_else(|| cfg.default_tol.clone()), ..cfg.clone() };
    c.tol()
}

#[derive(Serialize)]
struct EnumerateRow {
    n: usize,
    count: String,
}

#[derive(Serialize)]
struct AsymptoticRow {
    n: u64,
    coeff: String,
    asymptotic: String,
    ratio: f64,
    dominant: String,
}

#[derive(Serialize)]
struct LRow {
    k: i64,
    n: u64,
    y: String,
    #[serde(rename = "N")]
    big_n: i64,
    contour: String,
    closed: String,
    rel_err: String,
}

#[derive(Serialize)]
struct Summary {
    summary: &'static str,
    rows: usize,
    failures: usize,
    passed: bool,
}

fn complex_string(c: &ComplexHP, digits: usize) -> String {
    format!("{},{}", c.re.to_sci(digits), c.im.to_sci(digits))
}

fn dispatch(cmd: Command, cfg: &Config, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Coeffs { series, order } => {
            let name: SeriesName = series.parse()?;
            let mut cache = match &cfg.cache_path {
                Some(p) => CoeffCache::load(p)?,
                None => CoeffCache::in_memory(),
            };
            let coeffs = match cache.lookup(name, order) {
                Some(c) => c,
                None => {
                    let e = export_series(name.tag(), &named_series(name, order));
                    cache.insert_series(name, &e.coeffs);
                    cache.save()?;
                    e.coeffs
                }
            };
            emit(out, &crate::qseries::SeriesExport { name: name.tag().to_string(), order, coeffs })?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { n } => {
            let c = enumerate_p1bar_with_ceiling(n, cfg.oracle_ceiling)?;
            emit(out, &EnumerateRow { n, count: c.to_string() })?;
            Ok(EXIT_OK)
        }
        Command::Exact { n, kmax, tol, partitions } => {
            let tol = field_tol(cfg, &tol)?;
            let kmax = kmax.unwrap_or_else(|| cfg.kmax_policy.kmax(n));
            let (r, oracle) = if partitions {
                (p_rademacher(n, kmax, cfg.prec_for(n))?, partition_series(n as usize).coeff(n as usize))
            } else {
                (p1bar_exact(n, kmax, tol, cfg.prec_for(n))?, g1_series(n as usize).coeff(n as usize))
            };
            let row = VerifyRow::new(&r, &oracle);
            emit(out, &row)?;
            Ok(if row.matches { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Asymptotic { n } => {
            let p = cfg.prec_for(n).max(128);
            let coeff: BigInt = g1_series(n as usize).coeff(n as usize);
            let a = p1bar_asymptotic(n, p)?;
            let dom = p1bar_dominant(n, 1e-15, p)?;
            emit(
                out,
                &AsymptoticRow {
                    n,
                    coeff: coeff.to_string(),
                    asymptotic: a.to_sci(15),
                    ratio: asymptotic_ratio(&coeff, n)?,
                    dominant: dom.to_sci(15),
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Kloosterman { family, d, j, k, nu, n, m, ell, big_n } => {
            let fam: Family = family.parse()?;
            let need = |x: Option<i64>, flag: &str| x.ok_or_else(|| usage(format!("--{flag} is required for {family}")));
            let mut spec = match fam {
                Family::Classical => KloostermanSpec::classical(k, n, m),
                Family::Incomplete => KloostermanSpec::incomplete(k, need(ell, "ell")?, need(big_n, "big-n")?, n, m),
                Family::A => KloostermanSpec::a(k, n),
                Family::Modified => KloostermanSpec::modified(need(j, "j")?, k, nu, n, m),
                Family::ModifiedIncomplete => KloostermanSpec::modified_incomplete(
                    need(j, "j")?,
                    k,
                    nu,
                    need(ell, "ell")?,
                    need(big_n, "big-n")?,
                    n,
                    m,
                ),
            };
            if d.is_some() {
                spec.d = d;
            }
            emit(out, &report_row(&spec)?)?;
            Ok(EXIT_OK)
        }
        Command::Integral { kind, k, nu, b, z, n, y, big_n, tol } => {
            let t = field_tol(cfg, &tol)?;
            let p = cfg.prec_for_tol(t);
            let tr = Real::from_f64(t, p);
            let z = || parse_complex(z.as_deref().unwrap_or("1,0"), p);
            let row = |b: Option<String>, value: String, err: String| IntegralRow { b, k, nu, n, value, err };
            match kind.as_str() {
                "mordell" => {
                    let r = mordell_i(k, nu, &z()?, &tr)?;
                    emit(out, &row(None, complex_string(&r.value, 18), r.abs_error_estimate.to_sci(3)))?;
                }
                "J" => {
                    let bb = parse_b(b.as_deref())?;
                    let v = j_wrapped(bb, k, nu, &z()?, &tr)?;
                    emit(out, &row(Some(bb.to_string()), complex_string(&v, 18), tr.to_sci(3)))?;
                }
                "Jstar" => {
                    let bb = parse_b(b.as_deref())?;
                    let r = j_star(bb, k, nu, &z()?, &tr)?;
                    emit(out, &row(Some(bb.to_string()), complex_string(&r.value, 18), r.abs_error_estimate.to_sci(3)))?;
                }
                "scriptI" => {
                    let bb = parse_b(b.as_deref())?;
                    let nn = n.ok_or_else(|| usage("--n is required for scriptI"))?;
                    let r = script_i(bb, k, nu, nn, &tr)?;
                    emit(out, &row(Some(bb.to_string()), r.value.to_sci(18), r.abs_error_estimate.to_sci(3)))?;
                }
                "L" => {
                    let nn = n.ok_or_else(|| usage("--n is required for L"))?;
                    let ys = y.as_deref().ok_or_else(|| usage("--y is required for L"))?;
                    let yy = parse_real(ys, p)?;
                    let bn = big_n.unwrap_or(8);
                    let c = l_contour(k, nn, &yy, bn, &tr)?;
                    let closed = l_closed(k, nn, &yy)?;
                    let rel = if closed.is_zero() {
                        c.value.abs()
                    } else {
                        (&c.value - &ComplexHP::from_real(closed.clone())).abs() / &closed
                    };
                    emit(
                        out,
                        &LRow {
                            k,
                            n: nn,
                            y: ys.to_string(),
                            big_n: bn,
                            contour: complex_string(&c.value, 18),
                            closed: closed.to_sci(18),
                            rel_err: rel.to_sci(3),
                        },
                    )?;
                }
                other => return Err(Error::UnknownTag(other.to_string())),
            }
            Ok(EXIT_OK)
        }
        Command::CheckTransform { law, h, k, z, r, tol, grid } => {
            let id: LawId = law.parse()?;
            let t = field_tol(cfg, &tol)?;
            let p = cfg.prec_for_tol(t);
            let tr = Real::from_f64(t, p);
            if let Some(kmax) = grid {
                let rows = sweep(&[id], kmax, &standard_points(p), &tr)?;
                let failures = rows.iter().filter(|c| !c.passed).count();
                for c in &rows {
                    emit(out, &c.row())?;
                }
                emit(out, &Summary { summary: "check-transform", rows: rows.len(), failures, passed: failures == 0 })?;
                return Ok(if failures == 0 { EXIT_OK } else { EXIT_MISMATCH });
            }
            let zc = parse_complex(&z, p)?;
            let c = match (id, r) {
                (LawId::PrLaw, Some(r)) => check_law_r(h, k, r, &zc, &tr)?,
                (_, Some(_)) => return Err(usage("--r applies to Pr_law only")),
                _ => check_law(id, h, k, &zc, &tr)?,
            };
            emit(out, &c.row())?;
            Ok(if c.passed { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Verify { from, to, kmax, tol, partitions } => {
            if from > to {
                return Err(usage(format!("empty range {from}..{to}")));
            }
            let t = field_tol(cfg, &tol)?;
            let report = if partitions {
                crate::rademacher::verify_partitions(from, to)?
            } else {
                let policy = kmax.map(KmaxPolicy::Fixed).unwrap_or(cfg.kmax_policy);
                verify_with(from, to, policy, t, cfg)?
            };
            for row in &report.rows {
                emit(out, row)?;
            }
            emit(
                out,
                &Summary { summary: "verify", rows: report.rows.len(), failures: report.mismatches.len(), passed: report.passed() },
            )?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Selftest => {
            let cache = match &cfg.cache_path {
                Some(p) => Some(CoeffCache::load(p)?),
                None => None,
            };
            let results = run_selftest(cache.as_ref());
            let failures = results.iter().filter(|c| !c.passed).count();
            for r in &results {
                emit(out, r)?;
            }
            emit(out, &Summary { summary: "selftest", rows: results.len(), failures, passed: failures == 0 })?;
            Ok(if failures == 0 { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

fn verify_with(from: u64, to: u64, policy: KmaxPolicy, tol: f64, cfg: &Config) -> Result<VerifyReport> {
    let oracle = g1_series(to as usize);
    let mut rows = Vec::new();
    let mut max_dist: f64 = 0.0;
    let mut mismatches = Vec::new();
    for n in from.max(1)..=to {
        let r = p1bar_exact(n, policy.kmax(n), tol, cfg.prec_for(n))?;
        let row = VerifyRow::new(&r, &oracle.coeff(n as usize));
        max_dist = max_dist.max(r.distance_to_integer.to_f64());
        if !row.matches {
            mismatches.push(n);
        }
        rows.push(row);
    }
    Ok(VerifyReport { rows, max_dist, mismatches })
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidArgument(_) | Error::UnknownTag(_) | Error::NotCoprime { .. } | Error::GcdClass { .. }
    )
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let flags = Overrides {
        precision_bits: cli.global.precision_bits,
        tol: None,
        kmax: None,
        oracle_ceiling: cli.global.oracle_ceiling,
        cache: cli.global.cache.clone(),
    };
    let cfg = match Config::from_env(&flags) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.cmd, &cfg, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_usage(&e) {
                EXIT_USAGE
            } else {
                EXIT_MISMATCH
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut v = vec!["circleforge"];
        v.extend_from_slice(args);
        let code = run(v, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn enumerate_zero() {
        let (code, out) = call(&["enumerate", "--n", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"n":0,"count":"1"}"#);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["enumerate"]).0, 2);
        assert_eq!(call(&["coeffs", "--series", "nope", "--order", "3"]).0, 2);
        assert_eq!(call(&["check-transform", "--law", "xi_gcd4", "--k", "3"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn coeffs_are_deterministic() {
        let a = call(&["coeffs", "--series", "G1", "--order", "10"]);
        let b = call(&["coeffs", "--series", "G1", "--order", "10"]);
        assert_eq!(a, b);
        assert!(a.1.contains(r#""coeffs":["1","2","4","6","12""#), "{}", a.1);
    }

    #[test]
    fn kloosterman_row() {
        let (code, out) = call(&["kloosterman", "--family", "A", "--k", "2", "--n", "1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with(r#"{"family":"a","#), "{out}");
    }

    #[test]
    fn complex_parsing() {
        let z = parse_complex("4/5, 1/5", 64).unwrap();
        assert!((z.re.to_f64() - 0.8).abs() < 1e-15 && (z.im.to_f64() - 0.2).abs() < 1e-15);
        assert!(parse_complex("1,2,3", 64).is_err());
        assert_eq!(parse_complex("0.5", 64).unwrap().im.to_f64(), 0.0);
    }
}
