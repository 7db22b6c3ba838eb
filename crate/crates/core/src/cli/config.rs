//! Run configuration: flags override environment, environment overrides defaults.

use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hpnum::MIN_PREC;
use crate::qseries::DEFAULT_CEILING;

pub const ENV_PREC: &str = "CIRCLEFORGE_PREC";
pub const ENV_CACHE: &str = "CIRCLEFORGE_CACHE";
pub const DEFAULT_TOL: &str = "1e-12";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KmaxPolicy {
    /// ⌈√n⌉ + 10 per n.
    Auto,
    Fixed(i64),
}

impl KmaxPolicy {
    pub fn kmax(self, n: u64) -> i64 {
        match self {
            KmaxPolicy::Auto => crate::rademacher::default_kmax(n),
            KmaxPolicy::Fixed(k) => k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    /// `None` picks the per-n default precision of the exact formula.
    pub precision_bits: Option<usize>,
    pub default_tol: String,
    pub kmax_policy: KmaxPolicy,
    pub oracle_ceiling: usize,
    pub cache_path: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision_bits: None,
            default_tol: DEFAULT_TOL.to_string(),
            kmax_policy: KmaxPolicy::Auto,
            oracle_ceiling: DEFAULT_CEILING,
            cache_path: None,
        }
    }
}

/// Values given on the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub precision_bits: Option<usize>,
    pub tol: Option<String>,
    pub kmax: Option<i64>,
    pub oracle_ceiling: Option<usize>,
    pub cache: Option<PathBuf>,
}

impl Config {
    pub fn resolve(flags: &Overrides, env: impl Fn(&str) -> Option<String>) -> Result<Config> {
        let mut c = Config::default();
        if let Some(p) = env(ENV_PREC) {
            let bits = p.trim().parse().map_err(|_| Error::InvalidArgument(format!("{ENV_PREC}={p} is not an integer")))?;
            c.precision_bits = Some(bits);
        }
        if let Some(path) = env(ENV_CACHE) {
            if !path.is_empty() {
                c.cache_path = Some(PathBuf::from(path));
            }
        }
        if let Some(p) = flags.precision_bits {
            c.precision_bits = Some(p);
        }
        if let Some(t) = &flags.tol {
            c.default_tol = t.clone();
        }
        if let Some(k) = flags.kmax {
            c.kmax_policy = KmaxPolicy::Fixed(k);
        }
        if let Some(o) = flags.oracle_ceiling {
            c.oracle_ceiling = o;
        }
        if let Some(p) = &flags.cache {
            c.cache_path = Some(p.clone());
        }
        c.validate()?;
        Ok(c)
    }

    pub fn from_env(flags: &Overrides) -> Result<Config> {
        Config::resolve(flags, |k| std::env::var(k).ok())
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.precision_bits {
            if p < MIN_PREC {
                return Err(Error::InvalidArgument(format!("precision must be at least {MIN_PREC} bits, got {p}")));
            }
        }
        self.tol()?;
        if let KmaxPolicy::Fixed(k) = self.kmax_policy {
            if k < 1 {
                return Err(Error::InvalidArgument(format!("kmax must be positive, got {k}")));
            }
        }
        Ok(())
    }

    pub fn tol(&self) -> Result<f64> {
        match self.default_tol.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(Error::InvalidArgument(format!("tolerance must be a positive decimal, got {}", self.default_tol))),
        }
    }

    /// Precision for a computation at index n.
    pub fn prec_for(&self, n: u64) -> usize {
        self.precision_bits.unwrap_or_else(|| crate::hpnum::default_precision(n))
    }

    /// Precision for fixed-size numerics (integrals, laws), at least enough for `tol`.
    pub fn prec_for_tol(&self, tol: f64) -> usize {
        let need = (-tol.log2()).max(0.0) as usize + 40;
        self.precision_bits.unwrap_or(128).max(need)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env<'a>(pairs: &'a [(&'a str, &'a str)]) -> impl Fn(&str) -> Option<String> + 'a {
        move |k| pairs.iter().find(|(a, _)| *a == k).map(|(_, v)| v.to_string())
    }

    #[test]
    fn precedence() {
        let none = Overrides::default();
        assert_eq!(Config::resolve(&none, env(&[])).unwrap(), Config::default());
        let c = Config::resolve(&none, env(&[(ENV_PREC, "200"), (ENV_CACHE, "/tmp/c.jsonl")])).unwrap();
        assert_eq!(c.precision_bits, Some(200));
        assert_eq!(c.cache_path, Some(PathBuf::from("/tmp/c.jsonl")));
        let flags = Overrides { precision_bits: Some(300), kmax: Some(7), ..Default::default() };
        let c = Config::resolve(&flags, env(&[(ENV_PREC, "200")])).unwrap();
        assert_eq!(c.precision_bits, Some(300));
        assert_eq!(c.kmax_policy.kmax(1000), 7);
    }

    #[test]
    fn rejects_bad_values() {
        let low = Overrides { precision_bits: Some(32), ..Default::default() };
        assert!(Config::resolve(&low, env(&[])).is_err());
        let tol = Overrides { tol: Some("-1".into()), ..Default::default() };
        assert!(Config::resolve(&tol, env(&[])).is_err());
        assert!(Config::resolve(&Overrides::default(), env(&[(ENV_PREC, "many")])).is_err());
    }
}
