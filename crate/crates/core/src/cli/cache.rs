//! Append-only JSON-lines cache of exact series coefficients.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::{named_series, Coeff, SeriesName};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub series: String,
    pub n: usize,
    pub coeff: String,
    pub order_computed: usize,
}

/// Records keyed by (series, n). Single writer; the file is replaced whole on save.
#[derive(Clone, Debug, Default)]
pub struct CoeffCache {
    path: Option<PathBuf>,
    records: BTreeMap<(String, usize), CacheRecord>,
}

/// Outcome of re-deriving a sample of cached rows.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub sampled: usize,
    pub mismatches: Vec<(String, usize)>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Rows re-derived on load.
pub const AUDIT_SAMPLE: usize = 16;

impl CoeffCache {
    pub fn in_memory() -> Self {
        CoeffCache::default()
    }

    /// Reads `path` if it exists, then audits a sample; a failed audit is an error.
    pub fn load(path: &Path) -> Result<Self> {
        let mut c = CoeffCache { path: Some(path.to_path_buf()), records: BTreeMap::new() };
        if path.exists() {
            let text = fs::read_to_string(path)?;
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let r: CacheRecord = serde_json::from_str(line)?;
                c.records.insert((r.series.clone(), r.n), r);
            }
        }
        let audit = c.audit(AUDIT_SAMPLE)?;
        if !audit.passed() {
            return Err(Error::InvalidArgument(format!(
                "cache {} disagrees with recomputation at {:?}",
                path.display(),
                audit.mismatches
            )));
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, series: SeriesName, n: usize) -> Option<&CacheRecord> {
        self.records.get(&(series.tag().to_string(), n))
    }

    /// Coefficients 0..=m if all are cached.
    pub fn lookup(&self, series: SeriesName, m: usize) -> Option<Vec<String>> {
        (0..=m).map(|n| self.get(series, n).map(|r| r.coeff.clone())).collect()
    }

    pub fn insert_series(&mut self, series: SeriesName, coeffs: &[String]) {
        let order = coeffs.len().saturating_sub(1);
        for (n, c) in coeffs.iter().enumerate() {
            let key = (series.tag().to_string(), n);
            self.records.entry(key).or_insert_with(|| CacheRecord {
                series: series.tag().to_string(),
                n,
                coeff: c.clone(),
                order_computed: order,
            });
        }
    }

    /// Re-derives an evenly spaced sample of at most `sample` rows.
    pub fn audit(&self, sample: usize) -> Result<AuditReport> {
        let rows: Vec<&CacheRecord> = self.records.values().collect();
        if rows.is_empty() || sample == 0 {
            return Ok(AuditReport { sampled: 0, mismatches: Vec::new() });
        }
        let stride = rows.len().div_ceil(sample);
        let picked: Vec<&CacheRecord> = rows.iter().step_by(stride).copied().collect();
        let mut need: BTreeMap<String, usize> = BTreeMap::new();
        for r in &picked {
            let e = need.entry(r.series.clone()).or_insert(0);
            *e = (*e).max(r.n);
        }
        let mut fresh = BTreeMap::new();
        for (tag, m) in need {
            let name: SeriesName = tag.parse()?;
            fresh.insert(tag, named_series(name, m));
        }
        let mismatches = picked
            .iter()
            .filter(|r| fresh[&r.series].coeff(r.n).to_decimal() != r.coeff)
            .map(|r| (r.series.clone(), r.n))
            .collect();
        Ok(AuditReport { sampled: picked.len(), mismatches })
    }

    /// Writes every record to a temporary file next to the target, then renames it over.
    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let tmp = path.with_extension("jsonl.tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            for r in self.records.values() {
                writeln!(f, "{}", serde_json::to_string(r)?)?;
            }
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}
