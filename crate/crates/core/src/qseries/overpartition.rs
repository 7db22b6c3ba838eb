//! Brute-force enumeration of lower 1-run overpartitions.
//!
//! An overpartition may overline the final occurrence of each part size.
//! It is lower 1-run when every overlined size m is an isolated overlined
//! run (neither m−1 nor m+1 overlined) and there is no part of size m−1.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Default largest n accepted by [`enumerate_p1bar`].
pub const DEFAULT_CEILING: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overpartition {
    /// Parts in non-increasing order.
    pub parts: Vec<usize>,
    /// Part sizes whose final occurrence is overlined.
    pub overlined: BTreeSet<usize>,
}

impl Overpartition {
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    fn has_part(&self, m: usize) -> bool {
        self.parts.contains(&m)
    }

    /// Structural soundness: every overlined size actually occurs.
    pub fn is_overpartition(&self) -> bool {
        self.overlined.iter().all(|&m| self.has_part(m))
            && self.parts.windows(2).all(|w| w[0] >= w[1])
            && self.parts.iter().all(|&p| p > 0)
    }

    /// The lower 1-run predicate.
    pub fn is_lower_one_run(&self) -> bool {
        if !self.is_overpartition() {
            return false;
        }
        self.overlined.iter().all(|&m| {
            let isolated = !self.overlined.contains(&(m + 1)) && (m == 1 || !self.overlined.contains(&(m - 1)));
            let gap = m == 1 || !self.has_part(m - 1);
            isolated && gap
        })
    }
}

fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if n == 0 {
        out(cur);
        return;
    }
    for p in (1..=max.min(n)).rev() {
        cur.push(p);
        partitions(n - p, p, cur, out);
        cur.pop();
    }
}

/// Visits every lower 1-run overpartition of n.
pub fn for_each_p1bar(n: usize, mut visit: impl FnMut(&Overpartition)) {
    let mut cur = Vec::new();
    partitions(n, n, &mut cur, &mut |parts| {
        let sizes: Vec<usize> = {
            let mut s: Vec<usize> = parts.to_vec();
            s.dedup();
            s
        };
        let k = sizes.len();
        for mask in 0u64..(1u64 << k) {
            let overlined: BTreeSet<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| sizes[i]).collect();
            let op = Overpartition { parts: parts.to_vec(), overlined };
            if op.is_lower_one_run() {
                visit(&op);
            }
        }
    });
}

/// Exhaustive count p̄₁(n), with the default ceiling.
pub fn enumerate_p1bar(n: usize) -> Result<u64> {
    enumerate_p1bar_with_ceiling(n, DEFAULT_CEILING)
}

pub fn enumerate_p1bar_with_ceiling(n: usize, ceiling: usize) -> Result<u64> {
    if n > ceiling {
        return Err(Error::EnumerationCeiling { n, ceiling });
    }
    let mut count = 0u64;
    for_each_p1bar(n, |_| count += 1);
    Ok(count)
}
