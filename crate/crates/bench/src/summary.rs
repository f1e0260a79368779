use std::collections::BTreeMap;

use crate::record::BenchRecord;

/// Forget-fraction buckets: 0.0, 0.1, ..., 1.0.
pub const BUCKETS: usize = 11;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub timeouts: usize,
    pub total: usize,
}

impl Tally {
    fn add(&mut self, timed_out: bool) {
        self.total += 1;
        self.timeouts += usize::from(timed_out);
    }

    /// Timeouts as a percentage of runs; 0 for no runs.
    pub fn percent(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            100.0 * self.timeouts as f64 / self.total as f64
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TimeoutSummary {
    pub by_vars: BTreeMap<usize, Tally>,
    /// Index `i` covers fractions in `[i/10 - 0.05, i/10 + 0.05)`.
    pub by_fraction: [Tally; BUCKETS],
}

/// Bucket of `forget / vars`, rounding halves up. Computed on integers so
/// that 0.45 lands in bucket 5 and not, through float error, in bucket 4.
pub fn fraction_bucket(forget: usize, vars: usize) -> usize {
    assert!(vars > 0 && forget <= vars, "fraction {forget}/{vars}");
    (20 * forget + vars) / (2 * vars)
}

/// Timeout counts of the given records; filter by algorithm beforehand.
pub fn summarize_timeouts<'a>(records: impl IntoIterator<Item = &'a BenchRecord>) -> TimeoutSummary {
    let mut s = TimeoutSummary::default();
    for r in records {
        s.by_vars.entry(r.vars).or_default().add(r.timed_out);
        s.by_fraction[fraction_bucket(r.forget_vars, r.vars)].add(r.timed_out);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_open_buckets() {
        assert_eq!(fraction_bucket(0, 7), 0);
        assert_eq!(fraction_bucket(4, 8), 5);
        assert_eq!(fraction_bucket(9, 20), 5); // 0.45 included
        assert_eq!(fraction_bucket(11, 20), 6); // 0.55 excluded
        assert_eq!(fraction_bucket(1, 3), 3);
        assert_eq!(fraction_bucket(2, 3), 7);
        assert_eq!(fraction_bucket(10, 10), 10);
    }

    #[test]
    fn empty_percentage_is_zero() {
        assert_eq!(Tally::default().percent(), 0.0);
        let t = Tally { timeouts: 1, total: 4 };
        assert_eq!(t.percent(), 25.0);
    }
}
