use std::ops::RangeInclusive;
use std::time::Duration;

use forget_core::{generate, Algorithm, Formula, Var, VarSet, MAX_VARS, MIN_VARS};

/// The experiment grid. For every variable count `v`, every forget count
/// `0..=v` and every clause multiplier `m`, `reps` formulas with `m * v`
/// clauses are generated and handed to each algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub vars: RangeInclusive<usize>,
    pub multipliers: RangeInclusive<usize>,
    pub reps: usize,
    pub timeout: Duration,
    pub algorithms: Vec<Algorithm>,
    pub base_seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            vars: 3..=10,
            multipliers: 1..=5,
            reps: 10,
            timeout: Duration::from_secs(10),
            algorithms: Algorithm::ALL.to_vec(),
            base_seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvalidGrid {
    #[error("empty {0} range")]
    EmptyRange(&'static str),
    #[error("variable counts must lie in {MIN_VARS}..={MAX_VARS}")]
    VarsOutOfRange,
    #[error("no repetitions")]
    NoReps,
    #[error("timeout must be positive")]
    ZeroTimeout,
    #[error("no algorithms selected")]
    NoAlgorithms,
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), InvalidGrid> {
        if self.vars.is_empty() {
            return Err(InvalidGrid::EmptyRange("variable"));
        }
        if self.multipliers.is_empty() || *self.multipliers.start() == 0 {
            return Err(InvalidGrid::EmptyRange("clause multiplier"));
        }
        if *self.vars.start() < MIN_VARS || *self.vars.end() > MAX_VARS {
            return Err(InvalidGrid::VarsOutOfRange);
        }
        if self.reps == 0 {
            return Err(InvalidGrid::NoReps);
        }
        if self.timeout.is_zero() {
            return Err(InvalidGrid::ZeroTimeout);
        }
        if self.algorithms.is_empty() {
            return Err(InvalidGrid::NoAlgorithms);
        }
        Ok(())
    }

    /// Grid points in order of variables, forget count, multiplier, rep.
    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        self.vars.clone().flat_map(move |vars| {
            (0..=vars).flat_map(move |forget| {
                self.multipliers.clone().flat_map(move |mult| {
                    (0..self.reps).map(move |rep| GridPoint {
                        vars,
                        forget,
                        clauses: mult * vars,
                        rep,
                        seed: derive_seed(self.base_seed, vars, forget, mult, rep),
                    })
                })
            })
        })
    }

    /// Number of algorithm runs, i.e. records, the grid produces.
    pub fn run_count(&self) -> usize {
        let per_vars: usize = self.vars.clone().map(|v| v + 1).sum();
        per_vars * self.multipliers.clone().count() * self.reps * self.algorithms.len()
    }
}

/// One formula of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridPoint {
    pub vars: usize,
    /// How many variables are forgotten: always the first ones, `a`, `b`, ...
    pub forget: usize,
    /// Clauses drawn; duplicates collapse, so the formula may hold fewer.
    pub clauses: usize,
    pub rep: usize,
    pub seed: u64,
}

impl GridPoint {
    pub fn formula(&self) -> Formula {
        generate(self.vars, self.clauses, self.seed)
    }

    pub fn forget_set(&self) -> VarSet {
        (0..self.forget).map(Var::letter).collect()
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the formula at the given coordinates: each coordinate is folded
/// in through a splitmix64 step, so neighbouring points get unrelated seeds.
pub fn derive_seed(base: u64, vars: usize, forget: usize, mult: usize, rep: usize) -> u64 {
    [vars, forget, mult, rep]
        .into_iter()
        .fold(splitmix(base), |acc, c| splitmix(acc ^ c as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(derive_seed(1, 3, 0, 1, 0), derive_seed(1, 3, 0, 1, 0));
        let spec = GridSpec {
            vars: 3..=5,
            reps: 3,
            ..GridSpec::default()
        };
        let mut seeds: Vec<u64> = spec.points().map(|p| p.seed).collect();
        let n = seeds.len();
        seeds.sort_unstable();
        seeds.dedup();
        assert_eq!(seeds.len(), n);
    }

    #[test]
    fn point_count_matches_run_count() {
        let spec = GridSpec {
            vars: 3..=4,
            multipliers: 1..=2,
            reps: 2,
            ..GridSpec::default()
        };
        // (4 + 5) forget counts * 2 multipliers * 2 reps
        assert_eq!(spec.points().count(), 36);
        assert_eq!(spec.run_count(), 36 * 4);
    }

    #[test]
    fn validation() {
        let ok = GridSpec::default();
        assert_eq!(ok.validate(), Ok(()));
        let bad = |f: fn(&mut GridSpec)| {
            let mut s = GridSpec::default();
            f(&mut s);
            s.validate().unwrap_err()
        };
        assert_eq!(bad(|s| s.reps = 0), InvalidGrid::NoReps);
        assert_eq!(bad(|s| s.timeout = Duration::ZERO), InvalidGrid::ZeroTimeout);
        assert_eq!(bad(|s| s.algorithms.clear()), InvalidGrid::NoAlgorithms);
        assert_eq!(bad(|s| s.vars = 2..=4), InvalidGrid::VarsOutOfRange);
        #[allow(clippy::reversed_empty_ranges)]
        let empty = bad(|s| s.vars = 5..=4);
        assert_eq!(empty, InvalidGrid::EmptyRange("variable"));
        assert_eq!(bad(|s| s.multipliers = 0..=2), InvalidGrid::EmptyRange("clause multiplier"));
    }

    #[test]
    fn forgets_the_first_letters() {
        let p = GridPoint {
            vars: 5,
            forget: 2,
            clauses: 5,
            rep: 0,
            seed: 1,
        };
        let names: String = p.forget_set().iter().map(|v| v.to_string()).collect();
        assert_eq!(names, "ab");
        assert!(p.formula().alphabet().len() <= 5);
    }
}
