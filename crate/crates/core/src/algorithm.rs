use std::fmt;
use std::str::FromStr;

use crate::backtrack::forget_backtracking;
use crate::close::forget_close;
use crate::eliminate::{forget_eliminate, EliminateOptions};
use crate::error::Result;
use crate::linear::forget_linear;
use crate::logic::{Formula, VarSet};
use crate::meter::{Deadline, Meter};
use crate::order::VarOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Close,
    Eliminate,
    Linear,
    Backtrack,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Close,
        Algorithm::Eliminate,
        Algorithm::Linear,
        Algorithm::Backtrack,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Close => "close",
            Algorithm::Eliminate => "eliminate",
            Algorithm::Linear => "linear",
            Algorithm::Backtrack => "backtrack",
        }
    }

    /// Runs this algorithm. `options.order` drives elimination and the
    /// linear A-ordering; `options.minimize` only affects elimination.
    pub fn forget(
        self,
        formula: &Formula,
        forget: &VarSet,
        options: &ForgetOptions,
        meter: &mut Meter,
        deadline: Deadline,
    ) -> Result<Formula> {
        match self {
            Algorithm::Close => forget_close(formula, forget, meter, deadline),
            Algorithm::Eliminate => {
                let opts = EliminateOptions {
                    order: options.order.clone(),
                    minimize: options.minimize,
                };
                forget_eliminate(formula, forget, &opts, meter, deadline)
            }
            Algorithm::Linear => forget_linear(formula, forget, &options.order, meter, deadline),
            Algorithm::Backtrack => forget_backtracking(formula, forget, meter, deadline),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownAlgorithm(pub String);

impl fmt::Display for UnknownAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown algorithm `{}` (expected close, eliminate, linear or backtrack)",
            self.0
        )
    }
}

impl std::error::Error for UnknownAlgorithm {}

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAlgorithm(s.to_owned()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ForgetOptions {
    pub order: VarOrder,
    pub minimize: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("dpll".parse::<Algorithm>().is_err());
    }
}
