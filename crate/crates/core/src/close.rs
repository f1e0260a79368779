//! Forgetting by resolution closure.
//!
//! Every round resolves all clashing pairs of the current set, adds the
//! non-tautological resolvents and subsumption-minimizes. At the fixpoint
//! the minimized closure holds every prime implicate of the input; the ones
//! free of forgotten variables are the result.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::index::ClauseIndex;
use crate::logic::{minimize, Clause, Formula, Resolvent, VarSet};
use crate::meter::{Deadline, Event, Meter};

pub fn forget_close(
    formula: &Formula,
    forget: &VarSet,
    meter: &mut Meter,
    deadline: Deadline,
) -> Result<Formula> {
    let mut current: BTreeSet<Clause> = formula.without_tautologies().into_clauses();
    // clauses that were not in the previous round's set
    let mut fresh: BTreeSet<Clause> = current.clone();
    let mut round = 0;
    loop {
        deadline.check(meter)?;
        let previous = current.clone();
        let index: ClauseIndex = previous.iter().cloned().collect();
        let mut grown = current.clone();
        let vars = previous.iter().flat_map(Clause::variables).collect::<BTreeSet<_>>();
        for x in vars {
            for (_, c) in index.occurrences(x.positive()) {
                for (_, d) in index.occurrences(x.negative()) {
                    // pairs of old clauses were resolved in an earlier round;
                    // their resolvents are already present or subsumed
                    if !fresh.contains(c) && !fresh.contains(d) {
                        continue;
                    }
                    deadline.check(meter)?;
                    meter.tick(1);
                    meter.record(|| Event::Resolved { pivot: x });
                    if let Resolvent::Clause(r) = c.resolve(d, x)? {
                        grown.insert(r);
                    }
                }
            }
        }
        current = minimize(grown, meter).into_clauses();
        round += 1;
        meter.snapshot_memory(current.iter().map(|c| c.len() as u64).sum());
        meter.record(|| Event::Round {
            index: round,
            clauses: current.len(),
        });
        if current == previous {
            break;
        }
        fresh = current.difference(&previous).cloned().collect();
    }
    Ok(current
        .into_iter()
        .filter(|c| !c.variables().any(|v| forget.contains(&v)))
        .collect())
}
