//! Forgetting by variable elimination (directional resolution).

use crate::error::Result;
use crate::index::ClauseIndex;
use crate::logic::{minimize, Formula, Resolvent, VarSet};
use crate::meter::{Deadline, Event, Meter};
use crate::order::VarOrder;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EliminateOptions {
    pub order: VarOrder,
    /// Subsumption-minimize after each eliminated variable. Off by default.
    pub minimize: bool,
}

/// Eliminates each variable of `forget` in turn: the clauses containing it
/// are replaced by all their non-tautological resolvents on it.
///
/// Only pairs that actually resolve are charged, one unit each.
pub fn forget_eliminate(
    formula: &Formula,
    forget: &VarSet,
    options: &EliminateOptions,
    meter: &mut Meter,
    deadline: Deadline,
) -> Result<Formula> {
    let mut db: ClauseIndex = formula.without_tautologies().into_iter().collect();
    meter.snapshot_memory(db.literal_count() as u64);
    for x in options.order.sorted(forget.iter().copied()) {
        deadline.check(meter)?;
        let positive = db.occurrence_ids(x.positive());
        let negative = db.occurrence_ids(x.negative());
        let positive: Vec<_> = positive.into_iter().filter_map(|id| db.remove(id)).collect();
        let negative: Vec<_> = negative.into_iter().filter_map(|id| db.remove(id)).collect();
        for c in &positive {
            for d in &negative {
                deadline.check(meter)?;
                meter.tick(1);
                meter.record(|| Event::Resolved { pivot: x });
                if let Resolvent::Clause(r) = c.resolve(d, x)? {
                    db.insert(r);
                }
            }
        }
        if options.minimize {
            let kept = minimize(db.iter().map(|(_, c)| c.clone()), meter);
            db = kept.into_iter().collect();
        }
        meter.snapshot_memory(db.literal_count() as u64);
        meter.record(|| Event::Eliminated {
            var: x,
            clauses: db.len(),
        });
    }
    Ok(db.iter().map(|(_, c)| c.clone()).collect())
}
