//! Forgetting by A-ordering linear resolution.
//!
//! Starting from each input clause as center, the center is resolved on its
//! first forgotten variable (under the [`VarOrder`]) against every side
//! clause holding the complementary literal, and each resolvent becomes the
//! next center. Side clauses are the input clauses and the earlier centers
//! of the same branch. A branch stops as soon as its center mentions no
//! forgotten variable; that center is part of the result.
//!
//! A center already present on the current branch is not expanded again.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::index::ClauseIndex;
use crate::logic::{Clause, Formula, Literal, Resolvent, VarSet};
use crate::meter::{Deadline, Event, Meter};
use crate::order::VarOrder;

/// Side clauses together with what is needed to look them up.
struct Sides {
    index: ClauseIndex,
    literal_count: u64,
}

impl Sides {
    fn new(side: &Formula) -> Sides {
        let index: ClauseIndex = side.without_tautologies().into_iter().collect();
        Sides {
            literal_count: index.literal_count() as u64,
            index,
        }
    }
}

struct Frame {
    center: Clause,
    pivot: Literal,
    partners: Vec<Clause>,
    next: usize,
}

/// All clauses free of forgotten variables reachable from `center` by linear
/// resolution against `side` and the branch's earlier centers. `line` holds
/// the centers already on the branch leading here (they serve as side
/// clauses too) and is restored before returning.
pub fn forget_linear_clause(
    center: &Clause,
    side: &Formula,
    forget: &VarSet,
    order: &VarOrder,
    line: &mut Vec<Clause>,
    meter: &mut Meter,
    deadline: Deadline,
) -> Result<Formula> {
    let sides = Sides::new(side);
    let mut out = BTreeSet::new();
    let mut out_cells = 0;
    let mut on_line: HashSet<Clause> = line.iter().cloned().collect();
    let depth = line.len();
    let result = expand(
        center.clone(),
        &sides,
        forget,
        order,
        line,
        &mut on_line,
        &mut out,
        &mut out_cells,
        meter,
        deadline,
    );
    line.truncate(depth);
    result?;
    Ok(out.into_iter().collect())
}

pub fn forget_linear(
    formula: &Formula,
    forget: &VarSet,
    order: &VarOrder,
    meter: &mut Meter,
    deadline: Deadline,
) -> Result<Formula> {
    let sides = Sides::new(formula);
    let mut out = BTreeSet::new();
    let mut out_cells = 0;
    let mut line = Vec::new();
    let mut on_line = HashSet::new();
    let centers: Vec<Clause> = sides.index.iter().map(|(_, c)| c.clone()).collect();
    for center in centers {
        expand(
            center,
            &sides,
            forget,
            order,
            &mut line,
            &mut on_line,
            &mut out,
            &mut out_cells,
            meter,
            deadline,
        )?;
        debug_assert!(line.is_empty());
    }
    Ok(out.into_iter().collect())
}

#[allow(clippy::too_many_arguments)]
fn expand(
    root: Clause,
    sides: &Sides,
    forget: &VarSet,
    order: &VarOrder,
    line: &mut Vec<Clause>,
    on_line: &mut HashSet<Clause>,
    out: &mut BTreeSet<Clause>,
    out_cells: &mut u64,
    meter: &mut Meter,
    deadline: Deadline,
) -> Result<()> {
    // explicit stack: lines can get far longer than the variable count
    let mut stack: Vec<Frame> = Vec::new();
    let mut line_cells: u64 = line.iter().map(|c| c.len() as u64).sum();
    let mut pending = Some(root);
    loop {
        if let Some(center) = pending.take() {
            meter.snapshot_memory(sides.literal_count + line_cells + *out_cells + center.len() as u64);
            let pivot_var = order.first(center.variables().filter(|v| forget.contains(v)));
            match pivot_var {
                None => {
                    if !out.contains(&center) {
                        *out_cells += center.len() as u64;
                        out.insert(center);
                    }
                }
                Some(_) if on_line.contains(&center) => {}
                Some(x) => {
                    let pivot = center.literal_of(x).expect("pivot occurs in center");
                    let mut partners: Vec<Clause> = sides
                        .index
                        .occurrences(pivot.negate())
                        .map(|(_, d)| d.clone())
                        .collect();
                    partners.extend(
                        line.iter()
                            .filter(|d| d.contains(pivot.negate()) && !sides.index.contains(d))
                            .cloned(),
                    );
                    line_cells += center.len() as u64;
                    on_line.insert(center.clone());
                    line.push(center.clone());
                    stack.push(Frame {
                        center,
                        pivot,
                        partners,
                        next: 0,
                    });
                }
            }
        }
        let Some(frame) = stack.last_mut() else {
            return Ok(());
        };
        if frame.next == frame.partners.len() {
            let done = stack.pop().expect("non-empty stack");
            line.pop();
            on_line.remove(&done.center);
            line_cells -= done.center.len() as u64;
            continue;
        }
        frame.next += 1;
        let partner = &frame.partners[frame.next - 1];
        deadline.check(meter)?;
        let x = frame.pivot.var();
        if !forget.contains(&x) {
            return Err(Error::Contract(format!("linear step on remembered variable {x}")));
        }
        meter.tick(1);
        meter.record(|| Event::Resolved { pivot: x });
        if let Resolvent::Clause(r) = frame.center.resolve(partner, x)? {
            pending = Some(r);
        }
    }
}
