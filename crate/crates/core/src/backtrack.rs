//! Forgetting by backtracking search.
//!
//! The search branches on remembered variables before forgotten ones, so
//! below the first forgotten branch a subtree only answers satisfiable or
//! unsatisfiable. Unit propagation is applied to forgotten variables only;
//! remembered variables in unit clauses are branched on next instead. A
//! clause is emitted at the highest node whose branch is unsatisfiable
//! while its sibling is not: the negation of that branch's assignment,
//! restricted to remembered variables.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{Clause, Formula, Literal, PartialModel, Var, VarSet};
use crate::meter::{Deadline, Event, Meter};

/// Result of unit propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every clause is satisfied.
    True,
    /// Some clause is falsified.
    False,
    Undef,
}

/// What a search node reports to its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Sat,
    Unsat,
    /// Forgetting result for this node; mentions remembered variables only.
    Clauses(Formula),
}

/// Simplifies `formula` under `model` and propagates unit clauses on
/// variables of `forget` until none is left.
pub fn propagate(
    model: &PartialModel,
    formula: &Formula,
    forget: &VarSet,
) -> (Verdict, PartialModel, Formula) {
    let mut model = model.clone();
    let clauses = formula.clauses().cloned().collect();
    let (verdict, clauses) = propagate_in(&mut model, clauses, forget, &mut Meter::new());
    (verdict, model, clauses.into_iter().collect())
}

fn simplify(clauses: Vec<Clause>, model: &PartialModel) -> Vec<Clause> {
    clauses
        .into_iter()
        .filter_map(|c| match c.value(model) {
            Some(true) => None,
            _ if c.literals().iter().all(|&l| model.value_of(l).is_none()) => Some(c),
            _ => Some(Clause::new(
                c.literals().iter().copied().filter(|&l| model.value_of(l).is_none()),
            )),
        })
        .collect()
}

fn propagate_in(
    model: &mut PartialModel,
    clauses: Vec<Clause>,
    forget: &VarSet,
    meter: &mut Meter,
) -> (Verdict, Vec<Clause>) {
    let mut clauses = simplify(clauses, model);
    loop {
        if clauses.iter().any(Clause::is_empty) {
            return (Verdict::False, clauses);
        }
        if clauses.is_empty() {
            return (Verdict::True, clauses);
        }
        let unit = clauses
            .iter()
            .filter(|c| c.len() == 1 && forget.contains(&c.literals()[0].var()))
            .map(|c| c.literals()[0])
            .min();
        let Some(lit) = unit else {
            return (Verdict::Undef, clauses);
        };
        meter.tick(1);
        model.assign(lit).expect("simplified clauses only hold unassigned variables");
        let step: PartialModel = [lit].into_iter().collect();
        clauses = simplify(clauses, &step);
    }
}

fn branch_variable(clauses: &[Clause], forget: &VarSet) -> Option<(Var, bool)> {
    let remembered_unit = clauses
        .iter()
        .filter(|c| c.len() == 1)
        .map(|c| c.literals()[0].var())
        .filter(|v| !forget.contains(v))
        .min();
    if let Some(v) = remembered_unit {
        return Some((v, false));
    }
    let vars: BTreeSet<Var> = clauses.iter().flat_map(Clause::variables).collect();
    if let Some(&v) = vars.iter().find(|v| !forget.contains(v)) {
        return Some((v, false));
    }
    vars.first().map(|&v| (v, true))
}

struct Search<'a> {
    forget: &'a VarSet,
    max_depth: usize,
    deadline: Deadline,
}

impl Search<'_> {
    fn node(
        &self,
        mut model: PartialModel,
        clauses: Vec<Clause>,
        depth: usize,
        stack_cells: u64,
        meter: &mut Meter,
    ) -> Result<SearchOutcome> {
        if depth > self.max_depth {
            return Err(Error::Contract(format!(
                "search depth {depth} exceeds the {} variables of the formula",
                self.max_depth
            )));
        }
        self.deadline.check(meter)?;
        meter.tick(1);
        meter.record(|| Event::Node { depth });
        let (verdict, clauses) = propagate_in(&mut model, clauses, self.forget, meter);
        let cells = stack_cells
            + clauses.iter().map(|c| c.len() as u64).sum::<u64>()
            + model.len() as u64;
        meter.snapshot_memory(cells);
        match verdict {
            Verdict::True => return Ok(SearchOutcome::Sat),
            Verdict::False => return Ok(SearchOutcome::Unsat),
            Verdict::Undef => {}
        }
        let (b, forgotten) = branch_variable(&clauses, self.forget).expect("undecided formula has variables");
        let mut children = [b.positive(), b.negative()].map(|lit| (lit, SearchOutcome::Unsat));
        for (lit, outcome) in &mut children {
            let child = model.with(*lit)?;
            *outcome = self.node(child, clauses.clone(), depth + 1, cells, meter)?;
        }
        let [(pos_lit, pos), (neg_lit, neg)] = children;
        use SearchOutcome::*;
        Ok(match (pos, neg) {
            (Unsat, Unsat) => Unsat,
            (pos, neg) if forgotten => match (pos, neg) {
                (Clauses(_), _) | (_, Clauses(_)) => {
                    return Err(Error::Contract(format!(
                        "clauses emitted below forgotten variable {b}"
                    )))
                }
                _ => Sat,
            },
            (Unsat, other) => Clauses(self.emit(&model, pos_lit, other)),
            (other, Unsat) => Clauses(self.emit(&model, neg_lit, other)),
            (pos, neg) => {
                let mut out = into_formula(pos);
                out.extend(into_formula(neg));
                Clauses(out)
            }
        })
    }

    /// `¬(model ∪ {failed})` on remembered variables, plus the sibling's clauses.
    fn emit(&self, model: &PartialModel, failed: Literal, sibling: SearchOutcome) -> Formula {
        let clause: Clause = model
            .literals()
            .chain([failed])
            .filter(|l| !self.forget.contains(&l.var()))
            .map(Literal::negate)
            .collect();
        let mut out = into_formula(sibling);
        out.insert(clause);
        out
    }
}

fn into_formula(outcome: SearchOutcome) -> Formula {
    match outcome {
        SearchOutcome::Clauses(f) => f,
        _ => Formula::new(),
    }
}

/// Searches from the partial model `model`.
pub fn forget_backtrack(
    model: &PartialModel,
    formula: &Formula,
    forget: &VarSet,
    meter: &mut Meter,
    deadline: Deadline,
) -> Result<SearchOutcome> {
    let clauses: Vec<Clause> = formula.without_tautologies().into_iter().collect();
    let mut vars = formula.alphabet();
    vars.extend(model.literals().map(Literal::var));
    let search = Search {
        forget,
        max_depth: vars.len(),
        deadline,
    };
    search.node(model.clone(), clauses, 0, 0, meter)
}

/// Forgets `forget` from `formula`: satisfiable becomes `{}`,
/// unsatisfiable `{⊥}`.
pub fn forget_backtracking(
    formula: &Formula,
    forget: &VarSet,
    meter: &mut Meter,
    deadline: Deadline,
) -> Result<Formula> {
    Ok(
        match forget_backtrack(&PartialModel::new(), formula, forget, meter, deadline)? {
            SearchOutcome::Sat => Formula::new(),
            SearchOutcome::Unsat => Formula::contradiction(),
            SearchOutcome::Clauses(f) => f,
        },
    )
}
