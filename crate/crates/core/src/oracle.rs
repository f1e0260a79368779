//! Brute-force reference semantics, used to check the real algorithms.
//!
//! Forgetting is computed by trying every assignment of the remembered
//! variables: each one inconsistent with the formula contributes the clause
//! it falsifies. Exponential in every case, never a contender.

use crate::error::{Error, Result};
use crate::logic::{Clause, Formula, Literal, Var, VarSet};

/// Largest number of remembered variables [`oracle_forget`] enumerates, and
/// of variables [`equivalent`] enumerates.
pub const ORACLE_GUARD: usize = 20;

/// Largest number of forgotten variables enumerated per remembered assignment.
pub const FORGET_GUARD: usize = 24;

/// A clause as bit masks over dense variable positions.
#[derive(Clone, Copy)]
struct Masks {
    pos: u64,
    neg: u64,
}

impl Masks {
    fn of(clause: &Clause, position: impl Fn(Var) -> u32) -> Masks {
        let mut m = Masks { pos: 0, neg: 0 };
        for &lit in clause.literals() {
            let bit = 1u64 << position(lit.var());
            if lit.is_positive() {
                m.pos |= bit;
            } else {
                m.neg |= bit;
            }
        }
        m
    }

    fn satisfied_by(self, bits: u64) -> bool {
        self.pos & bits != 0 || self.neg & !bits != 0
    }
}

fn guard(vars: usize, limit: usize) -> Result<()> {
    if vars > limit {
        return Err(Error::GuardExceeded { vars, limit });
    }
    Ok(())
}

/// Forgets `forget` from `formula` by enumeration. Every emitted clause
/// mentions all remembered variables; no minimization is applied.
pub fn oracle_forget(formula: &Formula, forget: &VarSet) -> Result<Formula> {
    let alphabet = formula.alphabet();
    let remembered: Vec<Var> = alphabet.iter().copied().filter(|v| !forget.contains(v)).collect();
    let forgotten: Vec<Var> = alphabet.iter().copied().filter(|v| forget.contains(v)).collect();
    guard(remembered.len(), ORACLE_GUARD)?;
    guard(forgotten.len(), FORGET_GUARD)?;
    let (r, k) = (remembered.len() as u32, forgotten.len() as u32);
    let position = |v: Var| match remembered.binary_search(&v) {
        Ok(i) => i as u32,
        Err(_) => r + forgotten.binary_search(&v).expect("variable of the alphabet") as u32,
    };
    let clauses: Vec<Masks> = formula.clauses().map(|c| Masks::of(c, position)).collect();
    let low = (1u64 << r) - 1;
    let mut out = Formula::new();
    let mut residual: Vec<Masks> = Vec::with_capacity(clauses.len());
    for assignment in 0..1u64 << r {
        // forgotten part of the clauses the remembered part leaves open
        residual.clear();
        residual.extend(
            clauses
                .iter()
                .filter(|m| (m.pos & assignment) == 0 && (m.neg & low & !assignment) == 0)
                .map(|m| Masks {
                    pos: m.pos >> r,
                    neg: m.neg >> r,
                }),
        );
        let consistent = (0..1u64 << k).any(|rest| residual.iter().all(|m| m.satisfied_by(rest)));
        if !consistent {
            out.insert(
                remembered
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| Literal::new(v, assignment >> i & 1 == 0))
                    .collect(),
            );
        }
    }
    Ok(out)
}

/// Whether `f` and `g` agree on every assignment of `vars`.
pub fn equivalent(f: &Formula, g: &Formula, vars: &VarSet) -> Result<bool> {
    guard(vars.len(), ORACLE_GUARD)?;
    for formula in [f, g] {
        if let Some(v) = formula.alphabet().into_iter().find(|v| !vars.contains(v)) {
            return Err(Error::Contract(format!(
                "formula mentions {v}, which is outside the compared variables"
            )));
        }
    }
    let vars: Vec<Var> = vars.iter().copied().collect();
    let position = |v: Var| vars.binary_search(&v).expect("checked above") as u32;
    let fm: Vec<Masks> = f.clauses().map(|c| Masks::of(c, position)).collect();
    let gm: Vec<Masks> = g.clauses().map(|c| Masks::of(c, position)).collect();
    let eval = |ms: &[Masks], bits: u64| ms.iter().all(|m| m.satisfied_by(bits));
    Ok((0..1u64 << vars.len()).all(|bits| eval(&fm, bits) == eval(&gm, bits)))
}
