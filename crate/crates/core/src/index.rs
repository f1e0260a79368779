//! Literal-occurrence index over a clause arena.

use std::collections::HashMap;

use crate::logic::{Clause, Literal};

/// Stable handle of a clause stored in a [`ClauseIndex`].
pub type ClauseId = usize;

/// Clause store answering "which live clauses contain literal `l`".
///
/// Removal only marks the slot dead; occurrence lists are filtered on
/// read and compacted lazily. Lists are in insertion order, so iteration
/// is deterministic.
#[derive(Debug, Default, Clone)]
pub struct ClauseIndex {
    slots: Vec<Option<Clause>>,
    by_literal: HashMap<Literal, Vec<ClauseId>>,
    ids: HashMap<Clause, ClauseId>,
    literal_count: usize,
}

impl ClauseIndex {
    pub fn new() -> ClauseIndex {
        ClauseIndex::default()
    }

    /// Adds `clause` unless an equal clause is already live.
    pub fn insert(&mut self, clause: Clause) -> Option<ClauseId> {
        if self.ids.contains_key(&clause) {
            return None;
        }
        let id = self.slots.len();
        for &lit in clause.literals() {
            self.by_literal.entry(lit).or_default().push(id);
        }
        self.literal_count += clause.len();
        self.ids.insert(clause.clone(), id);
        self.slots.push(Some(clause));
        Some(id)
    }

    pub fn remove(&mut self, id: ClauseId) -> Option<Clause> {
        let clause = self.slots.get_mut(id)?.take()?;
        self.ids.remove(&clause);
        self.literal_count -= clause.len();
        Some(clause)
    }

    pub fn get(&self, id: ClauseId) -> Option<&Clause> {
        self.slots.get(id)?.as_ref()
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.ids.contains_key(clause)
    }

    /// Live clauses containing `lit`, oldest first.
    pub fn occurrences(&self, lit: Literal) -> impl Iterator<Item = (ClauseId, &Clause)> + '_ {
        self.by_literal
            .get(&lit)
            .into_iter()
            .flatten()
            .filter_map(|&id| self.slots[id].as_ref().map(|c| (id, c)))
    }

    /// Ids of the live clauses containing `lit`, oldest first.
    pub fn occurrence_ids(&mut self, lit: Literal) -> Vec<ClauseId> {
        let slots = &self.slots;
        match self.by_literal.get_mut(&lit) {
            Some(list) => {
                list.retain(|&id| slots[id].is_some());
                list.clone()
            }
            None => Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Literal occurrences over all live clauses.
    pub fn literal_count(&self) -> usize {
        self.literal_count
    }

    pub fn iter(&self) -> impl Iterator<Item = (ClauseId, &Clause)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(id, c)| c.as_ref().map(|c| (id, c)))
    }
}

impl FromIterator<Clause> for ClauseIndex {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        let mut index = ClauseIndex::new();
        for c in iter {
            index.insert(c);
        }
        index
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::tests::clause;
    use crate::logic::Var;

    #[test]
    fn occurrences_skip_removed_clauses() {
        let mut idx: ClauseIndex = ["ab", "-bc", "b-c"].into_iter().map(clause).collect();
        let b = Var::from_char('b');
        let ids: Vec<_> = idx.occurrences(b.positive()).map(|(id, _)| id).collect();
        assert_eq!(ids, vec![0, 2]);
        assert_eq!(idx.remove(0), Some(clause("ab")));
        assert_eq!(idx.remove(0), None);
        assert_eq!(idx.occurrence_ids(b.positive()), vec![2]);
        assert_eq!(idx.len(), 2);
        assert_eq!(idx.literal_count(), 4);
    }

    #[test]
    fn duplicates_are_rejected_until_removed() {
        let mut idx = ClauseIndex::new();
        let id = idx.insert(clause("ab")).unwrap();
        assert_eq!(idx.insert(clause("ba")), None);
        idx.remove(id);
        assert!(idx.insert(clause("ab")).is_some());
        assert!(idx.contains(&clause("ab")));
    }
}
