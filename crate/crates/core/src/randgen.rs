//! Seeded random 3-CNF.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::{Clause, Formula, Literal, Var};

/// Identifies the sampling procedure, so stored seeds stay re-derivable.
pub const GENERATOR_ID: &str = "chacha8/rand-0.9/3cnf-distinct-v1";

pub const MIN_VARS: usize = 3;
pub const MAX_VARS: usize = 26;

/// `num_clauses` draws of a clause over 3 distinct variables among the first
/// `num_vars` letters, each polarity uniform. Equal draws collapse, so the
/// formula may hold fewer clauses than were drawn.
pub fn generate(num_vars: usize, num_clauses: usize, seed: u64) -> Formula {
    assert!(
        (MIN_VARS..=MAX_VARS).contains(&num_vars),
        "random 3-CNF needs {MIN_VARS} to {MAX_VARS} variables, got {num_vars}"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..num_clauses)
        .map(|_| {
            let vars = index::sample(&mut rng, num_vars, 3);
            let lits: Vec<Literal> = vars
                .into_iter()
                .map(|i| Literal::new(Var::letter(i), rng.random_bool(0.5)))
                .collect();
            Clause::new(lits)
        })
        .collect()
}
