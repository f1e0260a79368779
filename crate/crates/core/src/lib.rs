//! Propositional forgetting.
//!
//! Four ways to remove variables from a CNF formula while keeping every
//! consequence over the remaining ones:
//!
//! - [`forget_close`]: resolution closure with subsumption, then selection;
//! - [`forget_eliminate`]: variable elimination by resolution;
//! - [`forget_linear`]: A-ordering linear resolution on forgotten variables;
//! - [`forget_backtracking`]: search that emits clauses where a branch on a
//!   remembered variable fails.
//!
//! [`oracle`] holds the brute-force reference used to check them, [`io`] the
//! text syntax and output format, [`meter`] the idealized cost accounting.

pub mod algorithm;
pub mod backtrack;
pub mod close;
pub mod eliminate;
pub mod error;
pub mod index;
pub mod io;
pub mod linear;
pub mod logic;
pub mod meter;
pub mod oracle;
pub mod order;
pub mod randgen;

pub use algorithm::{Algorithm, ForgetOptions, UnknownAlgorithm};
pub use backtrack::{forget_backtrack, forget_backtracking, propagate, SearchOutcome, Verdict};
pub use close::forget_close;
pub use eliminate::{forget_eliminate, EliminateOptions};
pub use error::{Error, Result};
pub use io::{emit_trace, parse_formula, parse_variables, serialize_formula, ParseError, TraceLine};
pub use linear::{forget_linear, forget_linear_clause};
pub use logic::{minimize, Clause, Formula, Literal, PartialModel, Resolvent, Var, VarSet};
pub use meter::{Deadline, Event, Meter, Stats};
pub use oracle::{equivalent, oracle_forget, FORGET_GUARD, ORACLE_GUARD};
pub use order::VarOrder;
pub use randgen::{generate, GENERATOR_ID, MAX_VARS, MIN_VARS};
