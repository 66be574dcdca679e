//! Brute-force ground truth for small instances.
//!
//! Everything here is exact: enumeration of `sat(F)`, a complete DPLL search,
//! critical variables, the subcube partition of `{0,1}^V` induced by a set of
//! assignments, and exact success probabilities of the randomized solvers.

mod critical;
mod dpll;
mod enumerate;
mod exact;
mod instances;
mod subcube;

pub use critical::{critical_variables, guess_preservation_rate, CriticalReport, GuessPreservation};
pub use dpll::{dpll_solve, dpll_solve_with_budget, DpllVerdict, DEFAULT_DPLL_BUDGET};
pub use enumerate::{
    count_satisfying, enumerate_satisfying, enumerate_satisfying_with_limit, SatSet,
    DEFAULT_ENUMERATION_LIMIT,
};
pub use exact::{exact_forced_fraction, exact_success_ppsz, exact_success_ppsz_with, exact_success_schoening, EXACT_FORCED_LIMIT, EXACT_PPSZ_LIMIT, EXACT_SCHOENING_LIMIT};
pub use instances::{pigeonhole, planted_unique_kcnf, random_satisfiable_kcnf};
pub use subcube::{subcube_partition, subcube_partition_ascending, SubcubeBlock, SubcubePartition};

use thiserror::Error;

use crate::cnf::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{num_vars} variables exceed the enumeration limit of {limit}")]
    TooManyVariables { num_vars: u32, limit: u32 },
    #[error("formula is unsatisfiable")]
    Unsatisfiable,
    #[error("search budget of {0} nodes exhausted before a verdict")]
    Indeterminate(u64),
    #[error("cannot partition an empty assignment set")]
    EmptySet,
    #[error("variable order must be a permutation of 1..={0}")]
    InvalidOrder(u32),
    #[error("subcube partition invariant violated: {0}")]
    PartitionViolation(String),
    #[error("assignment does not satisfy the formula")]
    NotSatisfying,
    #[error("no instance found after {attempts} attempts")]
    GenerationFailed { attempts: u32 },
    #[error("formula has no occurring variables")]
    NoVariables,
    #[error("{0} does not occur in the formula")]
    NotOccurring(Var),
}
