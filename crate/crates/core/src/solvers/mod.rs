//! The randomized algorithms: PPSZ passes over a resolution closure,
//! Schöning's random walk, their combination, the critical-variable guessing
//! wrapper and a seeded repetition driver.

mod comb;
mod driver;
mod placement;
mod ppsz;
mod schoening;
mod wrapper;

pub use comb::{CombSolver, CombTrace};
pub use driver::{repetition_rng, solve_repeated, Algorithm, Outcome, RunReport, SolverBudget};
pub use placement::Placement;
pub use ppsz::{PassTrace, PpszSolver};
pub use schoening::{SchoeningWalker, WalkTrace};
pub use wrapper::{
    guessing_wrapper, Attempt, InnerAlgorithm, InnerSolver, WrapperConfig, WrapperTrace,
    DEFAULT_CSTAR_K3, DEFAULT_TARGET_BASE_K3,
};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("assignment does not satisfy the formula")]
    NotSatisfying,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Per-phase work counters, summed over repetitions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub forced: u64,
    pub guessed: u64,
    pub flips: u64,
}

impl Counters {
    pub fn merge(&mut self, other: &Counters) {
        self.forced += other.forced;
        self.guessed += other.guessed;
        self.flips += other.flips;
    }
}
