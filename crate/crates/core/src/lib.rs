//! Randomized k-SAT algorithms in the PPSZ family, brute-force oracles to
//! check them against, and the numerics behind their exponential bounds.
//!
//! * [`cnf`] and [`dimacs`]: formulas and their text format.
//! * [`resolution`]: `s`-bounded resolution closure.
//! * [`oracle`]: satisfying-assignment enumeration, DPLL, critical variables,
//!   subcube partitions and exact success probabilities on tiny instances.
//! * [`solvers`]: PPSZ, Schöning's walk, their combination, the
//!   critical-variable guessing wrapper and a repetition driver.
//! * [`cct`]: critical clause trees, cuts and cut probabilities.
//! * [`bounds`]: `R_k`, distribution curves, the entropy/forcing integrals and
//!   the worst-case balance behind every bound constant.

pub mod bounds;
pub mod cct;
pub mod cnf;
pub mod dimacs;
pub mod oracle;
pub mod resolution;
pub mod solvers;
