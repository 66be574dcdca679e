use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cnf::{Assignment, CnfFormula};

use super::wrapper::{guessing_wrapper, Attempt};
use super::{CombSolver, Counters, PpszSolver, SchoeningWalker, SolverError, WrapperConfig};

/// Inner-call cap for one wrapper repetition.
const WRAPPER_CALLS_PER_REPETITION: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "algorithm")]
pub enum Algorithm {
    Ppsz,
    Schoening,
    Comb,
    Wrapper(WrapperConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverBudget {
    pub max_repetitions: u64,
    pub time_limit: Option<Duration>,
    pub seed: u64,
    /// Worker threads; 0 uses rayon's default.
    pub jobs: usize,
}

impl SolverBudget {
    pub fn new(max_repetitions: u64, seed: u64) -> Result<SolverBudget, SolverError> {
        if max_repetitions == 0 {
            return Err(SolverError::InvalidParameter("at least one repetition is required".into()));
        }
        Ok(SolverBudget {
            max_repetitions,
            time_limit: None,
            seed,
            jobs: 1,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Satisfiable,
    /// The budget ran out. Never a claim of unsatisfiability.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub outcome: Outcome,
    #[serde(serialize_with = "model_bits")]
    pub model: Option<Assignment>,
    pub repetitions: u64,
    pub forced: u64,
    pub guessed: u64,
    pub flips: u64,
    pub seed: u64,
}

fn model_bits<S: Serializer>(model: &Option<Assignment>, s: S) -> Result<S::Ok, S::Error> {
    match model {
        Some(m) => s.serialize_some(&m.to_bits()),
        None => s.serialize_none(),
    }
}

/// RNG for repetition `index`: the seed selects the key, the index the
/// stream, so repetitions are independent and reproducible in any order.
pub fn repetition_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

enum Prepared {
    Ppsz(PpszSolver),
    Schoening(SchoeningWalker),
    Comb(CombSolver),
    Wrapper(WrapperConfig, CnfFormula),
}

impl Prepared {
    fn new(f: &CnfFormula, algo: Algorithm) -> Prepared {
        match algo {
            Algorithm::Ppsz => Prepared::Ppsz(PpszSolver::new(f)),
            Algorithm::Schoening => Prepared::Schoening(SchoeningWalker::new(f)),
            Algorithm::Comb => Prepared::Comb(CombSolver::new(f)),
            Algorithm::Wrapper(c) => Prepared::Wrapper(c, f.clone()),
        }
    }

    fn attempt(&self, rng: &mut ChaCha8Rng) -> Attempt {
        match self {
            Prepared::Ppsz(s) => Attempt::from_pass(&s.run(rng)),
            Prepared::Schoening(w) => {
                let beta = super::ppsz::random_assignment(w.formula().num_vars(), rng);
                Attempt::from_walk(&w.walk(&beta, rng))
            }
            Prepared::Comb(c) => Attempt::from_comb(&c.run(rng)),
            Prepared::Wrapper(config, f) => {
                let t = guessing_wrapper(f, config, &config.inner, rng, WRAPPER_CALLS_PER_REPETITION);
                Attempt {
                    model: t.model,
                    counters: t.counters,
                }
            }
        }
    }
}

/// Independent repetitions of `algo` until one returns a verified model.
///
/// Repetitions run in batches, in parallel when `jobs != 1`. The report is
/// that of the lowest-indexed successful repetition, with counters summed
/// over all repetitions up to it, so results do not depend on scheduling.
pub fn solve_repeated(
    f: &CnfFormula,
    algo: Algorithm,
    budget: &SolverBudget,
) -> Result<RunReport, SolverError> {
    if budget.max_repetitions == 0 {
        return Err(SolverError::InvalidParameter("at least one repetition is required".into()));
    }
    let prepared = Prepared::new(f, algo);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(budget.jobs)
        .build()
        .map_err(|e| SolverError::InvalidParameter(e.to_string()))?;
    let start = Instant::now();
    let mut counters = Counters::default();
    let mut next = 0u64;
    let mut batch = if budget.jobs == 1 { 1 } else { 64 };
    while next < budget.max_repetitions {
        if budget.time_limit.is_some_and(|t| start.elapsed() >= t) {
            break;
        }
        let end = next.saturating_add(batch).min(budget.max_repetitions);
        let run = |i: u64| prepared.attempt(&mut repetition_rng(budget.seed, i));
        let attempts: Vec<Attempt> = if budget.jobs == 1 {
            (next..end).map(run).collect()
        } else {
            pool.install(|| (next..end).into_par_iter().map(run).collect())
        };
        for (offset, attempt) in attempts.into_iter().enumerate() {
            counters.merge(&attempt.counters);
            if let Some(model) = attempt.model {
                // Never report a model that was not re-verified here.
                if f.is_satisfied_by(&model) {
                    return Ok(report(Outcome::Satisfiable, Some(model), next + offset as u64 + 1, counters, budget.seed));
                }
            }
        }
        next = end;
        batch = (batch * 2).min(1 << 16);
    }
    Ok(report(Outcome::Exhausted, None, next, counters, budget.seed))
}

fn report(outcome: Outcome, model: Option<Assignment>, repetitions: u64, c: Counters, seed: u64) -> RunReport {
    RunReport {
        outcome,
        model,
        repetitions,
        forced: c.forced,
        guessed: c.guessed,
        flips: c.flips,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradiction_exhausts() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1], &[-1]]);
        for algo in [Algorithm::Ppsz, Algorithm::Schoening, Algorithm::Comb, Algorithm::Wrapper(WrapperConfig::default())] {
            let r = solve_repeated(&f, algo, &SolverBudget::new(50, 3).unwrap()).unwrap();
            assert_eq!(r.outcome, Outcome::Exhausted);
            assert_eq!(r.model, None);
            assert_eq!(r.repetitions, 50);
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let f = crate::oracle::planted_unique_kcnf(12, 3, 4).unwrap();
        let mut budget = SolverBudget::new(100_000, 17).unwrap();
        let seq = solve_repeated(&f, Algorithm::Ppsz, &budget).unwrap();
        budget.jobs = 4;
        let par = solve_repeated(&f, Algorithm::Ppsz, &budget).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.outcome, Outcome::Satisfiable);
    }

    #[test]
    fn json_has_flat_fields() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1]]);
        let r = solve_repeated(&f, Algorithm::Comb, &SolverBudget::new(1, 0).unwrap()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["outcome"], "satisfiable");
        assert_eq!(json["model"], "1");
        assert_eq!(json["repetitions"], 1);
        assert_eq!(json["forced"], 1);
    }

    #[test]
    fn zero_budget_is_rejected() {
        assert!(SolverBudget::new(0, 1).is_err());
    }
}
