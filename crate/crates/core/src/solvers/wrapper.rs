use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cnf::{Assignment, CnfFormula, Lit};

use super::{CombSolver, Counters, PpszSolver, SchoeningWalker, SolverError};

/// Critical fraction the 3-SAT wrapper is tuned for.
pub const DEFAULT_CSTAR_K3: f64 = 0.48659459;
/// Success base targeted by the default 3-SAT configuration.
pub const DEFAULT_TARGET_BASE_K3: f64 = 1.0 / 1.32153;

/// One attempt of an inner solver on a (residual) formula.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Attempt {
    /// Present only if it satisfies the formula the attempt ran on.
    pub model: Option<Assignment>,
    pub counters: Counters,
}

/// A solver the wrapper can run on residual formulas.
pub trait InnerSolver: Sync {
    fn attempt(&self, formula: &CnfFormula, rng: &mut ChaCha8Rng) -> Attempt;
}

/// The built-in solvers, rebuilt for each residual formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerAlgorithm {
    Ppsz,
    Schoening,
    #[default]
    Comb,
}

impl InnerSolver for InnerAlgorithm {
    fn attempt(&self, formula: &CnfFormula, rng: &mut ChaCha8Rng) -> Attempt {
        match self {
            InnerAlgorithm::Ppsz => {
                let t = PpszSolver::new(formula).run(rng);
                Attempt::from_pass(&t)
            }
            InnerAlgorithm::Schoening => {
                let w = SchoeningWalker::new(formula);
                let beta = super::ppsz::random_assignment(formula.num_vars(), rng);
                Attempt::from_walk(&w.walk(&beta, rng))
            }
            InnerAlgorithm::Comb => Attempt::from_comb(&CombSolver::new(formula).run(rng)),
        }
    }
}

impl Attempt {
    pub(crate) fn from_pass(t: &super::PassTrace) -> Attempt {
        Attempt {
            model: t.satisfied.then(|| t.assignment.clone()),
            counters: Counters {
                forced: t.forced.len() as u64,
                guessed: t.guessed.len() as u64,
                flips: 0,
            },
        }
    }

    pub(crate) fn from_walk(t: &super::WalkTrace) -> Attempt {
        Attempt {
            model: t.satisfied.then(|| t.assignment.clone()),
            counters: Counters {
                flips: t.flips,
                ..Counters::default()
            },
        }
    }

    pub(crate) fn from_comb(t: &super::CombTrace) -> Attempt {
        let mut a = Attempt::from_pass(&t.ppsz);
        if let Some(w) = &t.walk {
            let walk = Attempt::from_walk(w);
            a.model = walk.model;
            a.counters.merge(&walk.counters);
        }
        a
    }
}

/// Parameters of the guessing wrapper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WrapperConfig {
    pub cstar: f64,
    /// Repetition base: stage `j` runs `⌈b^j⌉` times.
    pub b: f64,
    pub inner: InnerAlgorithm,
}

impl WrapperConfig {
    pub fn new(cstar: f64, b: f64, inner: InnerAlgorithm) -> Result<WrapperConfig, SolverError> {
        if !(0.0..=1.0).contains(&cstar) {
            return Err(SolverError::InvalidParameter(format!("c* = {cstar} must lie in [0,1]")));
        }
        if !b.is_finite() || b < 1.0 {
            return Err(SolverError::InvalidParameter(format!("b = {b} must be at least 1")));
        }
        Ok(WrapperConfig { cstar, b, inner })
    }

    /// Chooses `b` so that `b · (1 − c*/2)` equals `target`, clamped to 1.
    pub fn for_target(cstar: f64, target: f64, inner: InnerAlgorithm) -> Result<WrapperConfig, SolverError> {
        let r = 1.0 - cstar / 2.0;
        WrapperConfig::new(cstar, (target / r).max(1.0), inner)
    }

    /// `r = 1 − c*/2`, the chance a single guess keeps a formula with
    /// critical fraction `c*` satisfiable.
    pub fn r(&self) -> f64 {
        1.0 - self.cstar / 2.0
    }
}

impl Default for WrapperConfig {
    fn default() -> WrapperConfig {
        WrapperConfig::for_target(DEFAULT_CSTAR_K3, DEFAULT_TARGET_BASE_K3, InnerAlgorithm::Comb)
            .expect("valid defaults")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrapperTrace {
    pub model: Option<Assignment>,
    pub inner_calls: u64,
    pub counters: Counters,
    /// Number of guessed variables in the successful stage.
    pub guesses: Option<usize>,
    /// The call cap was hit before every stage ran.
    pub exhausted: bool,
}

/// For `j = 0..=n`, repeats `⌈b^j⌉` times: fix `j` random variables of
/// `vbl(F)` to random bits and run `inner` on the residual formula. Stops at
/// the first lifted model that satisfies `F`, or after `max_inner_calls`.
pub fn guessing_wrapper(
    formula: &CnfFormula,
    config: &WrapperConfig,
    inner: &dyn InnerSolver,
    rng: &mut ChaCha8Rng,
    max_inner_calls: u64,
) -> WrapperTrace {
    let vars = formula.vars();
    let n = vars.len();
    let mut trace = WrapperTrace {
        model: None,
        inner_calls: 0,
        counters: Counters::default(),
        guesses: None,
        exhausted: false,
    };
    for j in 0..=n {
        let reps = config.b.powi(j as i32).ceil();
        let reps = if reps >= u64::MAX as f64 { u64::MAX } else { reps as u64 };
        for _ in 0..reps {
            if trace.inner_calls >= max_inner_calls {
                trace.exhausted = true;
                return trace;
            }
            let guessed: Vec<Lit> = index::sample(rng, n, j)
                .into_iter()
                .map(|i| vars[i].lit(rng.random()))
                .collect();
            let residual = formula.restrict_all(guessed.iter().copied());
            let attempt = inner.attempt(&residual, rng);
            trace.inner_calls += 1;
            trace.counters.merge(&attempt.counters);
            if let Some(mut model) = attempt.model {
                for l in &guessed {
                    model.set(l.var(), l.is_positive());
                }
                if formula.is_satisfied_by(&model) {
                    trace.model = Some(model);
                    trace.guesses = Some(j);
                    return trace;
                }
            }
        }
    }
    trace
}
