use rand::Rng;

use crate::cnf::{Assignment, CnfFormula, Lit, Var};
use crate::resolution::{bounded_resolution_closure, ppsz_width};

use super::{Placement, SolverError};

/// Result of one PPSZ pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassTrace {
    pub assignment: Assignment,
    /// Variables of `vbl(F)` bound by a unit clause, in processing order.
    pub forced: Vec<Var>,
    /// Variables of `vbl(F)` copied from `β`, in processing order.
    pub guessed: Vec<Var>,
    /// Steps where both `{x}` and `{¬x}` were present; `x` was bound to 1.
    pub conflicts: u32,
    pub satisfied: bool,
}

/// PPSZ over a fixed formula. The resolution closure `G` is computed once at
/// construction and shared by every pass.
#[derive(Debug, Clone)]
pub struct PpszSolver {
    formula: CnfFormula,
    closure: CnfFormula,
    width: Option<usize>,
    vars: Vec<Var>,
    /// Per variable slot: `(clause index in G, literal)` for every occurrence.
    occurrences: Vec<Vec<(usize, Lit)>>,
}

impl PpszSolver {
    /// Resolution width `max(1, ⌊log₂ |vbl(F)|⌋)`.
    pub fn new(formula: &CnfFormula) -> PpszSolver {
        Self::with_width(formula, ppsz_width(formula.num_occurring()))
    }

    pub fn with_width(formula: &CnfFormula, s: usize) -> PpszSolver {
        let closure = bounded_resolution_closure(formula, s.max(1))
            .expect("width is positive")
            .into_formula();
        Self::build(formula, closure, Some(s.max(1)))
    }

    /// Plain PPZ: unit clauses of `F` itself, no resolution.
    pub fn without_resolution(formula: &CnfFormula) -> PpszSolver {
        Self::build(formula, formula.clone(), None)
    }

    fn build(formula: &CnfFormula, closure: CnfFormula, width: Option<usize>) -> PpszSolver {
        let mut occurrences = vec![Vec::new(); formula.num_vars() as usize];
        for (i, c) in closure.clauses().iter().enumerate() {
            for &l in c.lits() {
                occurrences[l.var().slot()].push((i, l));
            }
        }
        PpszSolver {
            formula: formula.clone(),
            closure,
            width,
            vars: formula.vars(),
            occurrences,
        }
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    /// `G`.
    pub fn closure(&self) -> &CnfFormula {
        &self.closure
    }

    /// `None` for the resolution-free variant.
    pub fn width(&self) -> Option<usize> {
        self.width
    }

    /// One pass with the given `β` and placement. Variables outside `vbl(F)`
    /// simply copy `β`.
    pub fn pass(&self, beta: &Assignment, placement: &Placement) -> PassTrace {
        let n = self.formula.num_vars();
        assert_eq!(beta.num_vars(), n, "β must cover the declared range");
        assert_eq!(placement.num_vars(), n, "placement must cover the declared range");

        let clauses = self.closure.clauses();
        let mut satisfied = vec![false; clauses.len()];
        let mut open: Vec<usize> = clauses.iter().map(|c| c.len()).collect();
        let mut alpha = beta.clone();
        let mut occurring = vec![false; n as usize];
        for v in &self.vars {
            occurring[v.slot()] = true;
        }
        let mut trace = PassTrace {
            assignment: Assignment::new(vec![]),
            forced: Vec::new(),
            guessed: Vec::new(),
            conflicts: 0,
            satisfied: false,
        };

        for x in placement.order() {
            if !occurring[x.slot()] {
                continue;
            }
            let occ = &self.occurrences[x.slot()];
            let (mut unit_pos, mut unit_neg) = (false, false);
            for &(i, l) in occ {
                if !satisfied[i] && open[i] == 1 {
                    if l.is_positive() {
                        unit_pos = true;
                    } else {
                        unit_neg = true;
                    }
                }
            }
            let value = match (unit_pos, unit_neg) {
                (true, true) => {
                    trace.conflicts += 1;
                    true
                }
                (true, false) => true,
                (false, true) => false,
                (false, false) => beta.get(x),
            };
            if unit_pos || unit_neg {
                trace.forced.push(x);
            } else {
                trace.guessed.push(x);
            }
            alpha.set(x, value);
            for &(i, l) in occ {
                if l.satisfied_by(value) {
                    satisfied[i] = true;
                } else {
                    open[i] -= 1;
                }
            }
        }
        trace.satisfied = self.formula.is_satisfied_by(&alpha);
        trace.assignment = alpha;
        trace
    }

    /// One run: uniform `β`, then a uniform placement.
    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> PassTrace {
        let beta = random_assignment(self.formula.num_vars(), rng);
        self.run_with_beta(&beta, rng)
    }

    pub fn run_with_beta<R: Rng + ?Sized>(&self, beta: &Assignment, rng: &mut R) -> PassTrace {
        let placement = Placement::uniform(self.formula.num_vars(), rng);
        self.pass(beta, &placement)
    }

    /// `forced(α, π)` for a satisfying `α`: running the pass with `β = α`
    /// reproduces `α`, so its forced variables are exactly these.
    pub fn forced_set(&self, alpha: &Assignment, placement: &Placement) -> Result<Vec<Var>, SolverError> {
        if alpha.num_vars() != self.formula.num_vars() || !self.formula.is_satisfied_by(alpha) {
            return Err(SolverError::NotSatisfying);
        }
        let trace = self.pass(alpha, placement);
        debug_assert_eq!(&trace.assignment, alpha);
        let mut forced = trace.forced;
        forced.sort_unstable();
        Ok(forced)
    }
}

pub(crate) fn random_assignment<R: Rng + ?Sized>(num_vars: u32, rng: &mut R) -> Assignment {
    Assignment::new((0..num_vars).map(|_| rng.random()).collect())
}
