use rand::Rng;

use crate::cnf::{Assignment, CnfFormula};

use super::ppsz::random_assignment;
use super::{PassTrace, PpszSolver, SchoeningWalker, WalkTrace};

/// One round of the combined algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombTrace {
    /// The single `β` shared by both phases.
    pub beta: Assignment,
    pub ppsz: PassTrace,
    /// Present only when the PPSZ pass failed.
    pub walk: Option<WalkTrace>,
}

impl CombTrace {
    /// The last phase's result.
    pub fn assignment(&self) -> &Assignment {
        self.walk.as_ref().map_or(&self.ppsz.assignment, |w| &w.assignment)
    }

    pub fn satisfied(&self) -> bool {
        self.walk.as_ref().map_or(self.ppsz.satisfied, |w| w.satisfied)
    }
}

/// PPSZ followed, on failure, by Schöning's walk from the same `β`.
#[derive(Debug, Clone)]
pub struct CombSolver {
    ppsz: PpszSolver,
    walker: SchoeningWalker,
}

impl CombSolver {
    pub fn new(formula: &CnfFormula) -> CombSolver {
        CombSolver {
            ppsz: PpszSolver::new(formula),
            walker: SchoeningWalker::new(formula),
        }
    }

    pub fn ppsz(&self) -> &PpszSolver {
        &self.ppsz
    }

    pub fn walker(&self) -> &SchoeningWalker {
        &self.walker
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> CombTrace {
        let beta = random_assignment(self.ppsz.formula().num_vars(), rng);
        let ppsz = self.ppsz.run_with_beta(&beta, rng);
        let walk = (!ppsz.satisfied).then(|| self.walker.walk(&beta, rng));
        CombTrace { beta, ppsz, walk }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn walk_skipped_when_ppsz_succeeds() {
        let c = CombSolver::new(&CnfFormula::from_dimacs_clauses(&[&[1]]));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let t = c.run(&mut rng);
            assert!(t.walk.is_none());
            assert!(t.satisfied());
        }
    }

    #[test]
    fn walk_starts_from_shared_beta() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1], &[-1]]);
        let c = CombSolver::new(&f);
        let t = c.run(&mut ChaCha8Rng::seed_from_u64(1));
        let walk = t.walk.as_ref().expect("unsat formula fails PPSZ");
        // One variable, three flips: the walk ends on the opposite of β.
        assert_eq!(walk.flips, 3);
        assert_eq!(walk.assignment.get(crate::cnf::Var::new(1)), !t.beta.get(crate::cnf::Var::new(1)));
        assert_eq!(t.ppsz.guessed.len() + t.ppsz.forced.len(), 1);
    }
}
