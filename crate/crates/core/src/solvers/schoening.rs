use rand::Rng;

use crate::cnf::{Assignment, CnfFormula, PackedFormula, Var};

/// Result of one random walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTrace {
    pub assignment: Assignment,
    pub flips: u64,
    pub satisfied: bool,
}

/// Schöning's walk: up to `3 |vbl(F)|` flips, each of a uniformly random
/// variable of the lowest-index unsatisfied clause.
#[derive(Debug, Clone)]
pub struct SchoeningWalker {
    formula: CnfFormula,
    packed: Option<PackedFormula>,
    steps: u64,
}

impl SchoeningWalker {
    pub fn new(formula: &CnfFormula) -> SchoeningWalker {
        SchoeningWalker {
            formula: formula.clone(),
            packed: PackedFormula::new(formula),
            steps: 3 * formula.num_occurring() as u64,
        }
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn max_flips(&self) -> u64 {
        self.steps
    }

    pub fn walk<R: Rng + ?Sized>(&self, beta: &Assignment, rng: &mut R) -> WalkTrace {
        assert_eq!(beta.num_vars(), self.formula.num_vars(), "β must cover the declared range");
        match &self.packed {
            Some(p) => self.walk_packed(p, beta, rng),
            None => self.walk_generic(beta, rng),
        }
    }

    fn walk_packed<R: Rng + ?Sized>(&self, p: &PackedFormula, beta: &Assignment, rng: &mut R) -> WalkTrace {
        let n = self.formula.num_vars();
        let mut bits = beta.to_index();
        let mut flips = 0;
        while flips < self.steps {
            let Some(i) = p.first_unsatisfied(bits) else { break };
            let clause = &self.formula.clauses()[i];
            if clause.is_empty() {
                break;
            }
            let var = clause.lits()[rng.random_range(0..clause.len())].var();
            bits ^= PackedFormula::bit_of(n, var);
            flips += 1;
        }
        let satisfied = p.is_satisfied(bits);
        WalkTrace {
            assignment: Assignment::from_index(bits, n),
            flips,
            satisfied,
        }
    }

    fn walk_generic<R: Rng + ?Sized>(&self, beta: &Assignment, rng: &mut R) -> WalkTrace {
        let mut current = beta.clone();
        let mut flips = 0;
        while flips < self.steps {
            let Some(i) = self.formula.first_unsatisfied(&current) else { break };
            let clause = &self.formula.clauses()[i];
            if clause.is_empty() {
                break;
            }
            let var: Var = clause.lits()[rng.random_range(0..clause.len())].var();
            current.flip(var);
            flips += 1;
        }
        let satisfied = self.formula.is_satisfied_by(&current);
        WalkTrace {
            assignment: current,
            flips,
            satisfied,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn satisfying_start_is_returned() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1, 2]]);
        let beta = Assignment::from_bits("10").unwrap();
        let t = SchoeningWalker::new(&f).walk(&beta, &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(t.assignment, beta);
        assert_eq!(t.flips, 0);
    }

    #[test]
    fn single_unit_takes_one_flip() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1]]);
        let t = SchoeningWalker::new(&f).walk(&Assignment::from_bits("0").unwrap(), &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(t.flips, 1);
        assert!(t.satisfied);
    }

    #[test]
    fn flips_are_bounded() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1], &[-1]]);
        let w = SchoeningWalker::new(&f);
        let t = w.walk(&Assignment::from_bits("0").unwrap(), &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(t.flips, 3);
        assert!(!t.satisfied);
    }

    #[test]
    fn packed_and_generic_walks_agree() {
        let f = crate::cnf::generate_random_kcnf(10, 40, 3, 2).unwrap();
        let w = SchoeningWalker::new(&f);
        for seed in 0..50 {
            let beta = Assignment::from_index(seed * 17 % 1024, 10);
            let a = w.walk_packed(w.packed.as_ref().unwrap(), &beta, &mut ChaCha8Rng::seed_from_u64(seed));
            let b = w.walk_generic(&beta, &mut ChaCha8Rng::seed_from_u64(seed));
            assert_eq!(a, b);
        }
    }
}
