use crate::cnf::{Assignment, CnfFormula, Var};

/// Default decision budget for [`dpll_solve`].
pub const DEFAULT_DPLL_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DpllVerdict {
    Sat(Assignment),
    Unsat,
    /// The decision budget ran out. Not a claim about satisfiability.
    Unknown,
}

impl DpllVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, DpllVerdict::Sat(_))
    }
}

/// Complete DPLL with unit propagation, branching on the lowest unassigned
/// variable and trying `false` first.
pub fn dpll_solve(f: &CnfFormula) -> DpllVerdict {
    dpll_solve_with_budget(f, DEFAULT_DPLL_BUDGET)
}

pub fn dpll_solve_with_budget(f: &CnfFormula, max_decisions: u64) -> DpllVerdict {
    let mut search = Search {
        formula: f,
        decisions: 0,
        budget: max_decisions,
    };
    let mut values = vec![None; f.num_vars() as usize];
    match search.solve(&mut values) {
        Some(true) => {
            let model = Assignment::new(values.into_iter().map(|v| v.unwrap_or(false)).collect());
            debug_assert!(f.is_satisfied_by(&model));
            DpllVerdict::Sat(model)
        }
        Some(false) => DpllVerdict::Unsat,
        None => DpllVerdict::Unknown,
    }
}

struct Search<'a> {
    formula: &'a CnfFormula,
    decisions: u64,
    budget: u64,
}

enum Propagation {
    Conflict,
    /// Every clause satisfied.
    Done,
    /// Lowest variable of some open clause.
    Branch(Var),
}

impl Search<'_> {
    fn propagate(&self, values: &mut [Option<bool>]) -> Propagation {
        loop {
            let mut changed = false;
            let mut branch: Option<Var> = None;
            for clause in self.formula.clauses() {
                let mut open = None;
                let mut open_count = 0;
                let mut satisfied = false;
                for &l in clause.lits() {
                    match values[l.var().slot()] {
                        Some(v) if l.satisfied_by(v) => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            open_count += 1;
                            open.get_or_insert(l);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open_count, open) {
                    (0, _) => return Propagation::Conflict,
                    (1, Some(l)) => {
                        values[l.var().slot()] = Some(l.is_positive());
                        changed = true;
                    }
                    (_, Some(l)) => {
                        branch = Some(branch.map_or(l.var(), |b| b.min(l.var())));
                    }
                    (_, None) => unreachable!(),
                }
            }
            if !changed {
                return branch.map_or(Propagation::Done, Propagation::Branch);
            }
        }
    }

    /// `Some(sat?)`, or `None` when the budget ran out.
    fn solve(&mut self, values: &mut Vec<Option<bool>>) -> Option<bool> {
        let var = match self.propagate(values) {
            Propagation::Conflict => return Some(false),
            Propagation::Done => return Some(true),
            Propagation::Branch(v) => v,
        };
        for value in [false, true] {
            self.decisions += 1;
            if self.decisions > self.budget {
                return None;
            }
            let mut next = values.clone();
            next[var.slot()] = Some(value);
            if self.solve(&mut next)? {
                *values = next;
                return Some(true);
            }
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::generate_random_kcnf;
    use crate::oracle::count_satisfying;

    #[test]
    fn contradiction_is_unsat() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1], &[-1]]);
        assert_eq!(dpll_solve(&f), DpllVerdict::Unsat);
    }

    #[test]
    fn empty_formula_is_sat() {
        assert_eq!(
            dpll_solve(&CnfFormula::default()),
            DpllVerdict::Sat(Assignment::new(vec![]))
        );
    }

    #[test]
    fn budget_exhaustion_is_not_unsat() {
        // Pigeonhole 3 into 2 needs several decisions.
        let f = crate::oracle::instances::pigeonhole(3, 2);
        assert_eq!(dpll_solve_with_budget(&f, 1), DpllVerdict::Unknown);
        assert_eq!(dpll_solve(&f), DpllVerdict::Unsat);
    }

    #[test]
    fn agrees_with_enumeration() {
        for seed in 0..500 {
            let f = generate_random_kcnf(10, 43, 3, seed).unwrap();
            let count = count_satisfying(&f).unwrap();
            match dpll_solve(&f) {
                DpllVerdict::Sat(m) => {
                    assert!(count > 0);
                    assert!(f.is_satisfied_by(&m));
                }
                DpllVerdict::Unsat => assert_eq!(count, 0, "seed {seed}"),
                DpllVerdict::Unknown => panic!("budget exhausted at n = 10"),
            }
        }
    }
}
