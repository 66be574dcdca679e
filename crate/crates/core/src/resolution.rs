//! Resolvents and the `s`-bounded resolution closure.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::cnf::{Clause, CnfFormula, Lit, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("{0} and {1} are not a resolvable pair")]
    NotResolvable(Clause, Clause),
    #[error("resolution width must be at least 1")]
    ZeroWidth,
    #[error("derivation {index}: {reason}")]
    InvalidDerivation { index: usize, reason: String },
}

/// The variable on which `c1` and `c2` conflict, if they conflict on exactly
/// one variable.
pub fn resolvable_conflict(c1: &Clause, c2: &Clause) -> Option<Var> {
    let (a, b) = (c1.lits(), c2.lits());
    let (mut i, mut j) = (0, 0);
    let mut conflict = None;
    while i < a.len() && j < b.len() {
        let (va, vb) = (a[i].var(), b[j].var());
        if va < vb {
            i += 1;
        } else if vb < va {
            j += 1;
        } else {
            if a[i] != b[j] {
                if conflict.is_some() {
                    return None;
                }
                conflict = Some(va);
            }
            i += 1;
            j += 1;
        }
    }
    conflict
}

/// `R(C1, C2) = (C1 ∪ C2) \ {x, x̄}` for the unique conflict variable `x`.
pub fn resolvent(c1: &Clause, c2: &Clause) -> Result<Clause, ResolutionError> {
    let x = resolvable_conflict(c1, c2)
        .ok_or_else(|| ResolutionError::NotResolvable(c1.clone(), c2.clone()))?;
    Ok(resolve_on(c1, c2, x))
}

fn resolve_on(c1: &Clause, c2: &Clause, x: Var) -> Clause {
    let mut lits: Vec<Lit> = c1
        .lits()
        .iter()
        .chain(c2.lits())
        .copied()
        .filter(|l| l.var() != x)
        .collect();
    lits.sort_unstable();
    lits.dedup();
    Clause::from_sorted_unchecked(lits)
}

/// Whether `(c1, c2)` is an `s`-bounded resolvable pair.
pub fn is_bounded_pair(c1: &Clause, c2: &Clause, s: usize) -> bool {
    c1.len() <= s
        && c2.len() <= s
        && resolvable_conflict(c1, c2).is_some_and(|x| resolve_on(c1, c2, x).len() <= s)
}

/// Resolution width used by PPSZ on `n` variables: `max(1, ⌊log₂ n⌋)`.
pub fn ppsz_width(num_occurring: usize) -> usize {
    if num_occurring < 2 {
        1
    } else {
        num_occurring.ilog2() as usize
    }
}

/// One derived clause together with the two clauses it was resolved from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub child: Clause,
    pub parents: (Clause, Clause),
}

/// `Resolve(F, s)`: every clause with an `s`-bounded resolution deduction
/// from `F`. Base clauses are always kept, including those wider than `s`;
/// those never take part in resolution steps.
#[derive(Debug, Clone)]
pub struct ResolutionClosure {
    base: CnfFormula,
    width: usize,
    closure: CnfFormula,
    derivations: Vec<Derivation>,
}

impl ResolutionClosure {
    pub fn base(&self) -> &CnfFormula {
        &self.base
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// The closure as a formula over the base's variable range.
    pub fn formula(&self) -> &CnfFormula {
        &self.closure
    }

    pub fn into_formula(self) -> CnfFormula {
        self.closure
    }

    /// Derived clauses in the order they were found.
    pub fn derivations(&self) -> &[Derivation] {
        &self.derivations
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.closure.contains(clause)
    }

    /// Re-checks every derivation: parents must be base clauses or derived
    /// earlier, form an `s`-bounded pair, and resolve to the recorded child.
    pub fn replay(&self) -> Result<(), ResolutionError> {
        let mut known: std::collections::HashSet<&Clause> = self.base.clauses().iter().collect();
        for (index, d) in self.derivations.iter().enumerate() {
            let invalid = |reason: &str| ResolutionError::InvalidDerivation {
                index,
                reason: reason.to_owned(),
            };
            let (p1, p2) = (&d.parents.0, &d.parents.1);
            if !known.contains(p1) || !known.contains(p2) {
                return Err(invalid("parent not yet derived"));
            }
            if !is_bounded_pair(p1, p2, self.width) {
                return Err(invalid("parents are not an s-bounded resolvable pair"));
            }
            if resolvent(p1, p2)? != d.child {
                return Err(invalid("child is not the resolvent of its parents"));
            }
            known.insert(&d.child);
        }
        Ok(())
    }

    /// One `child <- parent1 parent2` line per derived clause, literals in
    /// DIMACS notation.
    pub fn deduction_log(&self) -> String {
        fn fmt_clause(c: &Clause) -> String {
            let lits: Vec<String> = c.lits().iter().map(|l| l.to_dimacs().to_string()).collect();
            format!("[{}]", lits.join(" "))
        }
        let mut out = String::new();
        for d in &self.derivations {
            writeln!(
                out,
                "{} <- {} {}",
                fmt_clause(&d.child),
                fmt_clause(&d.parents.0),
                fmt_clause(&d.parents.1)
            )
            .unwrap();
        }
        out
    }
}

/// Saturates `formula` under `s`-bounded resolution.
///
/// Worklist saturation: every clause of width at most `s` is, once, resolved
/// against all clauses processed before it. The result is a fixed point.
pub fn bounded_resolution_closure(
    formula: &CnfFormula,
    s: usize,
) -> Result<ResolutionClosure, ResolutionError> {
    if s == 0 {
        return Err(ResolutionError::ZeroWidth);
    }
    let lit_slots = 2 * (formula.num_vars() as usize + 1);
    let mut clauses: Vec<Clause> = formula.clauses().to_vec();
    let mut ids: HashMap<Clause, usize> = clauses
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let mut parents: Vec<Option<(usize, usize)>> = vec![None; clauses.len()];
    let mut order: Vec<usize> = Vec::new();
    // Clauses already resolved against everything before them, by literal.
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); lit_slots];
    let mut queue: VecDeque<usize> = (0..clauses.len()).filter(|&i| clauses[i].len() <= s).collect();
    let slot = |l: Lit| l.var().get() as usize * 2 + usize::from(!l.is_positive());

    while let Some(id) = queue.pop_front() {
        let current = clauses[id].clone();
        for &lit in current.lits() {
            for &other in &occurrences[slot(!lit)] {
                if resolvable_conflict(&current, &clauses[other]) != Some(lit.var()) {
                    continue;
                }
                let child = resolve_on(&current, &clauses[other], lit.var());
                if child.len() > s || ids.contains_key(&child) {
                    continue;
                }
                let child_id = clauses.len();
                ids.insert(child.clone(), child_id);
                clauses.push(child);
                parents.push(Some((id, other)));
                order.push(child_id);
                queue.push_back(child_id);
            }
        }
        for &lit in current.lits() {
            occurrences[slot(lit)].push(id);
        }
    }

    let derivations = order
        .iter()
        .map(|&id| {
            let (p1, p2) = parents[id].expect("derived clauses record parents");
            Derivation {
                child: clauses[id].clone(),
                parents: (clauses[p1].clone(), clauses[p2].clone()),
            }
        })
        .collect();
    let closure = CnfFormula::new(formula.num_vars(), clauses).expect("same range as base");
    Ok(ResolutionClosure {
        base: formula.clone(),
        width: s,
        closure,
        derivations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::generate_random_kcnf;
    use proptest::prelude::*;

    fn c(lits: &[i64]) -> Clause {
        Clause::from_dimacs(lits)
    }

    // x=1 y=2 z=3 a=4 b=5 c=6
    #[test]
    fn conflict_detection() {
        assert_eq!(resolvable_conflict(&c(&[1]), &c(&[-1, 2])), Some(Var::new(1)));
        assert_eq!(resolvable_conflict(&c(&[1, 2]), &c(&[1, 3])), None);
        assert_eq!(resolvable_conflict(&c(&[1, -2]), &c(&[-1, 2])), None);
    }

    #[test]
    fn resolvents_from_the_worked_example() {
        assert_eq!(resolvent(&c(&[3, -5, -6]), &c(&[1, 3, 6])).unwrap(), c(&[1, 3, -5]));
        assert_eq!(resolvent(&c(&[1, -2, -3]), &c(&[1, 2, -4])).unwrap(), c(&[1, -3, -4]));
        assert_eq!(resolvent(&c(&[1]), &c(&[-1])).unwrap(), Clause::empty());
        assert!(matches!(
            resolvent(&c(&[1, 2]), &c(&[1, 3])),
            Err(ResolutionError::NotResolvable(..))
        ));
    }

    #[test]
    fn closure_finds_the_critical_clause() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1, 3, -5], &[1, -3, -4]]);
        let g = bounded_resolution_closure(&f, 3).unwrap();
        assert!(g.contains(&c(&[1, -4, -5])));
        g.replay().unwrap();
    }

    #[test]
    fn closure_without_resolvable_pairs_is_identity() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1, 2], &[1, 3], &[2, 3]]);
        let g = bounded_resolution_closure(&f, 3).unwrap();
        assert_eq!(g.formula(), &f);
        assert!(g.derivations().is_empty());
    }

    #[test]
    fn width_one_blocks_binary_parents() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1], &[-1, 2], &[-2, 3]]);
        let g = bounded_resolution_closure(&f, 1).unwrap();
        assert_eq!(g.formula(), &f);
    }

    #[test]
    fn wide_base_clauses_are_kept() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1, 2, 3, 4], &[-1]]);
        let g = bounded_resolution_closure(&f, 2).unwrap();
        assert!(g.contains(&c(&[1, 2, 3, 4])));
        assert_eq!(g.formula().len(), 2);
    }

    #[test]
    fn zero_width_rejected() {
        assert_eq!(
            bounded_resolution_closure(&CnfFormula::default(), 0).unwrap_err(),
            ResolutionError::ZeroWidth
        );
    }

    #[test]
    fn ppsz_width_values() {
        assert_eq!(ppsz_width(0), 1);
        assert_eq!(ppsz_width(1), 1);
        assert_eq!(ppsz_width(3), 1);
        assert_eq!(ppsz_width(4), 2);
        assert_eq!(ppsz_width(14), 3);
        assert_eq!(ppsz_width(16), 4);
    }

    #[test]
    fn deduction_log_format() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1], &[-1]]);
        let g = bounded_resolution_closure(&f, 1).unwrap();
        assert_eq!(g.deduction_log(), "[] <- [-1] [1]\n");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn closure_is_idempotent_and_replayable(seed: u64, s in 1usize..4) {
            let f = generate_random_kcnf(7, 14, 3, seed).unwrap();
            let g = bounded_resolution_closure(&f, s).unwrap();
            g.replay().unwrap();
            let again = bounded_resolution_closure(g.formula(), s).unwrap();
            prop_assert_eq!(again.formula(), g.formula());
            prop_assert!(g.formula().clauses().iter().all(|c| c.len() <= s || f.contains(c)));
        }

        #[test]
        fn closure_is_monotone_in_width(seed: u64, s in 1usize..4) {
            let f = generate_random_kcnf(7, 14, 3, seed).unwrap();
            let small = bounded_resolution_closure(&f, s).unwrap();
            let large = bounded_resolution_closure(&f, s + 1).unwrap();
            prop_assert!(small.formula().clauses().iter().all(|c| large.contains(c)));
        }
    }
}
