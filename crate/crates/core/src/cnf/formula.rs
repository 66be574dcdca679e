use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::{Assignment, Clause, CnfError, Lit, Var};

/// A CNF formula over the declared variable range `1..=num_vars`.
///
/// Clauses are kept sorted and deduplicated, so two formulas are equal exactly
/// when they declare the same range and contain the same clause set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

/// Result of [`CnfFormula::restrict`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restricted {
    pub formula: CnfFormula,
    /// Set when the variable did not occur, so the restriction changed nothing.
    pub noop: bool,
}

impl CnfFormula {
    pub fn new<I: IntoIterator<Item = Clause>>(
        num_vars: u32,
        clauses: I,
    ) -> Result<CnfFormula, CnfError> {
        let mut clauses: Vec<Clause> = clauses.into_iter().collect();
        if let Some(var) = clauses
            .iter()
            .filter_map(Clause::max_var)
            .find(|v| v.get() > num_vars)
        {
            return Err(CnfError::VariableOutOfRange { var, num_vars });
        }
        clauses.sort_unstable();
        clauses.dedup();
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Declares exactly the variables up to the largest one occurring.
    pub fn from_clauses<I: IntoIterator<Item = Clause>>(clauses: I) -> CnfFormula {
        let clauses: Vec<Clause> = clauses.into_iter().collect();
        let num_vars = clauses
            .iter()
            .filter_map(Clause::max_var)
            .map(Var::get)
            .max()
            .unwrap_or(0);
        CnfFormula::new(num_vars, clauses).expect("range covers every clause")
    }

    /// Fixture constructor from signed DIMACS clauses.
    ///
    /// # Panics
    ///
    /// On malformed clauses, see [`Clause::from_dimacs`].
    pub fn from_dimacs_clauses(clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_clauses(clauses.iter().map(|c| Clause::from_dimacs(c)))
    }

    #[inline]
    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    #[inline]
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Maximum clause width.
    pub fn width(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }

    /// Occurrence flags indexed by variable slot.
    pub fn occurrence_mask(&self) -> Vec<bool> {
        let mut occurs = vec![false; self.num_vars as usize];
        for v in self.clauses.iter().flat_map(Clause::vars) {
            occurs[v.slot()] = true;
        }
        occurs
    }

    /// `vbl(F)`, ascending.
    pub fn vars(&self) -> Vec<Var> {
        self.occurrence_mask()
            .into_iter()
            .enumerate()
            .filter(|&(_, o)| o)
            .map(|(i, _)| Var::from_slot(i))
            .collect()
    }

    /// `|vbl(F)|`.
    pub fn num_occurring(&self) -> usize {
        self.occurrence_mask().into_iter().filter(|&o| o).count()
    }

    pub fn occurs(&self, var: Var) -> bool {
        self.clauses.iter().any(|c| c.lit_over(var).is_some())
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.first().is_some_and(Clause::is_empty)
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.binary_search(clause).is_ok()
    }

    /// Whether `assignment` satisfies every clause. The assignment must cover
    /// the declared range.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool, CnfError> {
        if assignment.num_vars() < self.num_vars {
            return Err(CnfError::AssignmentTooShort {
                expected: self.num_vars,
                found: assignment.num_vars(),
            });
        }
        Ok(self.is_satisfied_by(assignment))
    }

    /// Unchecked variant of [`CnfFormula::evaluate`].
    #[inline]
    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(assignment))
    }

    /// Index of the first clause (in canonical order) not satisfied by
    /// `assignment`.
    pub fn first_unsatisfied(&self, assignment: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.is_satisfied_by(assignment))
    }

    /// `F^[x ↦ value]`: clauses satisfied by the binding disappear and the
    /// falsified literal is dropped from the rest. The declared range is kept.
    pub fn restrict(&self, var: Var, value: bool) -> Restricted {
        let satisfied = var.lit(value);
        let falsified = !satisfied;
        let mut noop = true;
        let mut clauses = Vec::with_capacity(self.clauses.len());
        for c in &self.clauses {
            if c.contains(satisfied) {
                noop = false;
            } else if c.contains(falsified) {
                noop = false;
                clauses.push(c.without_var(var));
            } else {
                clauses.push(c.clone());
            }
        }
        Restricted {
            formula: CnfFormula::new(self.num_vars, clauses).expect("range unchanged"),
            noop,
        }
    }

    /// Applies several bindings in sequence.
    pub fn restrict_all<I: IntoIterator<Item = Lit>>(&self, lits: I) -> CnfFormula {
        let mut out = self.clone();
        for l in lits {
            out = out.restrict(l.var(), l.is_positive()).formula;
        }
        out
    }

    /// The formula with one more clause.
    pub fn with_clause(&self, clause: Clause) -> Result<CnfFormula, CnfError> {
        let mut clauses = self.clauses.clone();
        clauses.push(clause);
        CnfFormula::new(self.num_vars, clauses)
    }

    /// Stable 64-bit fingerprint of the canonical form.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}
