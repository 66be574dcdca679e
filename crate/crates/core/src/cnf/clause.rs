use std::fmt;

use super::{Assignment, CnfError, Lit, Var};

/// A set of literals over pairwise distinct variables, kept sorted.
///
/// The empty clause is allowed and is never satisfied.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    /// Canonicalizes `lits`. Repeated literals collapse; a variable occurring
    /// with both signs is rejected.
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Clause, CnfError> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        if let Some(w) = lits.windows(2).find(|w| w[0].var() == w[1].var()) {
            return Err(CnfError::ComplementaryLiterals(w[0].var()));
        }
        Ok(Clause { lits })
    }

    /// Convenience constructor from signed DIMACS integers.
    ///
    /// # Panics
    ///
    /// On a zero literal or complementary literals. Meant for tests and fixtures.
    pub fn from_dimacs(lits: &[i64]) -> Clause {
        let lits = lits
            .iter()
            .map(|&l| Lit::from_dimacs(l).expect("literal 0 in clause"));
        Clause::new(lits).expect("complementary literals in clause")
    }

    pub fn empty() -> Clause {
        Clause { lits: Vec::new() }
    }

    /// Builds a clause from literals already known to be sorted and over
    /// distinct variables.
    pub(crate) fn from_sorted_unchecked(lits: Vec<Lit>) -> Clause {
        debug_assert!(lits.windows(2).all(|w| w[0].var() < w[1].var()));
        Clause { lits }
    }

    #[inline]
    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.lits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.lits.len() == 1
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    /// The literal of this clause over `var`, if any.
    pub fn lit_over(&self, var: Var) -> Option<Lit> {
        if self.contains(var.positive()) {
            Some(var.positive())
        } else if self.contains(var.negative()) {
            Some(var.negative())
        } else {
            None
        }
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.lits.iter().any(|&l| assignment.satisfies(l))
    }

    pub fn max_var(&self) -> Option<Var> {
        self.lits.last().map(|l| l.var())
    }

    /// This clause with the literal over `var` removed.
    pub(crate) fn without_var(&self, var: Var) -> Clause {
        Clause {
            lits: self.lits.iter().copied().filter(|l| l.var() != var).collect(),
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = Clause::from_dimacs(&[3, -1, 3]);
        let b = Clause::from_dimacs(&[-1, 3]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn rejects_complementary_pair() {
        let x = Var::new(1);
        assert_eq!(
            Clause::new([x.positive(), x.negative()]),
            Err(CnfError::ComplementaryLiterals(x))
        );
    }

    #[test]
    fn empty_clause_is_unsatisfied() {
        assert!(!Clause::empty().is_satisfied_by(&Assignment::all(3, true)));
    }
}
