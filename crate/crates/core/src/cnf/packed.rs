use super::{CnfFormula, Var};

/// Bit-parallel view of a formula over at most 64 variables.
///
/// Assignments are `u64` words in the layout of [`super::Assignment::to_index`]:
/// `x1` is the most significant of the `n` low bits.
#[derive(Clone, Debug)]
pub(crate) struct PackedFormula {
    num_vars: u32,
    /// `(positive mask, negative mask)` per clause, canonical order.
    clauses: Vec<(u64, u64)>,
}

impl PackedFormula {
    pub const MAX_VARS: u32 = 64;

    pub fn new(f: &CnfFormula) -> Option<PackedFormula> {
        let num_vars = f.num_vars();
        if num_vars > Self::MAX_VARS {
            return None;
        }
        let clauses = f
            .clauses()
            .iter()
            .map(|c| {
                c.lits().iter().fold((0u64, 0u64), |(p, n), l| {
                    let bit = Self::bit_of(num_vars, l.var());
                    if l.is_positive() {
                        (p | bit, n)
                    } else {
                        (p, n | bit)
                    }
                })
            })
            .collect();
        Some(PackedFormula { num_vars, clauses })
    }

    #[inline]
    pub fn bit_of(num_vars: u32, var: Var) -> u64 {
        1u64 << (num_vars - var.get())
    }

    #[inline]
    pub fn bit(&self, var: Var) -> u64 {
        Self::bit_of(self.num_vars, var)
    }

    #[inline]
    fn clause_satisfied(&(pos, neg): &(u64, u64), bits: u64) -> bool {
        (bits & pos) | (!bits & neg) != 0
    }

    #[inline]
    pub fn is_satisfied(&self, bits: u64) -> bool {
        self.clauses.iter().all(|c| Self::clause_satisfied(c, bits))
    }

    #[inline]
    pub fn first_unsatisfied(&self, bits: u64) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !Self::clause_satisfied(c, bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{generate_random_kcnf, Assignment};

    #[test]
    fn agrees_with_clause_evaluation() {
        let f = generate_random_kcnf(9, 30, 3, 5).unwrap();
        let p = PackedFormula::new(&f).unwrap();
        for bits in 0..(1u64 << 9) {
            let a = Assignment::from_index(bits, 9);
            assert_eq!(p.is_satisfied(bits), f.is_satisfied_by(&a));
            assert_eq!(p.first_unsatisfied(bits), f.first_unsatisfied(&a));
        }
    }
}
