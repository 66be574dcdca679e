use std::collections::BTreeSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Clause, CnfError, CnfFormula, Lit, Var};

/// Draws `m` distinct clauses uniformly from the width-`k` clauses over
/// `x1..xn` (distinct variables, independent signs). Deterministic in `seed`.
///
/// Duplicate draws are rejected and redrawn, so the result always has exactly
/// `m` clauses.
pub fn generate_random_kcnf(n: u32, m: usize, k: u32, seed: u64) -> Result<CnfFormula, CnfError> {
    if n < k {
        return Err(CnfError::WidthExceedsVariables { n, k });
    }
    let available = binomial(n, k).saturating_mul(1u128 << k.min(127));
    if m as u128 > available {
        return Err(CnfError::TooManyClauses {
            n,
            k,
            requested: m,
            available,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clauses = BTreeSet::new();
    while clauses.len() < m {
        clauses.insert(random_clause(&mut rng, n, k));
    }
    CnfFormula::new(n, clauses)
}

pub(crate) fn random_clause<R: Rng + ?Sized>(rng: &mut R, n: u32, k: u32) -> Clause {
    let lits = index::sample(rng, n as usize, k as usize)
        .into_iter()
        .map(|slot| Lit::new(Var::from_slot(slot), rng.random()));
    Clause::new(lits).expect("distinct variables")
}

fn binomial(n: u32, k: u32) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable_set() {
        let f = generate_random_kcnf(3, 1, 3, 11).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.vars(), vec![Var::new(1), Var::new(2), Var::new(3)]);
        assert_eq!(f, generate_random_kcnf(3, 1, 3, 11).unwrap());
    }

    #[test]
    fn deterministic_under_seed() {
        let a = generate_random_kcnf(20, 85, 3, 7).unwrap();
        let b = generate_random_kcnf(20, 85, 3, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 85);
        assert_eq!(a.width(), 3);
        assert_ne!(a, generate_random_kcnf(20, 85, 3, 8).unwrap());
    }

    #[test]
    fn width_larger_than_range() {
        assert_eq!(
            generate_random_kcnf(2, 1, 3, 0),
            Err(CnfError::WidthExceedsVariables { n: 2, k: 3 })
        );
    }

    #[test]
    fn exhausting_the_clause_space() {
        assert_eq!(generate_random_kcnf(3, 8, 3, 0).unwrap().len(), 8);
        assert!(matches!(
            generate_random_kcnf(3, 9, 3, 0),
            Err(CnfError::TooManyClauses { available: 8, .. })
        ));
    }
}
