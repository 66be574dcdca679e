//! Oracle-labelled instance families for tests and experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{random_clause, Assignment, Clause, CnfFormula, Lit, Var};

use super::{dpll_solve, DpllVerdict, OracleError};

/// A width-`k` formula over `x1..xn` whose only satisfying assignment is a
/// random planted one.
///
/// Clauses satisfied by the planted assignment are added until DPLL proves
/// the formula together with a blocking clause for the plant unsatisfiable.
pub fn planted_unique_kcnf(n: u32, k: u32, seed: u64) -> Result<CnfFormula, OracleError> {
    assert!(k >= 1 && k <= n, "need 1 <= k <= n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted = Assignment::new((0..n).map(|_| rng.random()).collect());
    let blocking = Clause::new(planted.iter().map(|(v, b)| v.lit(!b))).expect("distinct vars");
    let mut clauses: Vec<Clause> = Vec::new();
    let max_clauses = 40 * n as usize + 100;
    let mut since_check = 0;
    while clauses.len() < max_clauses {
        let c = random_clause(&mut rng, n, k);
        if !c.is_satisfied_by(&planted) {
            continue;
        }
        clauses.push(c);
        since_check += 1;
        if since_check < n as usize / 2 && clauses.len() < 2 * n as usize {
            continue;
        }
        since_check = 0;
        let f = CnfFormula::new(n, clauses.iter().cloned()).expect("in range");
        let with_block = f.with_clause(blocking.clone()).expect("in range");
        if dpll_solve(&with_block) == DpllVerdict::Unsat && f.num_occurring() == n as usize {
            return Ok(f);
        }
    }
    Err(OracleError::GenerationFailed { attempts: 1 })
}

/// Random width-`k` formulas with `m` clauses over `n` variables, redrawn with
/// successive seeds until one is satisfiable.
pub fn random_satisfiable_kcnf(
    n: u32,
    m: usize,
    k: u32,
    seed: u64,
) -> Result<CnfFormula, OracleError> {
    const ATTEMPTS: u32 = 1000;
    for attempt in 0..ATTEMPTS {
        let s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(u64::from(attempt));
        let f = crate::cnf::generate_random_kcnf(n, m, k, s).expect("valid parameters");
        if dpll_solve(&f).is_sat() {
            return Ok(f);
        }
    }
    Err(OracleError::GenerationFailed { attempts: ATTEMPTS })
}

/// The pigeonhole formula: `pigeons` pigeons into `holes` holes. Unsatisfiable
/// when `pigeons > holes`.
pub fn pigeonhole(pigeons: u32, holes: u32) -> CnfFormula {
    let var = |p: u32, h: u32| Var::new(p * holes + h + 1);
    let mut clauses = Vec::new();
    for p in 0..pigeons {
        clauses.push(Clause::new((0..holes).map(|h| var(p, h).positive())).unwrap());
    }
    for h in 0..holes {
        for p in 0..pigeons {
            for q in p + 1..pigeons {
                let pair: [Lit; 2] = [var(p, h).negative(), var(q, h).negative()];
                clauses.push(Clause::new(pair).unwrap());
            }
        }
    }
    CnfFormula::new(pigeons * holes, clauses).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_satisfying;

    #[test]
    fn planted_instances_are_unique() {
        for seed in 0..20 {
            let f = planted_unique_kcnf(9, 3, seed).unwrap();
            assert_eq!(count_satisfying(&f).unwrap(), 1, "seed {seed}");
            assert_eq!(f.width(), 3);
        }
    }

    #[test]
    fn pigeonhole_is_unsat() {
        assert_eq!(count_satisfying(&pigeonhole(4, 3)).unwrap(), 0);
        assert!(count_satisfying(&pigeonhole(3, 3)).unwrap() > 0);
    }
}
