use crate::cnf::{Assignment, CnfFormula, PackedFormula, Var};
use crate::solvers::{Placement, PpszSolver};

use super::OracleError;

/// Largest formula [`exact_success_ppsz`] accepts.
pub const EXACT_PPSZ_LIMIT: u32 = 6;
/// Largest formula [`exact_success_schoening`] accepts.
pub const EXACT_SCHOENING_LIMIT: u32 = 10;
/// Most occurring variables [`exact_forced_fraction`] accepts.
pub const EXACT_FORCED_LIMIT: usize = 8;

/// Every ordering of `vars`, lexicographic in input order.
pub(crate) fn permutations(vars: &[Var]) -> Vec<Vec<Var>> {
    if vars.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in vars.iter().enumerate() {
        let mut rest = vars.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Exact success probability of one PPSZ round (uniform `β`, uniform
/// placement), by running the pass for every `β` over `vbl(F)` and every
/// processing order.
pub fn exact_success_ppsz(f: &CnfFormula) -> Result<f64, OracleError> {
    exact_success_ppsz_with(&PpszSolver::new(f))
}

/// As [`exact_success_ppsz`], for a solver with any closure width.
pub fn exact_success_ppsz_with(solver: &PpszSolver) -> Result<f64, OracleError> {
    let f = solver.formula();
    let n = f.num_vars();
    if n > EXACT_PPSZ_LIMIT {
        return Err(OracleError::TooManyVariables {
            num_vars: n,
            limit: EXACT_PPSZ_LIMIT,
        });
    }
    let vars = f.vars();
    let orders = permutations(&vars);
    let mut successes = 0u64;
    let mut total = 0u64;
    for bits in 0..(1u64 << vars.len()) {
        // Non-occurring variables never matter; leave them 0.
        let mut beta = Assignment::all(n, false);
        for (i, &v) in vars.iter().enumerate() {
            beta.set(v, bits >> i & 1 == 1);
        }
        for order in &orders {
            let placement = Placement::from_order(n, order);
            if solver.pass(&beta, &placement).satisfied {
                successes += 1;
            }
            total += 1;
        }
    }
    Ok(successes as f64 / total as f64)
}

/// Expected fraction of `vbl(F)` forced when PPSZ runs with `β = α`, over
/// every processing order.
pub fn exact_forced_fraction(solver: &PpszSolver, alpha: &Assignment) -> Result<f64, OracleError> {
    let f = solver.formula();
    let vars = f.vars();
    if vars.len() > EXACT_FORCED_LIMIT {
        return Err(OracleError::TooManyVariables {
            num_vars: vars.len() as u32,
            limit: EXACT_FORCED_LIMIT as u32,
        });
    }
    if vars.is_empty() {
        return Err(OracleError::NoVariables);
    }
    let orders = permutations(&vars);
    let mut forced = 0usize;
    for order in &orders {
        let placement = Placement::from_order(f.num_vars(), order);
        forced += solver
            .forced_set(alpha, &placement)
            .map_err(|_| OracleError::NotSatisfying)?
            .len();
    }
    Ok(forced as f64 / (orders.len() * vars.len()) as f64)
}

/// Exact success probability of the `3 |vbl(F)|`-step walk, started at
/// `beta0` or averaged over a uniform start.
///
/// Dynamic programming over the `2^n` states; the walk flips a uniformly
/// random variable of the lowest-index unsatisfied clause, as the sampler
/// does.
pub fn exact_success_schoening(f: &CnfFormula, beta0: Option<&Assignment>) -> Result<f64, OracleError> {
    let n = f.num_vars();
    if n > EXACT_SCHOENING_LIMIT {
        return Err(OracleError::TooManyVariables {
            num_vars: n,
            limit: EXACT_SCHOENING_LIMIT,
        });
    }
    let packed = PackedFormula::new(f).expect("within packed range");
    let states = 1usize << n;
    // Per state: None if satisfied, else the bits of the chosen clause's
    // variables (empty for the empty clause).
    let moves: Vec<Option<Vec<u64>>> = (0..states as u64)
        .map(|s| {
            packed.first_unsatisfied(s).map(|i| {
                f.clauses()[i]
                    .lits()
                    .iter()
                    .map(|l| PackedFormula::bit_of(n, l.var()))
                    .collect()
            })
        })
        .collect();
    let mut p: Vec<f64> = moves.iter().map(|m| if m.is_none() { 1.0 } else { 0.0 }).collect();
    for _ in 0..3 * f.num_occurring() {
        let next: Vec<f64> = (0..states)
            .map(|s| match &moves[s] {
                None => 1.0,
                Some(flips) if flips.is_empty() => 0.0,
                Some(flips) => {
                    flips.iter().map(|&b| p[s ^ b as usize]).sum::<f64>() / flips.len() as f64
                }
            })
            .collect();
        p = next;
    }
    match beta0 {
        Some(b) => {
            if b.num_vars() != n {
                return Err(OracleError::TooManyVariables {
                    num_vars: b.num_vars(),
                    limit: n,
                });
            }
            Ok(p[b.to_index() as usize])
        }
        None => Ok(p.iter().sum::<f64>() / states as f64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_satisfying, planted_unique_kcnf};

    #[test]
    fn permutation_count() {
        let vars: Vec<Var> = (1..=4).map(Var::new).collect();
        assert_eq!(permutations(&vars).len(), 24);
    }

    #[test]
    fn forced_fraction_of_chain() {
        // {x1}, {¬x1, x2}: x1 is always forced, x2 only when placed after x1.
        let f = CnfFormula::from_dimacs_clauses(&[&[1], &[-1, 2]]);
        let alpha = Assignment::all(2, true);
        let q = exact_forced_fraction(&PpszSolver::new(&f), &alpha).unwrap();
        assert!((q - 0.75).abs() < 1e-15, "{q}");
        let bad = Assignment::all(2, false);
        assert_eq!(exact_forced_fraction(&PpszSolver::new(&f), &bad), Err(OracleError::NotSatisfying));
    }

    #[test]
    fn ppsz_on_unit_is_certain() {
        assert_eq!(exact_success_ppsz(&CnfFormula::from_dimacs_clauses(&[&[1]])).unwrap(), 1.0);
    }

    #[test]
    fn ppsz_on_binary_clause() {
        // The first variable is guessed and the second forced whenever the
        // guess falsified it, so every (β, order) succeeds.
        let f = CnfFormula::from_dimacs_clauses(&[&[1, 2]]);
        assert_eq!(exact_success_ppsz(&f).unwrap(), 1.0);
    }

    #[test]
    fn ppsz_meets_ppz_bound_on_unique_instances() {
        for seed in 0..10 {
            let f = planted_unique_kcnf(5, 3, seed).unwrap();
            let p = exact_success_ppsz(&f).unwrap();
            assert!(p >= 2f64.powf(-(2.0 / 3.0) * 5.0), "seed {seed}: {p}");
        }
    }

    #[test]
    fn ppsz_refuses_large_formulas() {
        let f = CnfFormula::new(7, []).unwrap();
        assert!(exact_success_ppsz(&f).is_err());
    }

    #[test]
    fn schoening_from_a_model_is_certain() {
        let f = crate::cnf::generate_random_kcnf(8, 25, 3, 3).unwrap();
        let sat = enumerate_satisfying(&f, 1).unwrap();
        let alpha = &sat.assignments[0];
        assert_eq!(exact_success_schoening(&f, Some(alpha)).unwrap(), 1.0);
    }

    #[test]
    fn schoening_single_unit() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1]]);
        let beta = Assignment::from_bits("0").unwrap();
        assert_eq!(exact_success_schoening(&f, Some(&beta)).unwrap(), 1.0);
    }

    #[test]
    fn schoening_on_unsat_is_zero() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1], &[-1]]);
        assert_eq!(exact_success_schoening(&f, None).unwrap(), 0.0);
    }
}
