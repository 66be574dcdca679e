use crate::cnf::{CnfFormula, Var};

use super::enumerate::packed_or_refuse;
use super::{dpll_solve, DpllVerdict, OracleError, DEFAULT_DPLL_BUDGET, DEFAULT_ENUMERATION_LIMIT};

/// The critical variables of a satisfiable formula.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalReport {
    /// `V_C`, ascending.
    pub critical: Vec<Var>,
    /// `|vbl(F)|`.
    pub num_occurring: usize,
    /// `|V_C| / |vbl(F)|`, or 1 when no variable occurs.
    pub fraction: f64,
}

impl CriticalReport {
    pub fn is_critical(&self, var: Var) -> bool {
        self.critical.binary_search(&var).is_ok()
    }
}

/// Variables of `vbl(F)` on which all satisfying assignments agree.
///
/// Formulas within the enumeration limit are decided by one pass over
/// `{0,1}^V`; larger ones cost two DPLL calls per variable.
pub fn critical_variables(f: &CnfFormula) -> Result<CriticalReport, OracleError> {
    let vars = f.vars();
    let critical = if f.num_vars() <= DEFAULT_ENUMERATION_LIMIT {
        critical_by_enumeration(f, &vars)?
    } else {
        critical_by_dpll(f, &vars)?
    };
    let fraction = if vars.is_empty() {
        1.0
    } else {
        critical.len() as f64 / vars.len() as f64
    };
    Ok(CriticalReport {
        critical,
        num_occurring: vars.len(),
        fraction,
    })
}

fn critical_by_enumeration(f: &CnfFormula, vars: &[Var]) -> Result<Vec<Var>, OracleError> {
    let packed = packed_or_refuse(f, DEFAULT_ENUMERATION_LIMIT)?;
    let n = f.num_vars();
    // Bits set in every model / clear in every model.
    let mut always_one = u64::MAX;
    let mut always_zero = u64::MAX;
    let mut any = false;
    for bits in 0..(1u64 << n) {
        if packed.is_satisfied(bits) {
            any = true;
            always_one &= bits;
            always_zero &= !bits;
        }
    }
    if !any {
        return Err(OracleError::Unsatisfiable);
    }
    Ok(vars
        .iter()
        .copied()
        .filter(|&v| (always_one | always_zero) & packed.bit(v) != 0)
        .collect())
}

fn satisfiable(f: &CnfFormula) -> Result<bool, OracleError> {
    match dpll_solve(f) {
        DpllVerdict::Sat(_) => Ok(true),
        DpllVerdict::Unsat => Ok(false),
        DpllVerdict::Unknown => Err(OracleError::Indeterminate(DEFAULT_DPLL_BUDGET)),
    }
}

fn critical_by_dpll(f: &CnfFormula, vars: &[Var]) -> Result<Vec<Var>, OracleError> {
    if !satisfiable(f)? {
        return Err(OracleError::Unsatisfiable);
    }
    let mut critical = Vec::new();
    for &v in vars {
        let zero = satisfiable(&f.restrict(v, false).formula)?;
        let one = satisfiable(&f.restrict(v, true).formula)?;
        if zero != one {
            critical.push(v);
        }
    }
    Ok(critical)
}

/// Outcome of trying every single-variable guess `(x, b)` with `x ∈ vbl(F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuessPreservation {
    /// Guesses whose residual formula stays satisfiable.
    pub preserved: u64,
    /// `2 |vbl(F)|`.
    pub trials: u64,
}

impl GuessPreservation {
    pub fn rate(&self) -> f64 {
        self.preserved as f64 / self.trials as f64
    }
}

/// Exhaustive single-guess restriction of a satisfiable formula with at least
/// one occurring variable.
pub fn guess_preservation_rate(f: &CnfFormula) -> Result<GuessPreservation, OracleError> {
    let vars = f.vars();
    if vars.is_empty() {
        return Err(OracleError::NoVariables);
    }
    if !satisfiable(f)? {
        return Err(OracleError::Unsatisfiable);
    }
    let mut preserved = 0;
    for &v in &vars {
        for b in [false, true] {
            if satisfiable(&f.restrict(v, b).formula)? {
                preserved += 1;
            }
        }
    }
    Ok(GuessPreservation {
        preserved,
        trials: 2 * vars.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::generate_random_kcnf;
    use crate::oracle::planted_unique_kcnf;

    #[test]
    fn unit_clause_is_critical() {
        let r = critical_variables(&CnfFormula::from_dimacs_clauses(&[&[1]])).unwrap();
        assert_eq!(r.critical, [Var::new(1)]);
        assert_eq!(r.fraction, 1.0);
    }

    #[test]
    fn binary_clause_has_none() {
        let r = critical_variables(&CnfFormula::from_dimacs_clauses(&[&[1, 2]])).unwrap();
        assert!(r.critical.is_empty());
        assert_eq!(r.fraction, 0.0);
    }

    #[test]
    fn empty_formula_fraction_is_one() {
        assert_eq!(critical_variables(&CnfFormula::default()).unwrap().fraction, 1.0);
    }

    #[test]
    fn unsat_is_an_error() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1], &[-1]]);
        assert_eq!(critical_variables(&f), Err(OracleError::Unsatisfiable));
    }

    #[test]
    fn unique_sat_is_fully_critical() {
        let f = planted_unique_kcnf(8, 3, 3).unwrap();
        assert_eq!(critical_variables(&f).unwrap().fraction, 1.0);
    }

    #[test]
    fn dpll_path_agrees_with_enumeration() {
        let mut checked = 0;
        for seed in 0..60 {
            let f = generate_random_kcnf(10, 38, 3, seed).unwrap();
            let Ok(report) = critical_variables(&f) else { continue };
            assert_eq!(critical_by_dpll(&f, &f.vars()).unwrap(), report.critical);
            checked += 1;
        }
        assert!(checked > 10);
    }

    #[test]
    fn preservation_is_one_minus_half_fraction() {
        for seed in 0..40 {
            let f = generate_random_kcnf(9, 36, 3, seed).unwrap();
            let Ok(report) = critical_variables(&f) else { continue };
            let g = guess_preservation_rate(&f).unwrap();
            assert_eq!(g.trials - g.preserved, report.critical.len() as u64);
        }
    }
}
