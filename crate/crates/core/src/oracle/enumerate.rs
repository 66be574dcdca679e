use crate::cnf::{Assignment, CnfFormula, PackedFormula};

use super::OracleError;

/// Largest declared variable count [`enumerate_satisfying`] will walk.
pub const DEFAULT_ENUMERATION_LIMIT: u32 = 24;

/// A set of satisfying assignments, in lexicographic order (`x1` most
/// significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatSet {
    pub num_vars: u32,
    pub assignments: Vec<Assignment>,
    /// Set when enumeration stopped at the cap; the set is then a prefix.
    pub truncated: bool,
    /// Fingerprint of the formula the set was computed from.
    pub fingerprint: u64,
}

impl SatSet {
    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn contains(&self, a: &Assignment) -> bool {
        self.assignments.binary_search(a).is_ok()
    }

    /// Builds a set from arbitrary assignments over `num_vars` variables.
    pub fn from_assignments(num_vars: u32, mut assignments: Vec<Assignment>) -> SatSet {
        assignments.sort();
        assignments.dedup();
        SatSet {
            num_vars,
            assignments,
            truncated: false,
            fingerprint: 0,
        }
    }
}

pub(super) fn packed_or_refuse(f: &CnfFormula, limit: u32) -> Result<PackedFormula, OracleError> {
    let limit = limit.min(PackedFormula::MAX_VARS - 1);
    if f.num_vars() > limit {
        return Err(OracleError::TooManyVariables {
            num_vars: f.num_vars(),
            limit,
        });
    }
    Ok(PackedFormula::new(f).expect("within packed range"))
}

/// Exact `sat(F)` over the declared variable range, or its first `cap`
/// members with `truncated` set.
pub fn enumerate_satisfying(f: &CnfFormula, cap: usize) -> Result<SatSet, OracleError> {
    enumerate_satisfying_with_limit(f, cap, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_satisfying_with_limit(
    f: &CnfFormula,
    cap: usize,
    limit: u32,
) -> Result<SatSet, OracleError> {
    let packed = packed_or_refuse(f, limit)?;
    let n = f.num_vars();
    let mut assignments = Vec::new();
    let mut truncated = false;
    for bits in 0..(1u64 << n) {
        if packed.is_satisfied(bits) {
            if assignments.len() == cap {
                truncated = true;
                break;
            }
            assignments.push(Assignment::from_index(bits, n));
        }
    }
    Ok(SatSet {
        num_vars: n,
        assignments,
        truncated,
        fingerprint: f.fingerprint(),
    })
}

/// `|sat(F)|` over the declared range.
pub fn count_satisfying(f: &CnfFormula) -> Result<u64, OracleError> {
    let packed = packed_or_refuse(f, DEFAULT_ENUMERATION_LIMIT)?;
    Ok((0..(1u64 << f.num_vars()))
        .filter(|&b| packed.is_satisfied(b))
        .count() as u64)
}
