use std::collections::BTreeMap;

use crate::cnf::{Assignment, PackedFormula, Var};

use super::{OracleError, SatSet};

/// `B(D_α, α)`: every assignment agreeing with `α` on the defining set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcubeBlock {
    pub alpha: Assignment,
    /// `D_α`, ascending.
    pub defining: Vec<Var>,
}

impl SubcubeBlock {
    pub fn is_defining(&self, var: Var) -> bool {
        self.defining.binary_search(&var).is_ok()
    }

    /// `N_α`, ascending.
    pub fn nondefining(&self) -> Vec<Var> {
        (1..=self.alpha.num_vars())
            .map(Var::new)
            .filter(|&v| !self.is_defining(v))
            .collect()
    }

    pub fn contains(&self, beta: &Assignment) -> bool {
        self.defining.iter().all(|&v| beta.get(v) == self.alpha.get(v))
    }

    fn masks(&self) -> (u64, u64) {
        let n = self.alpha.num_vars();
        let mask = self
            .defining
            .iter()
            .fold(0, |m, &v| m | PackedFormula::bit_of(n, v));
        (mask, self.alpha.to_index() & mask)
    }
}

/// A partition of `{0,1}^V` into subcubes, one per member of the source set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcubePartition {
    pub num_vars: u32,
    /// Ordered like the source set.
    pub blocks: Vec<SubcubeBlock>,
}

impl SubcubePartition {
    pub fn block_of(&self, alpha: &Assignment) -> Option<&SubcubeBlock> {
        self.blocks
            .binary_search_by(|b| b.alpha.cmp(alpha))
            .ok()
            .map(|i| &self.blocks[i])
    }

    /// Checks disjointness, coverage and `α ∈ B_α` by walking all of
    /// `{0,1}^V`.
    pub fn verify(&self) -> Result<(), OracleError> {
        if self.num_vars >= PackedFormula::MAX_VARS {
            return Err(OracleError::TooManyVariables {
                num_vars: self.num_vars,
                limit: PackedFormula::MAX_VARS - 1,
            });
        }
        let masks: Vec<(u64, u64)> = self.blocks.iter().map(SubcubeBlock::masks).collect();
        for (block, &(mask, value)) in self.blocks.iter().zip(&masks) {
            if block.alpha.to_index() & mask != value {
                return Err(OracleError::PartitionViolation(format!(
                    "{} lies outside its own block",
                    block.alpha
                )));
            }
        }
        for point in 0..(1u64 << self.num_vars) {
            let hits = masks.iter().filter(|&&(m, v)| point & m == v).count();
            if hits != 1 {
                let what = if hits == 0 { "uncovered" } else { "covered twice" };
                return Err(OracleError::PartitionViolation(format!(
                    "{} is {what}",
                    Assignment::from_index(point, self.num_vars)
                )));
            }
        }
        Ok(())
    }
}

/// Partition with the ascending variable order.
pub fn subcube_partition_ascending(set: &SatSet) -> Result<SubcubePartition, OracleError> {
    let order: Vec<Var> = (1..=set.num_vars).map(Var::new).collect();
    subcube_partition(set, &order)
}

/// Splits `set` recursively on the first variable of `order` where its
/// members differ. The split variable becomes defining for both sides; a
/// singleton keeps the whole remaining cube.
pub fn subcube_partition(set: &SatSet, order: &[Var]) -> Result<SubcubePartition, OracleError> {
    if set.is_empty() {
        return Err(OracleError::EmptySet);
    }
    let n = set.num_vars;
    let mut seen = vec![false; n as usize];
    for &v in order {
        if v.get() > n || std::mem::replace(&mut seen[v.slot()], true) {
            return Err(OracleError::InvalidOrder(n));
        }
    }
    if order.len() != n as usize {
        return Err(OracleError::InvalidOrder(n));
    }

    let mut defining: BTreeMap<usize, Vec<Var>> = BTreeMap::new();
    let members: Vec<usize> = (0..set.len()).collect();
    split(&set.assignments, members, order, Vec::new(), &mut defining);
    let mut blocks: Vec<SubcubeBlock> = defining
        .into_iter()
        .map(|(i, mut d)| {
            d.sort_unstable();
            SubcubeBlock {
                alpha: set.assignments[i].clone(),
                defining: d,
            }
        })
        .collect();
    blocks.sort_by(|a, b| a.alpha.cmp(&b.alpha));
    Ok(SubcubePartition { num_vars: n, blocks })
}

fn split(
    all: &[Assignment],
    members: Vec<usize>,
    order: &[Var],
    path: Vec<Var>,
    out: &mut BTreeMap<usize, Vec<Var>>,
) {
    if members.len() == 1 {
        out.insert(members[0], path);
        return;
    }
    let first = &all[members[0]];
    // Distinct members differ somewhere, so the scan always finds a variable.
    let pos = order
        .iter()
        .position(|&v| members.iter().any(|&m| all[m].get(v) != first.get(v)))
        .expect("members are distinct");
    let var = order[pos];
    let (ones, zeros): (Vec<usize>, Vec<usize>) = members.into_iter().partition(|&m| all[m].get(var));
    let mut path = path;
    path.push(var);
    split(all, zeros, &order[pos + 1..], path.clone(), out);
    split(all, ones, &order[pos + 1..], path, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{generate_random_kcnf, CnfFormula};
    use crate::oracle::{critical_variables, enumerate_satisfying};

    #[test]
    fn singleton_gets_whole_cube() {
        let s = SatSet::from_assignments(3, vec![Assignment::from_index(5, 3)]);
        let p = subcube_partition_ascending(&s).unwrap();
        assert!(p.blocks[0].defining.is_empty());
        assert_eq!(p.blocks[0].nondefining().len(), 3);
        p.verify().unwrap();
    }

    #[test]
    fn full_cube_gives_singletons() {
        let all = (0..16).map(|i| Assignment::from_index(i, 4)).collect();
        let p = subcube_partition_ascending(&SatSet::from_assignments(4, all)).unwrap();
        assert!(p.blocks.iter().all(|b| b.defining.len() == 4));
        p.verify().unwrap();
    }

    #[test]
    fn binary_clause_partition_is_valid() {
        let f = CnfFormula::from_dimacs_clauses(&[&[1, 2]]);
        let s = enumerate_satisfying(&f, usize::MAX).unwrap();
        let p = subcube_partition_ascending(&s).unwrap();
        p.verify().unwrap();
        assert_eq!(p.blocks.len(), 3);
    }

    #[test]
    fn empty_set_is_rejected() {
        let s = SatSet::from_assignments(2, vec![]);
        assert_eq!(subcube_partition_ascending(&s), Err(OracleError::EmptySet));
    }

    #[test]
    fn bad_order_is_rejected() {
        let s = SatSet::from_assignments(2, vec![Assignment::from_index(0, 2)]);
        assert_eq!(
            subcube_partition(&s, &[Var::new(1), Var::new(1)]),
            Err(OracleError::InvalidOrder(2))
        );
    }

    #[test]
    fn verify_catches_overlap() {
        let a = Assignment::from_index(0, 2);
        let b = Assignment::from_index(3, 2);
        let p = SubcubePartition {
            num_vars: 2,
            blocks: vec![
                SubcubeBlock { alpha: a, defining: vec![] },
                SubcubeBlock { alpha: b, defining: vec![Var::new(1)] },
            ],
        };
        assert!(matches!(p.verify(), Err(OracleError::PartitionViolation(_))));
    }

    #[test]
    fn critical_variables_are_nondefining() {
        for seed in 0..50 {
            let f = generate_random_kcnf(8, 30, 3, seed).unwrap();
            let s = enumerate_satisfying(&f, usize::MAX).unwrap();
            if s.is_empty() {
                continue;
            }
            let vc = critical_variables(&f).unwrap();
            let p = subcube_partition_ascending(&s).unwrap();
            p.verify().unwrap();
            for block in &p.blocks {
                assert!(vc.critical.iter().all(|&v| !block.is_defining(v)));
            }
        }
    }
}
