use std::fmt;

use super::{CnfError, Lit, Var};

/// A total truth assignment over the variables `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Assignment {
        Assignment { values }
    }

    pub fn all(num_vars: u32, value: bool) -> Assignment {
        Assignment {
            values: vec![value; num_vars as usize],
        }
    }

    /// Decodes `index` as a bit string with `x1` as the most significant bit,
    /// so that counting `0..2^n` visits assignments in lexicographic order.
    pub fn from_index(index: u64, num_vars: u32) -> Assignment {
        let n = num_vars as usize;
        let values = (0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect();
        Assignment { values }
    }

    /// Inverse of [`Assignment::from_index`].
    pub fn to_index(&self) -> u64 {
        self.values
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
    }

    /// Parses a string of `0`/`1` characters, `x1` first.
    pub fn from_bits(bits: &str) -> Option<Assignment> {
        bits.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Assignment::new)
    }

    pub fn to_bits(&self) -> String {
        self.values.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    #[inline]
    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    #[inline]
    pub fn get(&self, var: Var) -> bool {
        self.values[var.slot()]
    }

    pub fn try_get(&self, var: Var) -> Option<bool> {
        self.values.get(var.slot()).copied()
    }

    #[inline]
    pub fn set(&mut self, var: Var, value: bool) {
        self.values[var.slot()] = value;
    }

    #[inline]
    pub fn flip(&mut self, var: Var) {
        let slot = var.slot();
        self.values[slot] = !self.values[slot];
    }

    /// `self ⊕ vars`: a copy with every variable in `vars` flipped.
    pub fn flipped<I: IntoIterator<Item = Var>>(&self, vars: I) -> Assignment {
        let mut out = self.clone();
        for v in vars {
            out.flip(v);
        }
        out
    }

    #[inline]
    pub fn satisfies(&self, lit: Lit) -> bool {
        lit.satisfied_by(self.get(lit.var()))
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &b)| (Var::from_slot(i), b))
    }

    /// Signed DIMACS literals, one per variable.
    pub fn to_dimacs_lits(&self) -> Vec<i64> {
        self.iter().map(|(v, b)| v.lit(b).to_dimacs()).collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bits())
    }
}

/// A growing assignment. Bindings are write-once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    values: Vec<Option<bool>>,
    bound: usize,
}

impl PartialAssignment {
    pub fn empty(num_vars: u32) -> PartialAssignment {
        PartialAssignment {
            values: vec![None; num_vars as usize],
            bound: 0,
        }
    }

    #[inline]
    pub fn get(&self, var: Var) -> Option<bool> {
        self.values[var.slot()]
    }

    /// Binds `var`. Rebinding an already bound variable is an error, even to
    /// the same value.
    pub fn assign(&mut self, var: Var, value: bool) -> Result<(), CnfError> {
        let slot = self
            .values
            .get_mut(var.slot())
            .ok_or(CnfError::VariableOutOfRange { var, num_vars: 0 })?;
        if slot.is_some() {
            return Err(CnfError::AlreadyBound(var));
        }
        *slot = Some(value);
        self.bound += 1;
        Ok(())
    }

    /// Truth value of `lit` if its variable is bound.
    #[inline]
    pub fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var()).map(|b| lit.satisfied_by(b))
    }

    pub fn num_bound(&self) -> usize {
        self.bound
    }

    pub fn is_total(&self) -> bool {
        self.bound == self.values.len()
    }

    /// Converts to a total assignment, if every variable is bound.
    pub fn into_total(self) -> Option<Assignment> {
        self.values
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .map(Assignment::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_is_lexicographic() {
        let a = Assignment::from_index(0b011, 3);
        assert_eq!(a.to_bits(), "011");
        assert_eq!(a.to_index(), 3);
        assert!(Assignment::from_index(2, 3) < Assignment::from_index(3, 3));
    }

    #[test]
    fn partial_never_overwrites() {
        let mut p = PartialAssignment::empty(2);
        p.assign(Var::new(1), true).unwrap();
        assert_eq!(
            p.assign(Var::new(1), true),
            Err(CnfError::AlreadyBound(Var::new(1)))
        );
        assert!(!p.is_total());
        p.assign(Var::new(2), false).unwrap();
        assert_eq!(p.into_total().unwrap().to_bits(), "10");
    }
}
