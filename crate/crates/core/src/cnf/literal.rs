use std::fmt;
use std::ops::Not;

/// A propositional variable, numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// # Panics
    ///
    /// If `index` is zero.
    pub const fn new(index: u32) -> Var {
        assert!(index >= 1, "variables are numbered from 1");
        Var(index)
    }

    pub const fn try_new(index: u32) -> Option<Var> {
        if index == 0 {
            None
        } else {
            Some(Var(index))
        }
    }

    /// The 1-based index.
    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }

    /// Position of this variable in a dense 0-based array.
    #[inline]
    pub const fn slot(self) -> usize {
        (self.0 - 1) as usize
    }

    #[inline]
    pub const fn from_slot(slot: usize) -> Var {
        Var(slot as u32 + 1)
    }

    #[inline]
    pub const fn positive(self) -> Lit {
        Lit::new(self, true)
    }

    #[inline]
    pub const fn negative(self) -> Lit {
        Lit::new(self, false)
    }

    /// The literal over this variable that `value` satisfies.
    #[inline]
    pub const fn lit(self, value: bool) -> Lit {
        Lit::new(self, value)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A literal packed as `2 * var + negated`, so the derived order groups both
/// polarities of a variable together with the positive one first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub const fn new(var: Var, positive: bool) -> Lit {
        Lit((var.0 << 1) | (!positive) as u32)
    }

    /// Builds a literal from a signed DIMACS integer.
    pub const fn from_dimacs(value: i64) -> Option<Lit> {
        if value == 0 || value.unsigned_abs() > (u32::MAX >> 1) as u64 {
            return None;
        }
        let var = Var(value.unsigned_abs() as u32);
        Some(Lit::new(var, value > 0))
    }

    pub const fn to_dimacs(self) -> i64 {
        let v = self.var().0 as i64;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    #[inline]
    pub const fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub const fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Whether the literal is true when its variable takes `value`.
    #[inline]
    pub const fn satisfied_by(self, value: bool) -> bool {
        self.is_positive() == value
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "{}", self.var())
        } else {
            write!(f, "¬{}", self.var())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dimacs_conversion() {
        assert_eq!(Lit::from_dimacs(-3), Some(Var::new(3).negative()));
        assert_eq!(Lit::from_dimacs(0), None);
        assert_eq!(Lit::from_dimacs(7).unwrap().to_dimacs(), 7);
    }

    #[test]
    fn positive_sorts_first() {
        let x = Var::new(2);
        assert!(x.positive() < x.negative());
        assert!(x.negative() < Var::new(3).positive());
    }

    proptest! {
        #[test]
        fn negation_is_an_involution(v in 1u32..1_000_000, pos: bool) {
            let lit = Lit::new(Var::new(v), pos);
            prop_assert_eq!(!!lit, lit);
            prop_assert_ne!(!lit, lit);
            prop_assert_eq!((!lit).var(), lit.var());
        }
    }
}
