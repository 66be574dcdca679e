//! Formulas, clauses, literals and assignments.

mod assignment;
mod clause;
mod formula;
mod generate;
mod literal;
mod packed;

pub use assignment::{Assignment, PartialAssignment};
pub use clause::Clause;
pub use formula::{CnfFormula, Restricted};
pub use generate::generate_random_kcnf;
pub use literal::{Lit, Var};
pub(crate) use generate::random_clause;
pub(crate) use packed::PackedFormula;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("clause contains both polarities of {0}")]
    ComplementaryLiterals(Var),
    #[error("{var} exceeds the declared range of {num_vars} variables")]
    VariableOutOfRange { var: Var, num_vars: u32 },
    #[error("assignment covers {found} variables, formula declares {expected}")]
    AssignmentTooShort { expected: u32, found: u32 },
    #[error("{0} is already bound")]
    AlreadyBound(Var),
    #[error("cannot draw width-{k} clauses over {n} variables")]
    WidthExceedsVariables { n: u32, k: u32 },
    #[error("only {available} distinct width-{k} clauses exist over {n} variables, {requested} requested")]
    TooManyClauses {
        n: u32,
        k: u32,
        requested: usize,
        available: u128,
    },
}
