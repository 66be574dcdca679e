//! Critical clause trees: construction from a formula, minimal cuts with
//! their resolution certificates, and the probability `Q` that a random
//! placement puts a whole cut before the root.

mod cuts;
mod probability;
mod tree;

pub use cuts::{certify_cut, enumerate_cuts, is_cut, Cut, CutEnumeration, DEFAULT_CUT_LIMIT};
pub use probability::{
    q_exact_distinct, q_exact_small, q_monte_carlo, PlacementDistribution, PlacementKind, QEstimate,
    MAX_EXACT_LABELS,
};
pub use tree::{build_cct, default_depth, default_node_budget, CctNode, CctParams, Construction, CriticalClauseTree, NodeId, TreeMode};

use thiserror::Error;

use crate::cnf::Var;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CctError {
    #[error("the assignment does not satisfy the formula")]
    NotSatisfying,
    #[error("{0} is not a variable of the formula")]
    UnknownVariable(Var),
    #[error("root {0} is a defining variable")]
    DefiningRoot(Var),
    #[error("tree needs more than {budget} nodes")]
    BudgetExceeded { budget: usize },
    /// Full mode only: flipping the path labels satisfies the formula, so
    /// the root is not critical.
    #[error("flipping {path:?} satisfies the formula")]
    Contradiction { path: Vec<Var> },
    #[error("node set is not a cut")]
    NotACut,
    #[error("no clause of the closure certifies the cut")]
    NoCertificate,
    #[error("tree was not built from a formula")]
    NoConstruction,
    #[error("{count} distinct labels, at most {max} supported")]
    TooManyLabels { count: usize, max: usize },
    #[error("labels repeat across branches")]
    RepeatedLabels,
}
