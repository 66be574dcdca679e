use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::Serialize;

use super::CctError;
use crate::cnf::{Assignment, Clause, CnfFormula, Var};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CctNode {
    /// `None` for unlabeled nodes.
    pub label: Option<Var>,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Hops from the root.
    pub depth: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeMode {
    /// Extend every leaf to the target depth; a satisfying flip is an error.
    Full,
    /// Leaves labeled by defining variables stay leaves, and so do nodes
    /// whose flipped path already satisfies the formula.
    DefiningLeaf,
}

/// Overrides for the target depth and node budget. `None` picks the
/// defaults derived from the formula.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CctParams {
    pub depth: Option<u32>,
    /// `Some(usize::MAX)` disables the budget.
    pub node_budget: Option<usize>,
}

/// How a tree was built from a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub fingerprint: u64,
    pub alpha: Assignment,
    pub mode: TreeMode,
    pub defining: BTreeSet<Var>,
    pub depth: u32,
    /// The clause each extended node was expanded with.
    pub clauses: Vec<Option<Clause>>,
}

/// An arena tree; node 0 is the root and children always have larger ids
/// than their parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalClauseTree {
    nodes: Vec<CctNode>,
    construction: Option<Construction>,
}

/// `⌊log_k(log₂ n)⌋`, or 0 when that logarithm is below 1.
pub fn default_depth(num_vars: u32, k: usize) -> u32 {
    let log_n = f64::from(num_vars.max(1)).log2();
    let k = k.max(2) as f64;
    let mut d = 0;
    while k.powi(d as i32 + 1) <= log_n {
        d += 1;
    }
    d
}

/// `max(1, ⌊log₂ n⌋)`.
pub fn default_node_budget(num_vars: u32) -> usize {
    (num_vars.max(1).ilog2() as usize).max(1)
}

/// Grows the tree for `x` breadth first.
///
/// At each extendable node with path labels `L`, the clause of `f` falsified
/// by `α ⊕ L` with the fewest literals falsified by `α` is chosen (first in
/// clause order on ties); every such literal becomes a child, or a single
/// unlabeled child if there are none. Unlabeled nodes are never extended.
pub fn build_cct(
    f: &CnfFormula,
    alpha: &Assignment,
    x: Var,
    defining: &BTreeSet<Var>,
    mode: TreeMode,
    params: CctParams,
) -> Result<CriticalClauseTree, CctError> {
    if alpha.num_vars() < f.num_vars() || !f.is_satisfied_by(alpha) {
        return Err(CctError::NotSatisfying);
    }
    if x.get() > f.num_vars() {
        return Err(CctError::UnknownVariable(x));
    }
    if defining.contains(&x) {
        return Err(CctError::DefiningRoot(x));
    }
    let depth = params.depth.unwrap_or_else(|| default_depth(f.num_vars(), f.width()));
    let budget = params.node_budget.unwrap_or_else(|| default_node_budget(f.num_vars()));

    let mut tree = CriticalClauseTree::new(x);
    let mut clauses = vec![None];
    let mut next = 0;
    while next < tree.nodes.len() {
        let v = next;
        next += 1;
        let node = &tree.nodes[v];
        let Some(label) = node.label else { continue };
        if node.depth >= depth || (v != 0 && mode == TreeMode::DefiningLeaf && defining.contains(&label)) {
            continue;
        }
        let path = tree.path_labels(v);
        let flipped = alpha.flipped(path.iter().copied());
        let chosen = f
            .clauses()
            .iter()
            .filter(|c| !c.is_satisfied_by(&flipped))
            .min_by_key(|c| c.lits().iter().filter(|l| !alpha.satisfies(**l)).count());
        let Some(clause) = chosen else {
            match mode {
                TreeMode::Full => return Err(CctError::Contradiction { path }),
                TreeMode::DefiningLeaf => continue,
            }
        };
        let labels: Vec<Option<Var>> = clause
            .lits()
            .iter()
            .filter(|l| !alpha.satisfies(**l))
            .map(|l| Some(l.var()))
            .collect();
        let labels = if labels.is_empty() { vec![None] } else { labels };
        if tree.nodes.len() + labels.len() > budget {
            return Err(CctError::BudgetExceeded { budget });
        }
        clauses[v] = Some(clause.clone());
        for label in labels {
            tree.add_child(v, label);
            clauses.push(None);
        }
    }
    tree.construction = Some(Construction {
        fingerprint: f.fingerprint(),
        alpha: alpha.clone(),
        mode,
        defining: defining.clone(),
        depth,
        clauses,
    });
    Ok(tree)
}

impl CriticalClauseTree {
    /// A bare root, for assembling trees by hand with [`Self::add_child`].
    pub fn new(root: Var) -> CriticalClauseTree {
        CriticalClauseTree {
            nodes: vec![CctNode {
                label: Some(root),
                parent: None,
                children: Vec::new(),
                depth: 0,
            }],
            construction: None,
        }
    }

    /// # Panics
    ///
    /// If `parent` is not a node.
    pub fn add_child(&mut self, parent: NodeId, label: Option<Var>) -> NodeId {
        let id = self.nodes.len();
        let depth = self.nodes[parent].depth + 1;
        self.nodes.push(CctNode {
            label,
            parent: Some(parent),
            children: Vec::new(),
            depth,
        });
        self.nodes[parent].children.push(id);
        id
    }

    /// The complete tree with the given arity and depth, labeled `x1, x2, …`
    /// in breadth-first order.
    pub fn full(arity: usize, depth: u32) -> CriticalClauseTree {
        let mut tree = CriticalClauseTree::new(Var::new(1));
        let mut next = 0;
        while next < tree.nodes.len() {
            if tree.nodes[next].depth < depth {
                for _ in 0..arity {
                    let label = Var::new(tree.nodes.len() as u32 + 1);
                    tree.add_child(next, Some(label));
                }
            }
            next += 1;
        }
        tree
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn root_var(&self) -> Var {
        self.nodes[0].label.expect("root is labeled")
    }

    pub fn node(&self, id: NodeId) -> &CctNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[CctNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn construction(&self) -> Option<&Construction> {
        self.construction.as_ref()
    }

    pub fn height(&self) -> u32 {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|&v| self.nodes[v].children.is_empty())
    }

    /// Labels from `v` up to the root, root last.
    pub fn path_labels(&self, v: NodeId) -> Vec<Var> {
        let mut out = Vec::new();
        let mut cur = Some(v);
        while let Some(id) = cur {
            out.extend(self.nodes[id].label);
            cur = self.nodes[id].parent;
        }
        out
    }

    /// Distinct labels outside the root, sorted.
    pub fn labels(&self) -> Vec<Var> {
        let set: BTreeSet<Var> = self.nodes[1..].iter().filter_map(|n| n.label).collect();
        set.into_iter().collect()
    }

    pub fn max_children(&self) -> usize {
        self.nodes.iter().map(|n| n.children.len()).max().unwrap_or(0)
    }

    /// No label repeats on any root-to-leaf path.
    pub fn paths_distinct(&self) -> bool {
        self.leaves().all(|leaf| {
            let path = self.path_labels(leaf);
            let set: BTreeSet<Var> = path.iter().copied().collect();
            set.len() == path.len()
        })
    }

    /// One node per line in preorder: indentation, depth, then the label or
    /// `·`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            let node = &self.nodes[v];
            let label = node.label.map_or_else(|| "·".to_string(), |x| x.to_string());
            let _ = writeln!(out, "{:indent$}{} {}", "", node.depth, label, indent = 2 * node.depth as usize);
            stack.extend(node.children.iter().rev());
        }
        out
    }

    /// Children sorted by label with unlabeled nodes last, recursively, as a
    /// nested string. Equal for trees that differ only in child order.
    pub fn shape(&self) -> String {
        self.shape_of(0)
    }

    fn shape_of(&self, v: NodeId) -> String {
        let node = &self.nodes[v];
        let mut kids: Vec<String> = node.children.iter().map(|&c| self.shape_of(c)).collect();
        kids.sort();
        let label = node.label.map_or_else(|| "~".to_string(), |x| x.to_string());
        if kids.is_empty() {
            label
        } else {
            format!("{label}({})", kids.join(","))
        }
    }
}

impl fmt::Display for CriticalClauseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
