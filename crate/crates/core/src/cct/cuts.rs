use std::collections::BTreeSet;

use super::tree::{CriticalClauseTree, NodeId};
use super::CctError;
use crate::cnf::{Clause, CnfFormula, Var};

pub const DEFAULT_CUT_LIMIT: usize = 100_000;

/// A minimal cut as sorted node ids.
pub type Cut = Vec<NodeId>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutEnumeration {
    pub cuts: Vec<Cut>,
    /// Set when more than `limit` cuts exist; `cuts` then holds `limit` of them.
    pub truncated: bool,
}

impl CriticalClauseTree {
    /// Labels of the nodes in `nodes`; unlabeled nodes contribute nothing.
    pub fn vbl(&self, nodes: &[NodeId]) -> BTreeSet<Var> {
        nodes.iter().filter_map(|&v| self.node(v).label).collect()
    }
}

/// Whether every root-to-leaf path meets `nodes` below the root.
pub fn is_cut(tree: &CriticalClauseTree, nodes: &[NodeId]) -> bool {
    if nodes.iter().any(|&v| v == tree.root() || v >= tree.len()) {
        return false;
    }
    let inside: BTreeSet<NodeId> = nodes.iter().copied().collect();
    tree.leaves().all(|leaf| {
        let mut cur = Some(leaf);
        while let Some(v) = cur {
            if inside.contains(&v) {
                return true;
            }
            cur = tree.node(v).parent;
        }
        false
    })
}

/// All minimal cuts: below a node, either the node itself or one minimal cut
/// from each child subtree. A bare root has none.
pub fn enumerate_cuts(tree: &CriticalClauseTree, limit: usize) -> CutEnumeration {
    let mut truncated = false;
    let root = tree.node(tree.root());
    let cuts = if root.children.is_empty() {
        Vec::new()
    } else {
        product(tree, &root.children, limit, &mut truncated)
    };
    CutEnumeration { cuts, truncated }
}

fn subtree_cuts(tree: &CriticalClauseTree, v: NodeId, limit: usize, truncated: &mut bool) -> Vec<Cut> {
    let mut out = vec![vec![v]];
    let children = &tree.node(v).children;
    if !children.is_empty() && out.len() < limit {
        out.extend(product(tree, children, limit - 1, truncated));
    } else if !children.is_empty() {
        *truncated = true;
    }
    out
}

fn product(tree: &CriticalClauseTree, children: &[NodeId], limit: usize, truncated: &mut bool) -> Vec<Cut> {
    let mut acc: Vec<Cut> = vec![Vec::new()];
    for &c in children {
        let options = subtree_cuts(tree, c, limit, truncated);
        let mut next = Vec::with_capacity(acc.len().saturating_mul(options.len()).min(limit));
        'outer: for a in &acc {
            for o in &options {
                if next.len() == limit {
                    *truncated = true;
                    break 'outer;
                }
                let mut cut = a.clone();
                cut.extend_from_slice(o);
                next.push(cut);
            }
        }
        acc = next;
    }
    for cut in &mut acc {
        cut.sort_unstable();
    }
    acc
}

/// Finds a clause of `closure` that is critical for the root with respect to
/// the tree's assignment and whose falsified literals lie over `vbl(cut)`.
/// The shortest such clause is returned, first in clause order on ties.
pub fn certify_cut(closure: &CnfFormula, tree: &CriticalClauseTree, cut: &[NodeId]) -> Result<Clause, CctError> {
    let alpha = &tree.construction().ok_or(CctError::NoConstruction)?.alpha;
    if !is_cut(tree, cut) {
        return Err(CctError::NotACut);
    }
    let x = tree.root_var();
    let vars = tree.vbl(cut);
    closure
        .clauses()
        .iter()
        .filter(|c| {
            let mut satisfied = c.lits().iter().filter(|l| alpha.satisfies(**l));
            matches!((satisfied.next(), satisfied.next()), (Some(l), None) if l.var() == x)
                && c.lits().iter().all(|l| l.var() == x || vars.contains(&l.var()))
        })
        .min_by_key(|c| c.len())
        .cloned()
        .ok_or(CctError::NoCertificate)
}

#[cfg(test)]
mod tests {
    use super::super::tree::tests::{example_formula, example_tree};
    use super::*;
    use crate::resolution::bounded_resolution_closure;

    #[test]
    fn bare_root_has_no_cuts() {
        let t = CriticalClauseTree::new(Var::new(1));
        assert!(enumerate_cuts(&t, 10).cuts.is_empty());
    }

    #[test]
    fn two_leaves_one_cut() {
        let mut t = CriticalClauseTree::new(Var::new(1));
        let p = t.add_child(0, Some(Var::new(2)));
        let q = t.add_child(0, Some(Var::new(3)));
        let e = enumerate_cuts(&t, 10);
        assert_eq!(e.cuts, vec![vec![p, q]]);
        assert!(!e.truncated);
    }

    #[test]
    fn example_cuts() {
        let t = example_tree();
        let e = enumerate_cuts(&t, 100);
        // y-side {y} or {a}; z-side {z}, {b,c}, {b,·}.
        assert_eq!(e.cuts.len(), 6);
        assert!(e.cuts.iter().all(|c| is_cut(&t, c)));
        let ab: BTreeSet<Var> = [Var::new(4), Var::new(5)].into();
        assert!(e.cuts.iter().any(|c| t.vbl(c) == ab));
    }

    #[test]
    fn example_certificate() {
        let t = example_tree();
        let g = bounded_resolution_closure(&example_formula(), 3).unwrap();
        let ab: BTreeSet<Var> = [Var::new(4), Var::new(5)].into();
        let cut = enumerate_cuts(&t, 100).cuts.into_iter().find(|c| t.vbl(c) == ab).unwrap();
        let clause = certify_cut(g.formula(), &t, &cut).unwrap();
        assert_eq!(clause, Clause::from_dimacs(&[1, -4, -5]));
        for cut in enumerate_cuts(&t, 100).cuts {
            certify_cut(g.formula(), &t, &cut).unwrap();
        }
    }

    #[test]
    fn root_children_certified_by_construction_clause() {
        let t = example_tree();
        let f = example_formula();
        let cut = t.node(0).children.clone();
        let clause = certify_cut(&f, &t, &cut).unwrap();
        assert_eq!(Some(&clause), t.construction().unwrap().clauses[0].as_ref());
    }

    #[test]
    fn certificate_needs_resolution() {
        let t = example_tree();
        let ab: BTreeSet<Var> = [Var::new(4), Var::new(5)].into();
        let cut = enumerate_cuts(&t, 100).cuts.into_iter().find(|c| t.vbl(c) == ab).unwrap();
        assert_eq!(certify_cut(&example_formula(), &t, &cut), Err(CctError::NoCertificate));
    }

    #[test]
    fn rejects_non_cuts() {
        let t = example_tree();
        assert!(!is_cut(&t, &[1]));
        assert!(!is_cut(&t, &[0]));
        assert_eq!(certify_cut(&example_formula(), &t, &[1]), Err(CctError::NotACut));
    }

    #[test]
    fn limit_truncates() {
        let t = CriticalClauseTree::full(2, 3);
        let all = enumerate_cuts(&t, usize::MAX);
        // c(leaf) = 1, c(v) = 1 + c(child)^2: 1, 2, 5; root 5^2.
        assert_eq!(all.cuts.len(), 25);
        assert!(!all.truncated);
        let some = enumerate_cuts(&t, 10);
        assert_eq!(some.cuts.len(), 10);
        assert!(some.truncated);
        assert!(some.cuts.iter().all(|c| is_cut(&t, c)));
    }
}
