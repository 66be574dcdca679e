use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::tree::CriticalClauseTree;
use super::CctError;
use crate::bounds::quadrature::integrate_with_breaks;
use crate::bounds::HCurve;
use crate::cnf::Var;
use crate::solvers::repetition_rng;

/// Label limit for [`q_exact_small`].
pub const MAX_EXACT_LABELS: usize = 8;
const SHARD: usize = 4096;
const TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PlacementKind {
    Uniform,
    /// Defining variables are placed with `Pr[π(v) ≤ r] = H(r)`.
    HBiased { curve: HCurve },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementDistribution {
    pub kind: PlacementKind,
    pub defining: BTreeSet<Var>,
}

impl PlacementDistribution {
    pub fn uniform() -> PlacementDistribution {
        PlacementDistribution {
            kind: PlacementKind::Uniform,
            defining: BTreeSet::new(),
        }
    }

    pub fn h_biased(curve: HCurve, defining: BTreeSet<Var>) -> PlacementDistribution {
        PlacementDistribution {
            kind: PlacementKind::HBiased { curve },
            defining,
        }
    }

    fn curve_for(&self, var: Var) -> Option<&HCurve> {
        match &self.kind {
            PlacementKind::HBiased { curve } if self.defining.contains(&var) => Some(curve),
            _ => None,
        }
    }

    /// Maps a uniform draw `u` to the placement of `var`.
    pub fn place(&self, var: Var, u: f64) -> f64 {
        self.curve_for(var).map_or(u, |h| h.inverse(u))
    }

    /// `Pr[π(var) < t]`.
    pub fn cdf(&self, var: Var, t: f64) -> f64 {
        self.curve_for(var).map_or(t.clamp(0.0, 1.0), |h| h.value(t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QEstimate {
    pub mean: f64,
    /// Binomial standard error.
    pub stderr: f64,
    pub samples: u64,
}

/// Node data flattened for repeated evaluation. Node ids increase away from
/// the root, so a reverse sweep visits children first.
struct Flat {
    label: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    labels: Vec<Var>,
}

impl Flat {
    fn new(tree: &CriticalClauseTree) -> Flat {
        let labels = tree.labels();
        let index: HashMap<Var, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Flat {
            label: tree
                .nodes()
                .iter()
                .enumerate()
                .map(|(i, n)| if i == 0 { None } else { n.label.map(|v| index[&v]) })
                .collect(),
            children: tree.nodes().iter().map(|n| n.children.clone()).collect(),
            labels,
        }
    }

    /// Whether the nodes whose label satisfies `before` contain a cut.
    fn has_cut(&self, before: impl Fn(usize) -> bool, covered: &mut [bool]) -> bool {
        for v in (0..self.label.len()).rev() {
            let kids = &self.children[v];
            let inner = !kids.is_empty() && kids.iter().all(|&c| covered[c]);
            covered[v] = if v == 0 { inner } else { self.label[v].is_some_and(&before) || inner };
        }
        covered[0]
    }
}

/// Estimates the probability that the labeled nodes placed before the root
/// contain a cut. Each label is drawn once per sample however often it
/// occurs; unlabeled nodes never count as placed before the root.
///
/// Samples are split into fixed shards, each seeded from `(seed, shard)`, so
/// the result does not depend on the thread count.
pub fn q_monte_carlo(tree: &CriticalClauseTree, dist: &PlacementDistribution, samples: u64, seed: u64) -> QEstimate {
    let flat = Flat::new(tree);
    let x = tree.root_var();
    let shards = samples.div_ceil(SHARD as u64);
    let hits: u64 = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = repetition_rng(seed, shard);
            let count = (samples - shard * SHARD as u64).min(SHARD as u64);
            let mut values = vec![0.0; flat.labels.len()];
            let mut covered = vec![false; flat.label.len()];
            let mut hits = 0;
            for _ in 0..count {
                let root = dist.place(x, rng.random());
                for (slot, &var) in values.iter_mut().zip(&flat.labels) {
                    *slot = dist.place(var, rng.random());
                }
                if flat.has_cut(|i| values[i] < root, &mut covered) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let n = samples.max(1) as f64;
    let mean = hits as f64 / n;
    QEstimate {
        mean,
        stderr: (mean * (1.0 - mean) / n).sqrt(),
        samples,
    }
}

/// Integrates `g(t)` against the root's placement law.
fn over_root(dist: &PlacementDistribution, x: Var, g: impl Fn(f64) -> f64) -> f64 {
    let (breaks, curve) = match dist.curve_for(x) {
        Some(h) => (h.kinks().iter().map(|&r| h.value(r)).collect::<Vec<_>>(), Some(h)),
        None => (
            match &dist.kind {
                PlacementKind::HBiased { curve } => curve.kinks(),
                PlacementKind::Uniform => Vec::new(),
            },
            None,
        ),
    };
    integrate_with_breaks(|u| g(curve.map_or(u, |h| h.inverse(u))), 0.0, 1.0, &breaks, TOL)
}

/// Exact `Q` for trees with at most [`MAX_EXACT_LABELS`] distinct labels
/// below the root, by summing over which labels precede the root.
///
/// Under uniform placement a given set `S` out of `L` labels is exactly the
/// set before the root with probability `|S|! (L-|S|)! / (L+1)!`. Otherwise
/// the root's placement is integrated out numerically.
pub fn q_exact_small(tree: &CriticalClauseTree, dist: &PlacementDistribution) -> Result<f64, CctError> {
    let flat = Flat::new(tree);
    let l = flat.labels.len();
    if l > MAX_EXACT_LABELS {
        return Err(CctError::TooManyLabels {
            count: l,
            max: MAX_EXACT_LABELS,
        });
    }
    let mut covered = vec![false; flat.label.len()];
    let good: Vec<u32> = (0u32..1 << l)
        .filter(|&s| flat.has_cut(|i| s >> i & 1 == 1, &mut covered))
        .collect();
    if matches!(dist.kind, PlacementKind::Uniform) {
        let fact = |m: usize| (1..=m).map(|i| i as f64).product::<f64>();
        let total = fact(l + 1);
        return Ok(good
            .iter()
            .map(|&s| {
                let m = s.count_ones() as usize;
                fact(m) * fact(l - m) / total
            })
            .sum());
    }
    let x = tree.root_var();
    Ok(over_root(dist, x, |t| {
        let p: Vec<f64> = flat.labels.iter().map(|&v| dist.cdf(v, t)).collect();
        good.iter()
            .map(|&s| {
                p.iter()
                    .enumerate()
                    .map(|(i, &pi)| if s >> i & 1 == 1 { pi } else { 1.0 - pi })
                    .product::<f64>()
            })
            .sum()
    }))
}

/// Exact `Q` for trees whose labels are all distinct, any size. With the
/// root at `t`, node `v` is covered with probability
/// `p_v + (1 - p_v) · Π c(children)`, independently across subtrees.
pub fn q_exact_distinct(tree: &CriticalClauseTree, dist: &PlacementDistribution) -> Result<f64, CctError> {
    let labeled = tree.nodes()[1..].iter().filter(|n| n.label.is_some()).count();
    if labeled != tree.labels().len() {
        return Err(CctError::RepeatedLabels);
    }
    let nodes = tree.nodes();
    let x = tree.root_var();
    Ok(over_root(dist, x, |t| {
        let mut c = vec![0.0; nodes.len()];
        for v in (0..nodes.len()).rev() {
            let kids = &nodes[v].children;
            let inner = if kids.is_empty() { 0.0 } else { kids.iter().map(|&k| c[k]).product() };
            c[v] = match nodes[v].label {
                Some(var) if v != 0 => {
                    let p = dist.cdf(var, t);
                    p + (1.0 - p) * inner
                }
                _ => inner,
            };
        }
        c[0]
    }))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn two_leaves() -> CriticalClauseTree {
        let mut t = CriticalClauseTree::new(Var::new(1));
        t.add_child(0, Some(Var::new(2)));
        t.add_child(0, Some(Var::new(3)));
        t
    }

    /// Random tree on labels `x2..=x{labels+1}`, arity ≤ 2, paths distinct.
    fn random_tree(rng: &mut ChaCha8Rng, max_nodes: usize, labels: u32) -> CriticalClauseTree {
        let mut t = CriticalClauseTree::new(Var::new(1));
        let mut frontier = vec![0];
        while let Some(v) = frontier.pop() {
            if t.len() >= max_nodes {
                break;
            }
            let path: BTreeSet<Var> = t.path_labels(v).into_iter().collect();
            for _ in 0..rng.random_range(0..=2) {
                if t.len() >= max_nodes {
                    break;
                }
                let free: Vec<Var> = (2..=labels + 1).map(Var::new).filter(|v| !path.contains(v)).collect();
                let label = if free.is_empty() || rng.random_bool(0.1) {
                    None
                } else {
                    Some(free[rng.random_range(0..free.len())])
                };
                let c = t.add_child(v, label);
                if label.is_some() {
                    frontier.insert(0, c);
                }
            }
        }
        t
    }

    #[test]
    fn bare_root_is_zero() {
        let t = CriticalClauseTree::new(Var::new(1));
        let u = PlacementDistribution::uniform();
        assert_eq!(q_exact_small(&t, &u).unwrap(), 0.0);
        assert_eq!(q_exact_distinct(&t, &u).unwrap(), 0.0);
        assert_eq!(q_monte_carlo(&t, &u, 100, 1).mean, 0.0);
    }

    #[test]
    fn two_leaves_one_third() {
        let t = two_leaves();
        let u = PlacementDistribution::uniform();
        assert!((q_exact_small(&t, &u).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((q_exact_distinct(&t, &u).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        let est = q_monte_carlo(&t, &u, 100_000, 7);
        assert!((est.mean - 1.0 / 3.0).abs() < 3.0 * est.stderr, "{est:?}");
    }

    #[test]
    fn identity_curve_is_uniform() {
        let t = two_leaves();
        let d = PlacementDistribution::h_biased(HCurve::identity(), [Var::new(2), Var::new(3)].into());
        assert!((q_exact_small(&t, &d).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let t = CriticalClauseTree::full(2, 3);
        let u = PlacementDistribution::uniform();
        assert_eq!(q_monte_carlo(&t, &u, 10_000, 3), q_monte_carlo(&t, &u, 10_000, 3));
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| q_monte_carlo(&t, &u, 10_000, 3));
        assert_eq!(single, q_monte_carlo(&t, &u, 10_000, 3));
    }

    #[test]
    fn exact_methods_agree() {
        let t = CriticalClauseTree::full(2, 2);
        let u = PlacementDistribution::uniform();
        let a = q_exact_small(&t, &u).unwrap();
        let b = q_exact_distinct(&t, &u).unwrap();
        assert!((a - b).abs() < 1e-12, "{a} {b}");
        let h = HCurve::three_sat(0.52455825).unwrap();
        let d = PlacementDistribution::h_biased(h, [Var::new(4), Var::new(7)].into());
        let a = q_exact_small(&t, &d).unwrap();
        let b = q_exact_distinct(&t, &d).unwrap();
        assert!((a - b).abs() < 1e-10, "{a} {b}");
    }

    #[test]
    fn repeated_labels_refused_by_distinct() {
        let mut t = two_leaves();
        t.add_child(1, Some(Var::new(3)));
        let u = PlacementDistribution::uniform();
        assert_eq!(q_exact_distinct(&t, &u), Err(CctError::RepeatedLabels));
        assert!(q_exact_small(&t, &u).is_ok());
    }

    #[test]
    fn too_many_labels_refused() {
        let t = CriticalClauseTree::full(2, 3);
        assert!(matches!(
            q_exact_small(&t, &PlacementDistribution::uniform()),
            Err(CctError::TooManyLabels { count: 14, .. })
        ));
    }

    #[test]
    fn monte_carlo_matches_exact_on_random_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = HCurve::three_sat(0.52455825).unwrap();
        for i in 0..50 {
            let t = random_tree(&mut rng, 9, 6);
            let dist = if i % 2 == 0 {
                PlacementDistribution::uniform()
            } else {
                PlacementDistribution::h_biased(h, [Var::new(2), Var::new(5)].into())
            };
            let exact = q_exact_small(&t, &dist).unwrap();
            let est = q_monte_carlo(&t, &dist, 20_000, i);
            let sigma = est.stderr.max(1e-9);
            assert!((est.mean - exact).abs() <= 3.0 * sigma, "tree {i}: {est:?} vs {exact}\n{t}");
        }
    }

    #[test]
    fn extending_a_leaf_never_lowers_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = PlacementDistribution::uniform();
        for _ in 0..50 {
            let mut t = random_tree(&mut rng, 7, 5);
            let before = q_exact_small(&t, &u).unwrap();
            let leaf = t.leaves().filter(|&v| v != 0).last();
            let Some(leaf) = leaf else { continue };
            let path: BTreeSet<Var> = t.path_labels(leaf).into_iter().collect();
            if let Some(free) = (2..=6).map(Var::new).find(|v| !path.contains(v)) {
                t.add_child(leaf, Some(free));
                assert!(q_exact_small(&t, &u).unwrap() >= before - 1e-12);
            }
        }
    }

    #[test]
    fn bias_helps_when_defining_labels_are_leaves() {
        let h = HCurve::three_sat(0.52455825).unwrap();
        for arity in 1..=2 {
            let t = CriticalClauseTree::full(arity, 2);
            let leaves: BTreeSet<Var> = t.leaves().filter_map(|v| t.node(v).label).collect();
            let biased = PlacementDistribution::h_biased(h, leaves);
            let u = PlacementDistribution::uniform();
            assert!(q_exact_small(&t, &biased).unwrap() >= q_exact_small(&t, &u).unwrap() - 1e-12);
        }
    }

    #[test]
    fn full_binary_trees_increase_with_depth() {
        let u = PlacementDistribution::uniform();
        let qs: Vec<f64> = (1..=6).map(|d| q_exact_distinct(&CriticalClauseTree::full(2, d), &u).unwrap()).collect();
        assert!(qs.windows(2).all(|w| w[1] > w[0]), "{qs:?}");
        assert!(*qs.last().unwrap() < 2.0 - 2.0 * 2f64.ln());
    }
}
