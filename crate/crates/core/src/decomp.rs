//! Tree decompositions: validation, budgeted balanced separators, and a
//! random partial k-tree generator.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::graph::{Graph, GraphError};

/// A tree over bag nodes plus one vertex bag per node.
///
/// The type only guarantees its own shape (the node graph is a tree, bags
/// are sorted); whether it decomposes a particular graph is checked by
/// [`validate_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    tree: Graph,
    bags: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum DecompError {
    #[error("bag-node graph is not a tree")]
    NotATree,
    #[error("separator budget {0} must be a finite number >= 1")]
    BadBudget(f64),
    #[error("k-tree needs t >= 1 and n >= t + 1, got n={n}, t={t}")]
    KtreeParams { n: usize, t: usize },
    #[error("invalid decomposition: {0}")]
    Invalid(DecompositionViolation),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which decomposition axiom failed, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionViolation {
    #[error("bag {bag} mentions vertex {v} outside the graph")]
    BagVertexOutOfRange { bag: usize, v: usize },
    #[error("vertex {0} appears in no bag")]
    VertexNotCovered(usize),
    #[error("edge {0}-{1} has no bag containing both ends")]
    EdgeNotCovered(usize, usize),
    #[error("bags containing vertex {0} do not induce a connected subtree")]
    TraceDisconnected(usize),
}

impl TreeDecomposition {
    /// Builds a decomposition from bags and tree edges over bag indices.
    /// Bags are sorted and deduplicated. An empty bag list (for the empty
    /// graph) is allowed and carries no tree edges.
    pub fn new(
        bags: Vec<Vec<usize>>,
        tree_edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, DecompError> {
        let tree = Graph::new(bags.len(), tree_edges)?;
        if !bags.is_empty() && !tree.is_tree() {
            return Err(DecompError::NotATree);
        }
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Ok(TreeDecomposition { tree, bags })
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn bag_count(&self) -> usize {
        self.bags.len()
    }

    /// Tree over bag nodes.
    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    /// Largest bag size minus one; 0 for the empty decomposition.
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }
}

/// Checks the three decomposition axioms of `d` against `g` and returns
/// the width: every vertex covered, every edge inside some bag, and every
/// vertex's bags inducing a connected subtree.
pub fn validate_decomposition(g: &Graph, d: &TreeDecomposition) -> Result<usize, DecompositionViolation> {
    let n = g.vertex_count();
    let mut covered = vec![false; n];
    for (i, bag) in d.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(DecompositionViolation::BagVertexOutOfRange { bag: i, v });
            }
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(DecompositionViolation::VertexNotCovered(v));
    }
    for &(u, v) in g.edges() {
        let ok = d.bags.iter().any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok());
        if !ok {
            return Err(DecompositionViolation::EdgeNotCovered(u, v));
        }
    }
    // connected traces: BFS over tree nodes whose bag holds v
    let mut holds = vec![false; d.bag_count()];
    for v in 0..n {
        let mut total = 0;
        let mut first = usize::MAX;
        for (i, bag) in d.bags.iter().enumerate() {
            holds[i] = bag.binary_search(&v).is_ok();
            if holds[i] {
                total += 1;
                if first == usize::MAX {
                    first = i;
                }
            }
        }
        let mut reached = 1;
        let mut seen = vec![false; d.bag_count()];
        let mut queue = VecDeque::from([first]);
        seen[first] = true;
        while let Some(x) = queue.pop_front() {
            for &y in d.tree.neighbours(x) {
                if holds[y] && !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != total {
            return Err(DecompositionViolation::TraceDisconnected(v));
        }
    }
    Ok(d.width())
}

/// Outcome of [`balanced_separator`]: a vertex set of size below the
/// budget whose removal leaves only small components.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatorResult {
    /// Sorted separator vertices; always a union of bags of `d`.
    pub separator: Vec<usize>,
    /// The budget `p` the call was made with.
    pub budget: f64,
    /// The real bound `(t+1)·n/p` each remaining component satisfies.
    pub component_bound: f64,
    /// Components of `g - separator`, smallest member first.
    pub components: Vec<Vec<usize>>,
}

/// Finds a separator `S` with `|S| <= floor(p)` such that every component
/// of `g - S` has at most `(t+1)·n/p` vertices, where `t` is the width of
/// the supplied decomposition.
///
/// Greedy walk: root the bag tree at node 0 and, while some component
/// exceeds the bound, take the bag of the deepest node whose subtree still
/// meets more than the bound many vertices of that component (ties by
/// smallest node id), then recurse on the remaining pieces. Each chosen
/// bag retires strictly more than `(t+1)n/p` vertices from future
/// consideration, so fewer than `p/(t+1)` bags and fewer than `p` vertices
/// enter `S`; pieces left behind are each confined to one child subtree of
/// the chosen node and therefore already small.
pub fn balanced_separator(g: &Graph, d: &TreeDecomposition, p: f64) -> Result<SeparatorResult, DecompError> {
    if !p.is_finite() || p < 1.0 {
        return Err(DecompError::BadBudget(p));
    }
    validate_decomposition(g, d).map_err(DecompError::Invalid)?;
    let n = g.vertex_count();
    let t = d.width();
    let bound = (t + 1) as f64 * n as f64 / p;

    let (parent, depth, order) = root_tree(d);
    let mut in_sep = vec![false; n];
    let mut queue: VecDeque<Vec<usize>> = g.components().into();
    let mut in_comp = vec![false; n];
    while let Some(comp) = queue.pop_front() {
        // the component may have lost vertices to bags chosen since it was
        // queued; re-split under the current separator
        for &v in &comp {
            in_comp[v] = true;
        }
        let pieces = g.components_where(|v| in_comp[v] && !in_sep[v]);
        for &v in &comp {
            in_comp[v] = false;
        }
        for piece in pieces {
            if piece.len() as f64 <= bound {
                continue;
            }
            let x = deepest_overweight(d, &parent, &depth, &order, &piece, bound);
            for &v in &d.bags[x] {
                in_sep[v] = true;
            }
            queue.push_back(piece);
        }
    }

    let separator: Vec<usize> = (0..n).filter(|&v| in_sep[v]).collect();
    let components = g.components_where(|v| !in_sep[v]);
    debug_assert!((separator.len() as f64) < p || separator.is_empty());
    debug_assert!(components.iter().all(|c| c.len() as f64 <= bound));
    Ok(SeparatorResult { separator, budget: p, component_bound: bound, components })
}

/// Roots the bag tree at node 0; returns parents, depths, and a
/// breadth-first order (shallow to deep, ids ascending within a level).
fn root_tree(d: &TreeDecomposition) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let m = d.bag_count();
    let mut parent = vec![usize::MAX; m];
    let mut depth = vec![0usize; m];
    let mut order = Vec::with_capacity(m);
    if m == 0 {
        return (parent, depth, order);
    }
    let mut seen = vec![false; m];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in d.tree.neighbours(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                depth[y] = depth[x] + 1;
                queue.push_back(y);
            }
        }
    }
    (parent, depth, order)
}

/// Deepest node `x` (ties by smallest id) such that more than `bound`
/// vertices of `piece` live in bags of the subtree under `x`. `piece` is
/// connected and larger than `bound`, so the root qualifies and the
/// chosen node's bag meets `piece`.
fn deepest_overweight(
    d: &TreeDecomposition,
    parent: &[usize],
    depth: &[usize],
    order: &[usize],
    piece: &[usize],
    bound: f64,
) -> usize {
    let m = d.bag_count();
    let n = 1 + piece.iter().copied().max().unwrap_or(0);
    let mut in_piece = vec![false; n];
    for &v in piece {
        in_piece[v] = true;
    }
    // has_top[v]: v was already seen in a shallower bag; the first bag in
    // breadth-first order holding v is the unique topmost node of v's
    // trace (traces are connected)
    let mut has_top = vec![false; n];
    let mut live_in_bag = vec![0usize; m];
    let mut top_here = vec![0usize; m];
    for &x in order {
        for &v in &d.bags[x] {
            if v < n && in_piece[v] {
                live_in_bag[x] += 1;
                if !has_top[v] {
                    has_top[v] = true;
                    top_here[x] += 1;
                }
            }
        }
    }
    // subtree counts of tops, accumulated leaf-to-root
    let mut sub = top_here.clone();
    for &x in order.iter().rev() {
        if parent[x] != usize::MAX {
            sub[parent[x]] += sub[x];
        }
    }
    // weight(x) = |piece ∩ bags(subtree(x))|: tops inside the subtree plus
    // bag members whose top lies strictly above x
    let mut best: Option<usize> = None;
    for x in 0..m {
        let w = sub[x] + live_in_bag[x] - top_here[x];
        if w as f64 > bound {
            best = match best {
                None => Some(x),
                Some(b) => {
                    if depth[x] > depth[b] || (depth[x] == depth[b] && x < b) {
                        Some(x)
                    } else {
                        Some(b)
                    }
                }
            };
        }
    }
    best.expect("piece exceeds the bound, so the root is overweight")
}

/// Restricts `d` to the sorted vertex set `vs`, renumbering vertices the
/// same way [`Graph::induced_subgraph`] does. The tree shape is kept, so
/// the result is a valid decomposition of the induced subgraph with width
/// at most `d`'s.
pub fn induced_decomposition(d: &TreeDecomposition, vs: &[usize]) -> TreeDecomposition {
    debug_assert!(vs.windows(2).all(|w| w[0] < w[1]), "vs must be sorted unique");
    let bags = d
        .bags
        .iter()
        .map(|bag| bag.iter().filter_map(|v| vs.binary_search(v).ok()).collect())
        .collect();
    let edges = d.tree.edges().iter().copied();
    TreeDecomposition::new(bags, edges).expect("tree shape unchanged")
}

/// Uniform random `t`-tree on `n` vertices: start from `K_{t+1}` and
/// attach each further vertex to a uniformly chosen existing `t`-clique.
/// The clique pool tracks every `t`-clique of the graph, so the choice is
/// uniform over all of them. Returns the graph and its natural width-`t`
/// decomposition. Deterministic per seed.
pub fn random_ktree(n: usize, t: usize, seed: u64) -> Result<(Graph, TreeDecomposition), DecompError> {
    if t < 1 || n < t + 1 {
        return Err(DecompError::KtreeParams { n, t });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..=t {
        for v in (u + 1)..=t {
            edges.push((u, v));
        }
    }
    let mut bags: Vec<Vec<usize>> = vec![(0..=t).collect()];
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    // every t-clique seen so far, with the bag node that introduced it
    let mut cliques: Vec<(Vec<usize>, usize)> = Vec::new();
    for drop in 0..=t {
        let q: Vec<usize> = (0..=t).filter(|&v| v != drop).collect();
        cliques.push((q, 0));
    }
    for v in (t + 1)..n {
        let pick = gen_index(&mut rng, cliques.len());
        let (q, node) = cliques[pick].clone();
        for &u in &q {
            edges.push((u, v));
        }
        let new_node = bags.len();
        let mut bag = q.clone();
        bag.push(v);
        bags.push(bag);
        tree_edges.push((node, new_node));
        for i in 0..t {
            let mut c: Vec<usize> = q.iter().copied().enumerate().filter(|&(j, _)| j != i).map(|(_, u)| u).collect();
            c.push(v);
            c.sort_unstable();
            cliques.push((c, new_node));
        }
    }
    let g = Graph::new(n, edges)?;
    let d = TreeDecomposition::new(bags, tree_edges)?;
    Ok((g, d))
}

/// Uniform index below `len` from a `RngCore`, by rejection.
fn gen_index(rng: &mut impl RngCore, len: usize) -> usize {
    let len = len as u64;
    let zone = u64::MAX - u64::MAX % len;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return (x % len) as usize;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn path_decomposition(n: usize) -> TreeDecomposition {
        let bags = (0..n - 1).map(|i| vec![i, i + 1]).collect();
        TreeDecomposition::new(bags, (0..n - 2).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn path_decomposition_is_valid_width_one() {
        let g = families::path(10);
        let d = path_decomposition(10);
        assert_eq!(validate_decomposition(&g, &d), Ok(1));
    }

    #[test]
    fn single_bag_decomposes_complete_graph() {
        let g = families::complete(5);
        let d = TreeDecomposition::new(vec![(0..5).collect()], []).unwrap();
        assert_eq!(validate_decomposition(&g, &d), Ok(4));
    }

    #[test]
    fn empty_decomposition_for_empty_graph() {
        let g = Graph::empty(0);
        let d = TreeDecomposition::new(vec![], []).unwrap();
        assert_eq!(validate_decomposition(&g, &d), Ok(0));
        assert_eq!(d.width(), 0);
    }

    #[test]
    fn validation_reports_witnesses() {
        let g = families::complete(3);
        let d = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], [(0, 1)]).unwrap();
        assert_eq!(
            validate_decomposition(&g, &d),
            Err(DecompositionViolation::EdgeNotCovered(0, 2))
        );
        let g2 = Graph::empty(4);
        let d2 = TreeDecomposition::new(vec![vec![0, 1], vec![2]], [(0, 1)]).unwrap();
        assert_eq!(
            validate_decomposition(&g2, &d2),
            Err(DecompositionViolation::VertexNotCovered(3))
        );
        // vertex 0 in bags 0 and 2, but not in the middle bag
        let g3 = Graph::empty(2);
        let d3 = TreeDecomposition::new(vec![vec![0], vec![1], vec![0]], [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            validate_decomposition(&g3, &d3),
            Err(DecompositionViolation::TraceDisconnected(0))
        );
        assert!(TreeDecomposition::new(vec![vec![0], vec![1]], []).is_err());
    }

    #[test]
    fn separator_rejects_bad_budget() {
        let g = families::path(4);
        let d = path_decomposition(4);
        assert!(matches!(balanced_separator(&g, &d, 0.5), Err(DecompError::BadBudget(_))));
        assert!(matches!(balanced_separator(&g, &d, f64::NAN), Err(DecompError::BadBudget(_))));
    }

    #[test]
    fn separator_small_budget_leaves_graph_alone() {
        // p = 2 gives bound (1+1)*10/2 = 10, already satisfied
        let g = families::path(10);
        let d = path_decomposition(10);
        let r = balanced_separator(&g, &d, 2.0).unwrap();
        assert!(r.separator.is_empty());
        assert_eq!(r.components.len(), 1);
    }

    #[test]
    fn separator_postconditions_on_path() {
        let g = families::path(10);
        let d = path_decomposition(10);
        for p in [2.0, 3.0, 5.0, 7.5, 10.0, 20.0] {
            let r = balanced_separator(&g, &d, p).unwrap();
            check_separator(&g, &d, &r, p);
        }
    }

    #[test]
    fn separator_handles_huge_budget() {
        let g = families::path(6);
        let d = path_decomposition(6);
        let r = balanced_separator(&g, &d, 100.0).unwrap();
        // bound is 0.12, so everything must enter the separator
        assert_eq!(r.separator.len(), 6);
        assert!(r.components.is_empty());
    }

    #[test]
    fn separator_is_deterministic() {
        let (g, d) = random_ktree(40, 2, 7).unwrap();
        let a = balanced_separator(&g, &d, 6.0).unwrap();
        let b = balanced_separator(&g, &d, 6.0).unwrap();
        assert_eq!(a, b);
        check_separator(&g, &d, &a, 6.0);
    }

    /// Shared postcondition oracle: size under budget, components under
    /// the bound, separator a union of bags, components a partition.
    pub(crate) fn check_separator(g: &Graph, d: &TreeDecomposition, r: &SeparatorResult, p: f64) {
        assert!(r.separator.len() as f64 <= libm::floor(p));
        let t = d.width();
        let bound = (t + 1) as f64 * g.vertex_count() as f64 / p;
        assert_eq!(r.component_bound, bound);
        for c in &r.components {
            assert!(c.len() as f64 <= bound, "component of {} exceeds {}", c.len(), bound);
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &r.separator {
            assert!(!seen[v]);
            seen[v] = true;
        }
        for c in &r.components {
            for &v in c {
                assert!(!seen[v]);
                seen[v] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
        // union of bags: every separator vertex sits in some fully-taken bag
        for &v in &r.separator {
            let in_full_bag = d.bags().iter().any(|b| {
                b.binary_search(&v).is_ok() && b.iter().all(|u| r.separator.binary_search(u).is_ok())
            });
            assert!(in_full_bag, "vertex {v} not covered by a fully-taken bag");
        }
    }

    #[test]
    fn ktree_shape_and_decomposition() {
        for (n, t, seed) in [(10, 1, 0), (25, 2, 1), (30, 3, 99)] {
            let (g, d) = random_ktree(n, t, seed).unwrap();
            assert_eq!(g.vertex_count(), n);
            assert_eq!(g.edge_count(), t * (t + 1) / 2 + (n - t - 1) * t);
            assert_eq!(validate_decomposition(&g, &d), Ok(t));
        }
    }

    #[test]
    fn ktree_seed_determinism() {
        let (a, _) = random_ktree(20, 2, 5).unwrap();
        let (b, _) = random_ktree(20, 2, 5).unwrap();
        let (c, _) = random_ktree(20, 2, 6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn ktree_rejects_degenerate_parameters() {
        assert!(random_ktree(3, 0, 0).is_err());
        assert!(random_ktree(2, 2, 0).is_err());
    }

    #[test]
    fn induced_decomposition_restricts() {
        let (g, d) = random_ktree(20, 2, 3).unwrap();
        let vs: Vec<usize> = (0..20).filter(|v| v % 3 != 0).collect();
        let (sub, _) = g.induced_subgraph(&vs).unwrap();
        let sd = induced_decomposition(&d, &vs);
        let w = validate_decomposition(&sub, &sd).unwrap();
        assert!(w <= d.width());
    }
}
