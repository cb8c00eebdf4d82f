//! Constructive upper-bound colourings for strong products of
//! bounded-treewidth graphs, each returning the colouring together with
//! a certificate naming the bound formula it claims.
//!
//! The separator-based constructions follow one pattern: pick per-factor
//! balanced separators with a budget tuned to the target exponent, give
//! the crossing set its own colour, and recurse or 2-colour what is
//! left. The explicit fan-product colourings at the bottom are the
//! matching upper bounds for the lower-bound searches.

use alloc::vec;
use alloc::vec::Vec;

use libm::pow;

use crate::colouring::{evaluate, BoundCertificate, Colouring, ColouringError, UnionFind};
use crate::decomp::{
    balanced_separator, induced_decomposition, validate_decomposition, DecompError,
    SeparatorResult, TreeDecomposition,
};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum AlgoError {
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error("invalid tree-partition witness: {0}")]
    Witness(#[from] WitnessViolation),
    #[error("{0}")]
    BadParam(&'static str),
}

/// A strong product together with validated decompositions of both
/// factors. `t` is the larger of the two widths and drives every
/// budget below.
#[derive(Clone, Debug)]
pub struct ProductInstance {
    g1: Graph,
    g2: Graph,
    d1: TreeDecomposition,
    d2: TreeDecomposition,
    product: Graph,
    t: usize,
}

impl ProductInstance {
    pub fn new(
        g1: Graph,
        d1: TreeDecomposition,
        g2: Graph,
        d2: TreeDecomposition,
    ) -> Result<Self, AlgoError> {
        let w1 = validate_decomposition(&g1, &d1).map_err(DecompError::Invalid)?;
        let w2 = validate_decomposition(&g2, &d2).map_err(DecompError::Invalid)?;
        let product = g1.strong_product(&g2);
        Ok(ProductInstance { g1, g2, d1, d2, product, t: w1.max(w2) })
    }

    pub fn g1(&self) -> &Graph {
        &self.g1
    }

    pub fn g2(&self) -> &Graph {
        &self.g2
    }

    pub fn d1(&self) -> &TreeDecomposition {
        &self.d1
    }

    pub fn d2(&self) -> &TreeDecomposition {
        &self.d2
    }

    pub fn product(&self) -> &Graph {
        &self.product
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n1(&self) -> usize {
        self.g1.vertex_count()
    }

    pub fn n2(&self) -> usize {
        self.g2.vertex_count()
    }

    pub fn n(&self) -> usize {
        self.product.vertex_count()
    }

    /// Row-major product id of the pair `(u, v)`.
    pub fn vertex(&self, u: usize, v: usize) -> usize {
        u * self.n2() + v
    }
}

/// Separator with the budget clamped from below: a budget under one
/// vertex makes the component guarantee vacuous, so the empty set
/// satisfies it.
fn factor_separator(g: &Graph, d: &TreeDecomposition, p: f64) -> Result<SeparatorResult, DecompError> {
    if p < 1.0 {
        return Ok(SeparatorResult {
            separator: Vec::new(),
            budget: p,
            component_bound: f64::INFINITY,
            components: g.components(),
        });
    }
    balanced_separator(g, d, p)
}

fn membership(n: usize, vs: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in vs {
        mask[v] = true;
    }
    mask
}

/// Red/blue colouring of a product: blue is the union of the two
/// separator crossings, red everything else. Budgets use the supplied
/// `t`, which recursion keeps at the outermost width.
fn two_colour_core(
    g1: &Graph,
    d1: &TreeDecomposition,
    g2: &Graph,
    d2: &TreeDecomposition,
    t: usize,
) -> Result<Vec<u32>, DecompError> {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let n = n1 * n2;
    if n == 0 {
        return Ok(Vec::new());
    }
    let tf = (t + 1) as f64;
    let p1 = pow(tf, 2.0 / 3.0) * n1 as f64 / pow(n as f64, 1.0 / 3.0);
    let p2 = pow(tf, 2.0 / 3.0) * n2 as f64 / pow(n as f64, 1.0 / 3.0);
    let s1 = factor_separator(g1, d1, p1)?;
    let s2 = factor_separator(g2, d2, p2)?;
    let in_s1 = membership(n1, &s1.separator);
    let in_s2 = membership(n2, &s2.separator);
    let mut colours = vec![0u32; n];
    for u in 0..n1 {
        for v in 0..n2 {
            if in_s1[u] || in_s2[v] {
                colours[u * n2 + v] = 1;
            }
        }
    }
    Ok(colours)
}

/// 2-colouring with clustering at most `2((t+1)n)^{2/3}`.
pub fn two_colour_product(inst: &ProductInstance) -> Result<(Colouring, BoundCertificate), AlgoError> {
    let t = inst.t();
    let colours = two_colour_core(&inst.g1, &inst.d1, &inst.g2, &inst.d2, t)?;
    let col = Colouring::new(2, colours).expect("palette covers both colours");
    let n = inst.n();
    let bound = 2.0 * pow((t + 1) as f64 * n as f64, 2.0 / 3.0);
    let cert = BoundCertificate::new(
        "two_colour_product",
        &[
            ("t", t as f64),
            ("n", n as f64),
            ("n1", inst.n1() as f64),
            ("n2", inst.n2() as f64),
        ],
        bound,
    );
    Ok((col, cert))
}

/// 3-colouring with clustering at most `2(t+1)^{6/7} n^{4/7}`: the
/// crossing set takes the third colour, and every leftover component
/// pair is 2-coloured as a sub-product at the original `t`.
pub fn three_colour_product(inst: &ProductInstance) -> Result<(Colouring, BoundCertificate), AlgoError> {
    let t = inst.t();
    let (n1, n2) = (inst.n1(), inst.n2());
    let n = inst.n();
    let tf = (t + 1) as f64;
    let bound = 2.0 * pow(tf, 6.0 / 7.0) * pow(n as f64, 4.0 / 7.0);
    let cert = BoundCertificate::new(
        "three_colour_product",
        &[("t", t as f64), ("n", n as f64), ("n1", n1 as f64), ("n2", n2 as f64)],
        bound,
    );
    if n == 0 {
        return Ok((Colouring::new(3, Vec::new()).unwrap(), cert));
    }
    let p1 = pow(tf, 6.0 / 7.0) * n1 as f64 / pow(n as f64, 3.0 / 7.0);
    let p2 = pow(tf, 6.0 / 7.0) * n2 as f64 / pow(n as f64, 3.0 / 7.0);
    let s1 = factor_separator(&inst.g1, &inst.d1, p1)?;
    let s2 = factor_separator(&inst.g2, &inst.d2, p2)?;
    let mut colours = vec![2u32; n];
    let sub1: Vec<(Graph, TreeDecomposition, &Vec<usize>)> = s1
        .components
        .iter()
        .map(|comp| {
            let (g, _) = inst.g1.induced_subgraph(comp).expect("component ids valid");
            (g, induced_decomposition(&inst.d1, comp), comp)
        })
        .collect();
    let sub2: Vec<(Graph, TreeDecomposition, &Vec<usize>)> = s2
        .components
        .iter()
        .map(|comp| {
            let (g, _) = inst.g2.induced_subgraph(comp).expect("component ids valid");
            (g, induced_decomposition(&inst.d2, comp), comp)
        })
        .collect();
    for (h1, e1, c1) in &sub1 {
        for (h2, e2, c2) in &sub2 {
            let pair = two_colour_core(h1, e1, h2, e2, t)?;
            for (i, &u) in c1.iter().enumerate() {
                for (j, &v) in c2.iter().enumerate() {
                    colours[u * n2 + v] = pair[i * c2.len() + j];
                }
            }
        }
    }
    Ok((Colouring::new(3, colours).expect("palette covers three colours"), cert))
}

/// Recursive separator colouring at fixed `t`: the leftover components
/// take the highest remaining colour, the separator is coloured with
/// one colour fewer. Writes through `ids`, the map from current to
/// original vertex ids.
fn colour_by_depth(
    g: &Graph,
    d: &TreeDecomposition,
    c: usize,
    t: usize,
    out: &mut [u32],
    ids: &[usize],
) -> Result<(), DecompError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(());
    }
    // base cases stay monochromatic: one colour left, or n <= t+1 where
    // the bound already dominates the whole graph
    if c == 1 || n <= t + 1 {
        for &orig in ids {
            out[orig] = 0;
        }
        return Ok(());
    }
    let p = pow((t + 1) as f64, 1.0 / c as f64) * pow(n as f64, (c - 1) as f64 / c as f64);
    debug_assert!(p > (t + 1) as f64);
    let sep = balanced_separator(g, d, p)?;
    for comp in &sep.components {
        for &v in comp {
            out[ids[v]] = (c - 1) as u32;
        }
    }
    if sep.separator.is_empty() {
        return Ok(());
    }
    let (gs, _) = g.induced_subgraph(&sep.separator).expect("separator ids valid");
    let ds = induced_decomposition(d, &sep.separator);
    let sub_ids: Vec<usize> = sep.separator.iter().map(|&v| ids[v]).collect();
    colour_by_depth(&gs, &ds, c - 1, t, out, &sub_ids)
}

/// c-colouring of one bounded-treewidth graph with clustering at most
/// `(t+1)^{(c-1)/c} n^{1/c}`.
pub fn c_colour_tw(
    g: &Graph,
    d: &TreeDecomposition,
    c: usize,
) -> Result<(Colouring, BoundCertificate), AlgoError> {
    if c < 1 {
        return Err(AlgoError::BadParam("need at least one colour"));
    }
    let t = validate_decomposition(g, d).map_err(DecompError::Invalid)?;
    let n = g.vertex_count();
    let mut colours = vec![0u32; n];
    let ids: Vec<usize> = (0..n).collect();
    colour_by_depth(g, d, c, t, &mut colours, &ids)?;
    let bound = pow((t + 1) as f64, (c - 1) as f64 / c as f64) * pow(n as f64, 1.0 / c as f64);
    let cert = BoundCertificate::new(
        "c_colour_tw",
        &[("t", t as f64), ("c", c as f64), ("n", n as f64)],
        bound,
    );
    Ok((Colouring::new(c, colours).expect("depth colouring stays in range"), cert))
}

/// Pairs an s-colouring of each factor, s = floor(sqrt c): colour of
/// `(u, v)` is the pair code `col1(u)·s + col2(v)`. Bound
/// `(t+1)^{2(1-1/sqrt c)} n^{1/s}`.
pub fn product_colouring(
    inst: &ProductInstance,
    c: usize,
) -> Result<(Colouring, BoundCertificate), AlgoError> {
    if c < 1 {
        return Err(AlgoError::BadParam("need at least one colour"));
    }
    let s = libm::floor(libm::sqrt(c as f64)) as usize;
    let t = inst.t();
    let (n1, n2) = (inst.n1(), inst.n2());
    let mut col1 = vec![0u32; n1];
    let mut col2 = vec![0u32; n2];
    colour_by_depth(&inst.g1, &inst.d1, s, t, &mut col1, &(0..n1).collect::<Vec<_>>())?;
    colour_by_depth(&inst.g2, &inst.d2, s, t, &mut col2, &(0..n2).collect::<Vec<_>>())?;
    let mut colours = vec![0u32; inst.n()];
    for u in 0..n1 {
        for v in 0..n2 {
            colours[u * n2 + v] = col1[u] * s as u32 + col2[v];
        }
    }
    let n = inst.n();
    let tf = (t + 1) as f64;
    let bound = pow(tf, 2.0 * (1.0 - 1.0 / libm::sqrt(c as f64))) * pow(n as f64, 1.0 / s as f64);
    let cert = BoundCertificate::new(
        "product_colouring",
        &[("t", t as f64), ("c", c as f64), ("n", n as f64), ("s", s as f64)],
        bound,
    );
    Ok((Colouring::new(c, colours).expect("pair codes stay below c"), cert))
}

/// Colours `(u, v)` by `col1(u)`. Clustering is at most `k1 · n2`; the
/// certificate uses the `k·sqrt(n)` form when the second factor is the
/// smaller one.
pub fn project_colouring(
    inst: &ProductInstance,
    col1: &Colouring,
) -> Result<(Colouring, BoundCertificate), AlgoError> {
    let k1 = evaluate(&inst.g1, col1)?.clustering;
    let (n1, n2) = (inst.n1(), inst.n2());
    let mut colours = vec![0u32; inst.n()];
    for u in 0..n1 {
        for v in 0..n2 {
            colours[u * n2 + v] = col1.get(u);
        }
    }
    let bound = if n2 <= n1 {
        k1 as f64 * libm::sqrt((n1 * n2) as f64)
    } else {
        k1 as f64 * n2 as f64
    };
    let cert = BoundCertificate::new(
        "project_colouring",
        &[("k", k1 as f64), ("n1", n1 as f64), ("n2", n2 as f64)],
        bound,
    );
    Ok((Colouring::new(col1.colour_count(), colours).expect("palette unchanged"), cert))
}

/// Colours `g ⊠ K_ell` (ids `u·ell + i`) by the base colour of `u`.
/// Every component blows up by exactly `ell`.
pub fn clique_blowup(
    g: &Graph,
    col: &Colouring,
    ell: usize,
) -> Result<(Colouring, BoundCertificate), AlgoError> {
    if ell < 1 {
        return Err(AlgoError::BadParam("blow-up needs ell >= 1"));
    }
    let k = evaluate(g, col)?.clustering;
    let mut colours = vec![0u32; g.vertex_count() * ell];
    for u in 0..g.vertex_count() {
        for i in 0..ell {
            colours[u * ell + i] = col.get(u);
        }
    }
    let cert = BoundCertificate::new(
        "clique_blowup",
        &[("k", k as f64), ("ell", ell as f64)],
        (k * ell) as f64,
    );
    Ok((Colouring::new(col.colour_count(), colours).expect("palette unchanged"), cert))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WitnessViolation {
    #[error("partition tree is not a tree")]
    NotATree,
    #[error("parts map covers {got} vertices, host has {want}")]
    WrongLength { want: usize, got: usize },
    #[error("vertex {vertex} maps to node {node}, tree has {nodes}")]
    NodeOutOfRange { vertex: usize, node: usize, nodes: usize },
    #[error("part {node} holds {size} vertices, stated bound is {bound}")]
    PartTooBig { node: usize, size: usize, bound: usize },
    #[error("edge ({u}, {v}) joins parts that are neither equal nor adjacent")]
    EdgeSplit { u: usize, v: usize },
    #[error("tree node {node} has degree {degree}, stated bound is {bound}")]
    DegreeTooHigh { node: usize, degree: usize, bound: usize },
}

/// A tree-partition of a host graph: vertices mapped onto tree nodes so
/// every host edge stays inside a part or joins adjacent parts.
#[derive(Clone, Debug)]
pub struct TreePartitionWitness {
    pub tree: Graph,
    /// Host vertex -> tree node.
    pub parts: Vec<usize>,
    /// Stated cap on part sizes (q).
    pub part_size_bound: usize,
    /// Stated cap on the tree's maximum degree.
    pub tree_max_degree: usize,
}

pub fn validate_tree_partition(g: &Graph, w: &TreePartitionWitness) -> Result<(), WitnessViolation> {
    if w.parts.len() != g.vertex_count() {
        return Err(WitnessViolation::WrongLength { want: g.vertex_count(), got: w.parts.len() });
    }
    if !w.tree.is_tree() && !(g.vertex_count() == 0 && w.tree.vertex_count() == 0) {
        return Err(WitnessViolation::NotATree);
    }
    let nodes = w.tree.vertex_count();
    let mut sizes = vec![0usize; nodes];
    for (vertex, &node) in w.parts.iter().enumerate() {
        if node >= nodes {
            return Err(WitnessViolation::NodeOutOfRange { vertex, node, nodes });
        }
        sizes[node] += 1;
    }
    for (node, &size) in sizes.iter().enumerate() {
        if size > w.part_size_bound {
            return Err(WitnessViolation::PartTooBig { node, size, bound: w.part_size_bound });
        }
    }
    for &(u, v) in g.edges() {
        let (a, b) = (w.parts[u], w.parts[v]);
        if a != b && !w.tree.has_edge(a, b) {
            return Err(WitnessViolation::EdgeSplit { u, v });
        }
    }
    for node in 0..nodes {
        let degree = w.tree.degree(node);
        if degree > w.tree_max_degree {
            return Err(WitnessViolation::DegreeTooHigh { node, degree, bound: w.tree_max_degree });
        }
    }
    Ok(())
}

/// Tree-partition by breadth-first layering: parts start as connected
/// pieces of each layer, and any part with two parents has those
/// parents merged until the quotient is a tree. The part bound q and
/// tree degree come out measured, not guaranteed.
pub fn tree_partition_heuristic(
    g: &Graph,
    d: &TreeDecomposition,
    delta: usize,
) -> Result<TreePartitionWitness, AlgoError> {
    validate_decomposition(g, d).map_err(DecompError::Invalid)?;
    if delta < g.max_degree() {
        return Err(AlgoError::BadParam("stated degree bound is below the actual maximum degree"));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok(TreePartitionWitness {
            tree: Graph::empty(0),
            parts: Vec::new(),
            part_size_bound: 1,
            tree_max_degree: 0,
        });
    }
    let host_components = g.components();
    let mut layer = vec![usize::MAX; n];
    let mut roots = Vec::new();
    for comp in &host_components {
        let root = comp[0];
        roots.push(root);
        layer[root] = 0;
        let mut queue = alloc::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbours(v) {
                if layer[u] == usize::MAX {
                    layer[u] = layer[v] + 1;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut uf = UnionFind::new(n);
    for &(u, v) in g.edges() {
        if layer[u] == layer[v] {
            uf.union(u, v);
        }
    }
    // merge parents until every part hangs off a single parent part
    loop {
        let mut changed = false;
        let mut parent_of = alloc::collections::BTreeMap::new();
        for &(u, v) in g.edges() {
            if layer[u] == layer[v] {
                continue;
            }
            let (child, parent) = if layer[u] > layer[v] { (u, v) } else { (v, u) };
            let (rc, rp) = (uf.find(child), uf.find(parent));
            match parent_of.get(&rc).copied() {
                None => {
                    parent_of.insert(rc, rp);
                }
                Some(prev) => {
                    let prev = uf.find(prev);
                    if prev != rp {
                        uf.union(prev, rp);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut node_of = alloc::collections::BTreeMap::new();
    let mut parts = vec![0usize; n];
    for v in 0..n {
        let root = uf.find(v);
        let next = node_of.len();
        let node = *node_of.entry(root).or_insert(next);
        parts[v] = node;
    }
    let node_count = node_of.len();
    let mut tree_edges = alloc::collections::BTreeSet::new();
    for &(u, v) in g.edges() {
        let (a, b) = (parts[u], parts[v]);
        if a != b {
            tree_edges.insert((a.min(b), a.max(b)));
        }
    }
    for pair in roots.windows(2) {
        let (a, b) = (parts[pair[0]], parts[pair[1]]);
        tree_edges.insert((a.min(b), a.max(b)));
    }
    let tree = Graph::new(node_count, tree_edges).expect("quotient edges valid");
    let mut sizes = vec![0usize; node_count];
    for &node in &parts {
        sizes[node] += 1;
    }
    let witness = TreePartitionWitness {
        tree_max_degree: tree.max_degree(),
        part_size_bound: sizes.iter().copied().max().unwrap_or(1),
        tree,
        parts,
    };
    validate_tree_partition(g, &witness).expect("layer quotient must be a valid tree-partition");
    Ok(witness)
}

/// External construction the pipeline cannot derive: given a base
/// colouring of `g1`, colour `g1 ⊠ tree` (row-major ids) with one more
/// colour, keeping clustering within `promise`.
pub trait AddOneColour {
    fn add_colour(&self, g1: &Graph, base: &Colouring, tree: &Graph, promise: f64)
        -> Option<Colouring>;
}

/// c-colouring of `g1 ⊠ g2` where `g2` carries a tree-partition
/// witness. Splits on `h` versus `ell^{c(c-1)}`: the projection branch
/// colours `g1`, projects over the tree and blows up by q; the other
/// branch needs the external tree-product construction and falls back
/// to projection (uncertified) without one. The certificate claims the
/// target `6^{c+1}(t+1)² Δ^c · n^{c/(c²-c+1)}` only when the
/// construction provably stays under it.
pub fn bounded_degree_pipeline(
    g1: &Graph,
    d1: &TreeDecomposition,
    g2: &Graph,
    witness: &TreePartitionWitness,
    c: usize,
    oracle: Option<&dyn AddOneColour>,
) -> Result<(Colouring, BoundCertificate), AlgoError> {
    if c < 2 {
        return Err(AlgoError::BadParam("pipeline needs at least two colours"));
    }
    let t = validate_decomposition(g1, d1).map_err(DecompError::Invalid)?;
    validate_tree_partition(g2, witness)?;
    let h = g1.vertex_count();
    let n2 = g2.vertex_count();
    let n = h * n2;
    let ell = witness.tree.vertex_count();
    let q = witness.part_size_bound;
    let delta = g2.max_degree();
    let tmd = witness.tree_max_degree;
    let tf = (t + 1) as f64;
    let projection_case = h as f64 >= pow(ell as f64, (c * (c - 1)) as f64);

    let mut built: Option<(Vec<u32>, f64, u8, Option<usize>)> = None;
    if !projection_case {
        if let Some(oracle) = oracle {
            let mut base_cols = vec![0u32; h];
            colour_by_depth(g1, d1, c - 1, t, &mut base_cols, &(0..h).collect::<Vec<_>>())?;
            let base = Colouring::new(c - 1, base_cols).unwrap();
            let k_base = evaluate(g1, &base)?.clustering;
            let spread = if tmd > 2 { (tmd - 1) as f64 } else { 1.0 };
            let promise = 2.0 * k_base as f64 * pow(spread, (c - 1) as f64);
            let host = g1.strong_product(&witness.tree);
            if let Some(candidate) = oracle.add_colour(g1, &base, &witness.tree, promise) {
                let fits = candidate.len() == host.vertex_count() && candidate.colour_count() <= c;
                if fits && evaluate(&host, &candidate)?.clustering as f64 <= promise {
                    let mut colours = vec![0u32; n];
                    for (w, &node) in witness.parts.iter().enumerate() {
                        for u in 0..h {
                            colours[u * n2 + w] = candidate.get(u * ell + node);
                        }
                    }
                    built = Some((colours, promise * q as f64, 1, Some(k_base)));
                }
            }
        }
    }
    let (colours, construction, branch, k_base) = match built {
        Some(b) => b,
        None => {
            let mut col1 = vec![0u32; h];
            colour_by_depth(g1, d1, c, t, &mut col1, &(0..h).collect::<Vec<_>>())?;
            let mut colours = vec![0u32; n];
            for u in 0..h {
                for w in 0..n2 {
                    colours[u * n2 + w] = col1[u];
                }
            }
            let construction = pow(tf, (c - 1) as f64 / c as f64)
                * pow(h as f64, 1.0 / c as f64)
                * ell as f64
                * q as f64;
            (colours, construction, if projection_case { 0 } else { 2 }, None)
        }
    };
    let cf = c as f64;
    let target = pow(6.0, cf + 1.0) * tf * tf * pow(delta as f64, cf) * pow(n as f64, cf / (cf * cf - cf + 1.0));
    let certified = branch != 2 && construction <= target;
    let mut params = vec![
        ("t", t as f64),
        ("c", cf),
        ("h", h as f64),
        ("ell", ell as f64),
        ("q", q as f64),
        ("tree_max_degree", tmd as f64),
        ("delta", delta as f64),
        ("n", n as f64),
        ("branch", branch as f64),
        ("certified", if certified { 1.0 } else { 0.0 }),
    ];
    if let Some(k) = k_base {
        params.push(("k_base", k as f64));
    }
    let bound_value = if certified { target } else { construction };
    let cert = BoundCertificate::new("bounded_degree_pipeline", &params, bound_value);
    Ok((Colouring::new(c, colours).expect("pipeline colours stay in range"), cert))
}

/// Fan-product 3-colouring: the dominant cross is red, the remaining
/// grid alternates blue/green by row. Clustering is exactly 2n+1 (the
/// cross), within 3n.
pub fn fanfan_three_colouring(n: usize) -> (Graph, Colouring) {
    assert!(n >= 1);
    let f = crate::families::fan(n);
    let product = f.strong_product(&f);
    let side = n + 1;
    let mut colours = vec![0u32; side * side];
    for i in 1..side {
        for j in 1..side {
            colours[i * side + j] = if i % 2 == 1 { 1 } else { 2 };
        }
    }
    (product, Colouring::new(3, colours).unwrap())
}

/// Explicit 4-colouring of `F_{n³} ⊠ F_{n³}` with clustering at most
/// `7n²`.
#[derive(Clone, Debug)]
pub struct FanFanFourColouring {
    pub graph: Graph,
    /// red 0, blue 1, green 2, black 3
    pub colouring: Colouring,
    /// Fewer than two breakpoint lines fit in the path, so no green
    /// block is fully enclosed (happens only for n = 2).
    pub degenerate: bool,
}

/// The four-colour construction: the dominant row is blue and the
/// dominant column red, with three consecutive black vertices after
/// every n of them; at each black triple's centre a full red row and
/// blue column cut the grid; row/column crossings alternate red and
/// blue by line parity; everything else is green.
pub fn fanfan_four_colouring(n: usize) -> Result<FanFanFourColouring, AlgoError> {
    if n < 2 {
        return Err(AlgoError::BadParam("construction needs n >= 2"));
    }
    let m = n * n * n;
    let side = m + 1;
    let period = n + 3;
    // breakpoint line ell sits at the centre of black triple ell
    let mut line_of = vec![0usize; side];
    let mut black_axis = vec![false; side];
    let mut lines = 0usize;
    for ell in 1.. {
        let centre = ell * period - 1;
        if centre > m + 1 {
            break;
        }
        for pos in [centre - 1, centre, centre + 1] {
            if pos <= m {
                black_axis[pos] = true;
            }
        }
        if centre <= m {
            line_of[centre] = ell;
            lines += 1;
        }
    }
    let f = crate::families::fan(m);
    let graph = f.strong_product(&f);
    let mut colours = vec![2u32; side * side];
    colours[0] = 3;
    for j in 1..side {
        colours[j] = if black_axis[j] { 3 } else { 1 };
        colours[j * side] = if black_axis[j] { 3 } else { 0 };
    }
    for i in 1..side {
        let li = line_of[i];
        for j in 1..side {
            let lj = line_of[j];
            colours[i * side + j] = match (li, lj) {
                (0, 0) => 2,
                (_, 0) => 0,
                (0, _) => 1,
                (a, b) => {
                    if a % 2 == b % 2 {
                        0
                    } else {
                        1
                    }
                }
            };
        }
    }
    Ok(FanFanFourColouring {
        graph,
        colouring: Colouring::new(4, colours).unwrap(),
        degenerate: lines < 2,
    })
}
