//! Undirected graphs with dense vertex ids `0..n`.
//!
//! Edges are kept both as a sorted edge list and as per-vertex sorted
//! neighbour lists; the neighbour lists are the canonical iteration order
//! for every traversal in this crate, which is what makes component
//! enumeration and search deterministic.

use alloc::vec;
use alloc::vec::Vec;

/// Structural role of a vertex, assigned by family builders only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// No special role.
    Plain,
    /// Vertex adjacent to every other vertex of its family (fans).
    Dominant,
    /// Copy of a dominant vertex inside a product row.
    Spine,
    /// Top-of-column vertex in a layered construction.
    Top,
    /// Apex added over disjoint copies by a cone.
    Apex,
}

/// Construction metadata for one vertex.
///
/// `coords` records, per product nesting level, which factor the vertex
/// came from and its id there, so algorithms can address rows, columns and
/// spines of iterated products without re-deriving the index arithmetic.
/// Labels never participate in graph equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLabel {
    pub role: Role,
    pub coords: Vec<(u32, usize)>,
}

impl VertexLabel {
    pub fn plain() -> Self {
        VertexLabel { role: Role::Plain, coords: Vec::new() }
    }

    pub fn with_role(role: Role) -> Self {
        VertexLabel { role, coords: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// Simple undirected graph. No self loops, no parallel edges.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<VertexLabel>>,
}

impl PartialEq for Graph {
    // Labels are metadata; equality is vertex count plus edge set.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Edge orientation and order are
    /// arbitrary; they are normalised to `u < v` lexicographic.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut norm: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { v, n });
                }
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: norm, adj, labels: None })
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n], labels: None }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge list, sorted lexicographic with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<VertexLabel>) -> Result<(), GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount { expected: self.n, got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn clear_labels(&mut self) {
        self.labels = None;
    }

    /// Vertices whose label has the given role. Empty when unlabelled.
    pub fn vertices_with_role(&self, role: Role) -> Vec<usize> {
        match &self.labels {
            Some(ls) => (0..self.n).filter(|&v| ls[v].role == role).collect(),
            None => Vec::new(),
        }
    }

    /// Product nesting depth recorded in the labels (1 for a base graph).
    fn coord_depth(&self) -> u32 {
        self.labels
            .as_ref()
            .and_then(|ls| ls.first())
            .map(|l| l.coords.len().max(1) as u32)
            .unwrap_or(1)
    }

    /// Coordinates of `v` for product labelling: the recorded coords, or
    /// the single pair `(0, v)` for a base graph.
    fn coords_of(&self, v: usize) -> Vec<(u32, usize)> {
        match &self.labels {
            Some(ls) if !ls[v].coords.is_empty() => ls[v].coords.clone(),
            _ => vec![(0, v)],
        }
    }

    /// Strong product. Vertex `(u, v)` gets id `u * h.vertex_count() + v`
    /// (row-major); `(u, v)` and `(u', v')` are adjacent when each
    /// coordinate pair is equal or adjacent and the pairs differ.
    ///
    /// Labels carry the coordinates of both factors with fresh factor ids
    /// on the right, so iterated products stay addressable.
    pub fn strong_product(&self, h: &Graph) -> Graph {
        self.product_with(h, true)
    }

    /// Cartesian product: one coordinate equal, the other adjacent.
    pub fn cartesian_product(&self, h: &Graph) -> Graph {
        self.product_with(h, false)
    }

    fn product_with(&self, h: &Graph, diagonal: bool) -> Graph {
        let (n1, n2) = (self.n, h.n);
        let id = |u: usize, v: usize| u * n2 + v;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for u in 0..n1 {
            for v in 0..n2 {
                // Emit each edge from its lexicographically smaller end.
                for &v2 in h.neighbours(v) {
                    if v2 > v {
                        edges.push((id(u, v), id(u, v2)));
                    }
                }
                for &u2 in self.neighbours(u) {
                    if u2 > u {
                        edges.push((id(u, v), id(u2, v)));
                        if diagonal {
                            for &v2 in h.neighbours(v) {
                                edges.push((id(u, v), id(u2, v2)));
                            }
                        }
                    }
                }
            }
        }
        let mut g = Graph::new(n1 * n2, edges).expect("product edges are valid by construction");
        let shift = self.coord_depth();
        let mut labels = Vec::with_capacity(n1 * n2);
        for u in 0..n1 {
            let left = self.coords_of(u);
            for v in 0..n2 {
                let mut coords = left.clone();
                coords.extend(h.coords_of(v).into_iter().map(|(f, x)| (f + shift, x)));
                labels.push(VertexLabel { role: Role::Plain, coords });
            }
        }
        g.labels = Some(labels);
        g
    }

    /// Connected components of the subgraph induced by the vertices where
    /// `keep` holds. Components are listed by smallest member, members
    /// ascending.
    pub fn components_where(&self, keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] || !keep(start) {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &w in self.neighbours(v) {
                    if !seen[w] && keep(w) {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_where(|_| true)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Subgraph induced by `vs` (need not be sorted; duplicates are an
    /// error), with vertices renumbered in ascending old-id order.
    /// Returns the graph and the map from new id to old id.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut old_ids: Vec<usize> = vs.to_vec();
        old_ids.sort_unstable();
        if let Some(w) = old_ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0], w[1]));
        }
        if let Some(&v) = old_ids.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
            .map(|&(u, v)| (new_id[u], new_id[v]));
        let mut g = Graph::new(old_ids.len(), edges)?;
        if let Some(ls) = &self.labels {
            g.labels = Some(old_ids.iter().map(|&v| ls[v].clone()).collect());
        }
        Ok((g, old_ids))
    }

    /// Disjoint union. Returns the union and the id offset of each part.
    pub fn disjoint_union(parts: &[&Graph]) -> (Graph, Vec<usize>) {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut n = 0;
        for p in parts {
            offsets.push(n);
            n += p.n;
        }
        let edges = parts.iter().zip(&offsets).flat_map(|(p, &off)| {
            p.edges.iter().map(move |&(u, v)| (u + off, v + off))
        });
        let mut g = Graph::new(n, edges).expect("shifted edges stay valid");
        if parts.iter().any(|p| p.labels.is_some()) {
            let mut labels = Vec::with_capacity(n);
            for p in parts {
                match &p.labels {
                    Some(ls) => labels.extend(ls.iter().cloned()),
                    None => labels.extend((0..p.n).map(|_| VertexLabel::plain())),
                }
            }
            g.labels = Some(labels);
        }
        (g, offsets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { v: 3, n: 3 })
        );
        assert_eq!(
            Graph::new(3, [(2, 0), (0, 2)]),
            Err(GraphError::DuplicateEdge(0, 2))
        );
    }

    #[test]
    fn normalises_edge_order() {
        let g = Graph::new(4, [(3, 1), (0, 2), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3)]);
        assert_eq!(g.neighbours(1), &[0, 3]);
        assert!(g.has_edge(1, 3));
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn strong_product_p3_p3() {
        let p3 = families::path(3);
        let g = p3.strong_product(&p3);
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 20);
        // centre of the king grid sees everything
        assert_eq!(g.degree(4), 8);
    }

    #[test]
    fn strong_product_edge_count_formula() {
        let a = families::fan(4);
        let b = families::path(5);
        let g = a.strong_product(&b);
        let (e1, n1) = (a.edge_count(), a.vertex_count());
        let (e2, n2) = (b.edge_count(), b.vertex_count());
        assert_eq!(g.edge_count(), e1 * n2 + e2 * n1 + 2 * e1 * e2);
    }

    #[test]
    fn cartesian_product_square_is_c4() {
        let p2 = families::path(2);
        let g = p2.cartesian_product(&p2);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn k1_is_product_identity_on_edges() {
        let k1 = families::complete(1);
        let f = families::fan(5);
        let g = f.strong_product(&k1);
        assert_eq!(g.vertex_count(), f.vertex_count());
        assert_eq!(g.edges(), f.edges());
    }

    #[test]
    fn product_labels_carry_both_coordinates() {
        let a = families::path(2);
        let b = families::path(3);
        let g = a.strong_product(&b);
        let ls = g.labels().unwrap();
        assert_eq!(ls[5].coords, vec![(0, 1), (1, 2)]);
        // iterated product gets a third factor id
        let h = g.strong_product(&a);
        let hs = h.labels().unwrap();
        assert_eq!(hs[11].coords, vec![(0, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let mut a = families::path(3);
        let b = families::path(3);
        a.set_labels(vec![VertexLabel::with_role(Role::Top); 3]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn components_respect_keep_predicate() {
        let g = families::path(5);
        let comps = g.components_where(|v| v != 2);
        assert_eq!(comps, vec![vec![0, 1], vec![3, 4]]);
        assert_eq!(families::path(4).components().len(), 1);
        assert_eq!(Graph::empty(3).components().len(), 3);
        assert_eq!(Graph::empty(0).components().len(), 0);
    }

    #[test]
    fn induced_subgraph_maps_back() {
        let g = families::fan(4);
        let (h, map) = g.induced_subgraph(&[4, 0, 2]).unwrap();
        assert_eq!(map, vec![0, 2, 4]);
        // 0 dominates, 2 and 4 are non-adjacent base vertices
        assert_eq!(h.edges(), &[(0, 1), (0, 2)]);
        let (e, m) = g.induced_subgraph(&[]).unwrap();
        assert_eq!(e.vertex_count(), 0);
        assert!(m.is_empty());
    }

    #[test]
    fn disjoint_union_offsets() {
        let a = families::path(2);
        let b = families::complete(3);
        let (g, off) = Graph::disjoint_union(&[&a, &b]);
        assert_eq!(off, vec![0, 2]);
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edges(), &[(0, 1), (2, 3), (2, 4), (3, 4)]);
        let (e, o) = Graph::disjoint_union(&[]);
        assert_eq!(e.vertex_count(), 0);
        assert!(o.is_empty());
    }

    #[test]
    fn is_tree_detects_cycles() {
        assert!(families::path(4).is_tree());
        assert!(!families::complete(3).is_tree());
        assert!(!Graph::new(4, [(0, 1), (2, 3)]).unwrap().is_tree());
    }
}
