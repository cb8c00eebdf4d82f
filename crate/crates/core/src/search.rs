//! Exact minimum-clustering search: a branch-and-bound over colour
//! assignments with a rollback union-find, a threshold decision form,
//! and the four-terminal monochromatic-path checker for framed grids.

use alloc::vec;
use alloc::vec::Vec;

use crate::colouring::{evaluate, Colouring};
use crate::families::FramedGrid;
use crate::graph::Graph;

const UNSET: u32 = u32::MAX;

/// Union-find with an undo trail. No path compression: parents must
/// stay stable so `rollback` can restore any earlier state in O(1) per
/// recorded write.
struct RollbackDsu {
    /// Negative entries are roots holding -(component size).
    parent: Vec<i64>,
    trail: Vec<(usize, i64)>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu { parent: vec![-1; n], trail: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] >= 0 {
            x = self.parent[x] as usize;
        }
        x
    }

    fn size(&self, root: usize) -> usize {
        debug_assert!(self.parent[root] < 0);
        (-self.parent[root]) as usize
    }

    fn mark(&self) -> usize {
        self.trail.len()
    }

    /// Union by size; returns the surviving root.
    fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        if self.parent[ra] > self.parent[rb] {
            // rb is the larger component (more negative entry)
            core::mem::swap(&mut ra, &mut rb);
        }
        self.trail.push((rb, self.parent[rb]));
        self.trail.push((ra, self.parent[ra]));
        self.parent[ra] += self.parent[rb];
        self.parent[rb] = ra as i64;
        ra
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (slot, value) = self.trail.pop().unwrap();
            self.parent[slot] = value;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Cap on assignment attempts across the whole query.
    pub max_nodes: u64,
    /// Canonical colour ordering: first vertex gets colour 0 and new
    /// colours are introduced in increasing order.
    pub symmetry: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 100_000_000, symmetry: true }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget { max_nodes: u64::MAX, symmetry: true }
    }

    pub fn with_max_nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExistsOutcome {
    /// A colouring with clustering strictly below the threshold,
    /// re-checked by the evaluator.
    Yes(Colouring),
    /// Proven: every colouring reaches the threshold.
    No,
    Exhausted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Exact,
    /// Budget ran out after proving a non-trivial lower bound.
    BoundOnly,
    /// Budget ran out before proving anything beyond the trivial bound.
    ExhaustedBudget,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// Set exactly when `status == Exact`.
    pub min_clustering: Option<usize>,
    /// Proven: every c-colouring has clustering >= lower.
    pub lower: usize,
    /// Witnessed: some c-colouring has clustering == upper.
    pub upper: usize,
    pub witness: Option<Colouring>,
    pub nodes_explored: u64,
}

struct Engine<'a, F: FnMut() -> bool> {
    g: &'a Graph,
    order: Vec<usize>,
    colour: Vec<u32>,
    dsu: RollbackDsu,
    k: usize,
    c: u32,
    symmetry: bool,
    nodes: u64,
    max_nodes: u64,
    stop: F,
    exhausted: bool,
}

impl<F: FnMut() -> bool> Engine<'_, F> {
    /// True iff an assignment of vertices `order[depth..]` completes the
    /// current partial colouring with every monochromatic component
    /// kept below `k`. `used` counts colours appearing so far.
    fn dfs(&mut self, depth: usize, used: u32) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let top = if self.symmetry { used.min(self.c - 1) } else { self.c - 1 };
        for q in 0..=top {
            self.nodes += 1;
            if self.nodes & 4095 == 1 && (self.nodes > self.max_nodes || (self.stop)()) {
                self.exhausted = true;
                return false;
            }
            let mark = self.dsu.mark();
            self.colour[v] = q;
            let mut feasible = true;
            for &u in self.g.neighbours(v) {
                if self.colour[u] == q {
                    let root = self.dsu.union(v, u);
                    // the merged component can only grow from here
                    if self.dsu.size(root) >= self.k {
                        feasible = false;
                        break;
                    }
                }
            }
            if feasible {
                let next_used = if q == used { used + 1 } else { used };
                if self.dfs(depth + 1, next_used) {
                    return true;
                }
                if self.exhausted {
                    return false;
                }
            }
            self.dsu.rollback(mark);
            self.colour[v] = UNSET;
        }
        false
    }
}

/// Branch order: descending degree, then id. Fixed so reported node
/// counts are reproducible.
fn branch_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    order
}

fn probe(
    g: &Graph,
    c: usize,
    k: usize,
    max_nodes: u64,
    symmetry: bool,
    stop: &mut dyn FnMut() -> bool,
) -> (ExistsOutcome, u64) {
    assert!(c >= 1, "need at least one colour");
    assert!(k >= 1, "threshold must be positive");
    let n = g.vertex_count();
    // k = 1 asks for clustering 0: only the empty graph qualifies
    if k == 1 && n > 0 {
        return (ExistsOutcome::No, 0);
    }
    let mut engine = Engine {
        g,
        order: branch_order(g),
        colour: vec![UNSET; n],
        dsu: RollbackDsu::new(n),
        k,
        c: c as u32,
        symmetry,
        nodes: 0,
        max_nodes,
        stop,
        exhausted: false,
    };
    if engine.dfs(0, 0) {
        let witness = Colouring::new(c, engine.colour).expect("search fills every vertex");
        let measured = evaluate(g, &witness).expect("witness matches the graph").clustering;
        assert!(measured < k, "witness re-evaluation must stay below the threshold");
        (ExistsOutcome::Yes(witness), engine.nodes)
    } else if engine.exhausted {
        (ExistsOutcome::Exhausted, engine.nodes)
    } else {
        (ExistsOutcome::No, engine.nodes)
    }
}

/// Decision form: is there a c-colouring of `g` with clustering < k?
/// Returns the outcome and the number of nodes explored.
pub fn exists_below(g: &Graph, c: usize, k: usize, budget: &SearchBudget) -> (ExistsOutcome, u64) {
    probe(g, c, k, budget.max_nodes, budget.symmetry, &mut || false)
}

/// As `exists_below`, additionally aborting whenever `stop` reports
/// true (polled every few thousand nodes).
pub fn exists_below_with_stop(
    g: &Graph,
    c: usize,
    k: usize,
    budget: &SearchBudget,
    stop: &mut dyn FnMut() -> bool,
) -> (ExistsOutcome, u64) {
    probe(g, c, k, budget.max_nodes, budget.symmetry, stop)
}

/// Exact minimum clustering over all c-colourings, by ascending
/// threshold: each refuted threshold k proves min >= k, and the first
/// witness pins the minimum exactly.
pub fn min_clustering(g: &Graph, c: usize, budget: &SearchBudget) -> SearchOutcome {
    min_clustering_with_stop(g, c, budget, &mut || false)
}

pub fn min_clustering_with_stop(
    g: &Graph,
    c: usize,
    budget: &SearchBudget,
    stop: &mut dyn FnMut() -> bool,
) -> SearchOutcome {
    assert!(c >= 1, "need at least one colour");
    let n = g.vertex_count();
    if n == 0 {
        return SearchOutcome {
            status: SearchStatus::Exact,
            min_clustering: Some(0),
            lower: 0,
            upper: 0,
            witness: Some(Colouring::new(c, vec![]).unwrap()),
            nodes_explored: 0,
        };
    }
    let incumbent = Colouring::new(c, vec![0; n]).unwrap();
    let upper = evaluate(g, &incumbent).unwrap().clustering;
    let mut total = 0u64;
    let mut lower = 0usize;
    let exact = |min: usize, witness: Colouring, nodes: u64| SearchOutcome {
        status: SearchStatus::Exact,
        min_clustering: Some(min),
        lower: min,
        upper: min,
        witness: Some(witness),
        nodes_explored: nodes,
    };
    for k in 1..=upper {
        let remaining = budget.max_nodes.saturating_sub(total);
        let (outcome, nodes) = probe(g, c, k, remaining, budget.symmetry, stop);
        total += nodes;
        match outcome {
            ExistsOutcome::No => {
                lower = k;
                if k == upper {
                    return exact(upper, incumbent, total);
                }
            }
            ExistsOutcome::Yes(witness) => {
                let measured = evaluate(g, &witness).unwrap().clustering;
                // thresholds below k are refuted, so the witness is optimal
                assert_eq!(measured, k - 1);
                return exact(measured, witness, total);
            }
            ExistsOutcome::Exhausted => {
                let status = if lower >= 2 { SearchStatus::BoundOnly } else { SearchStatus::ExhaustedBudget };
                return SearchOutcome {
                    status,
                    min_clustering: None,
                    lower: lower.max(1),
                    upper,
                    witness: Some(incumbent),
                    nodes_explored: total,
                };
            }
        }
    }
    unreachable!("threshold loop terminates at the incumbent's clustering")
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HexError {
    #[error("terminal colours must pair up: colour(a) = colour(c) and colour(b) = colour(d)")]
    TerminalPattern,
    #[error("colouring does not cover the framed grid")]
    LengthMismatch,
    #[error("no monochromatic terminal path; the four-terminal lemma guarantees one, so this is a bug")]
    NoWitness,
}

/// A monochromatic path joining two opposite terminals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexWitness {
    pub colour: u32,
    /// Path from one terminal to the opposite one, consecutive vertices
    /// adjacent, all sharing `colour`.
    pub path: Vec<usize>,
}

/// On a framed grid coloured with colour(a)=colour(c) and
/// colour(b)=colour(d), finds a monochromatic a–c path or, failing
/// that, a monochromatic b–d path. One of the two always exists.
pub fn hex_check(fg: &FramedGrid, col: &Colouring) -> Result<HexWitness, HexError> {
    let g = &fg.graph;
    if col.len() != g.vertex_count() {
        return Err(HexError::LengthMismatch);
    }
    let [a, b, c, d] = fg.terminals();
    if col.get(a) != col.get(c) || col.get(b) != col.get(d) {
        return Err(HexError::TerminalPattern);
    }
    for (s, t) in [(a, c), (b, d)] {
        if let Some(path) = monochromatic_path(g, col, s, t) {
            return Ok(HexWitness { colour: col.get(s), path });
        }
    }
    Err(HexError::NoWitness)
}

fn monochromatic_path(g: &Graph, col: &Colouring, s: usize, t: usize) -> Option<Vec<usize>> {
    let class = col.get(s);
    let n = g.vertex_count();
    let mut parent = vec![UNSET as usize; n];
    let mut queue = alloc::collections::VecDeque::new();
    parent[s] = s;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        if v == t {
            let mut path = vec![t];
            let mut x = t;
            while x != s {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &u in g.neighbours(v) {
            if parent[u] == UNSET as usize && col.get(u) == class {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, fan, framed_grid, path};

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn cone_over(g: &Graph) -> Graph {
        crate::families::cone(1, g)
    }

    fn assert_exact(out: &SearchOutcome, expect: usize, g: &Graph) {
        assert_eq!(out.status, SearchStatus::Exact, "{out:?}");
        assert_eq!(out.min_clustering, Some(expect));
        assert_eq!((out.lower, out.upper), (expect, expect));
        let w = out.witness.as_ref().expect("exact outcome carries a witness");
        assert_eq!(evaluate(g, w).unwrap().clustering, expect);
    }

    #[test]
    fn complete_graph_with_enough_colours_is_proper() {
        let g = complete(4);
        let out = min_clustering(&g, 4, &SearchBudget::default());
        assert_exact(&out, 1, &g);
    }

    #[test]
    fn odd_cycle_needs_clustering_two() {
        let g = cycle(5);
        let out = min_clustering(&g, 2, &SearchBudget::default());
        assert_exact(&out, 2, &g);
        let (probe, _) = exists_below(&g, 2, 2, &SearchBudget::default());
        assert_eq!(probe, ExistsOutcome::No);
    }

    #[test]
    fn wheel_composition_base_case() {
        // every 3-colouring of the cone over C_5 keeps a pair together
        let w5 = cone_over(&cycle(5));
        let (out, _) = exists_below(&w5, 3, 2, &SearchBudget::default());
        assert_eq!(out, ExistsOutcome::No);
    }

    #[test]
    fn proper_colouring_witness_when_easy() {
        let g = path(4);
        let (out, _) = exists_below(&g, 2, 2, &SearchBudget::default());
        match out {
            ExistsOutcome::Yes(w) => assert_eq!(evaluate(&g, &w).unwrap().clustering, 1),
            other => panic!("expected a proper colouring, got {other:?}"),
        }
    }

    #[test]
    fn fan_lower_bound_small() {
        let g = fan(9);
        let out = min_clustering(&g, 2, &SearchBudget::default());
        assert_eq!(out.status, SearchStatus::Exact);
        assert!(out.min_clustering.unwrap() >= 3);
    }

    #[test]
    fn symmetry_pruning_is_sound() {
        let graphs = [cycle(5), path(6), fan(5), complete(4), cycle(8)];
        for g in &graphs {
            for c in 2..=3 {
                let with = min_clustering(g, c, &SearchBudget { symmetry: true, ..Default::default() });
                let without = min_clustering(g, c, &SearchBudget { symmetry: false, ..Default::default() });
                assert_eq!(with.min_clustering, without.min_clustering, "c={c}");
            }
        }
    }

    #[test]
    fn more_colours_never_hurt() {
        for g in [cycle(7), fan(6)] {
            let mut prev = usize::MAX;
            for c in 1..=3 {
                let out = min_clustering(&g, c, &SearchBudget::default());
                let min = out.min_clustering.unwrap();
                assert!(min <= prev, "minimum must be non-increasing in colours");
                prev = min;
            }
        }
    }

    #[test]
    fn single_colour_returns_largest_component() {
        let g = fan(7);
        let out = min_clustering(&g, 1, &SearchBudget::default());
        assert_exact(&out, 8, &g);
    }

    #[test]
    fn empty_graph_minimum_is_zero() {
        let out = min_clustering(&Graph::empty(0), 2, &SearchBudget::default());
        assert_eq!(out.min_clustering, Some(0));
    }

    #[test]
    fn zero_budget_reports_exhaustion() {
        let g = fan(12);
        let out = min_clustering(&g, 2, &SearchBudget::with_max_nodes(0));
        assert_ne!(out.status, SearchStatus::Exact);
        assert_eq!(out.min_clustering, None);
        assert!(out.lower >= 1);
        assert_eq!(out.upper, 13);
    }

    #[test]
    fn stop_callback_aborts() {
        let g = fan(12);
        let mut polls = 0u32;
        let out = min_clustering_with_stop(&g, 2, &SearchBudget::default(), &mut || {
            polls += 1;
            polls > 2
        });
        assert_ne!(out.status, SearchStatus::Exact);
    }

    fn checked_hex(fg: &FramedGrid, col: &Colouring) -> HexWitness {
        let w = hex_check(fg, col).expect("valid inputs always have a witness");
        assert!(w.path.len() >= 2);
        for pair in w.path.windows(2) {
            assert!(fg.graph.has_edge(pair[0], pair[1]));
        }
        for &v in &w.path {
            assert_eq!(col.get(v), w.colour);
        }
        w
    }

    use crate::families::framed_grid as framed;
    use crate::families::FramedGrid;

    #[test]
    fn hex_monochromatic_board() {
        let fg = framed(3, 3).unwrap();
        let col = Colouring::new(2, vec![0; 13]).unwrap();
        let w = checked_hex(&fg, &col);
        let ends = (w.path[0], *w.path.last().unwrap());
        assert_eq!(ends, (fg.top, fg.bottom));
    }

    #[test]
    fn hex_alternating_rows_forces_left_right_path() {
        let fg = framed_grid(3, 3).unwrap();
        let mut colours = vec![0u32; 13];
        for i in 0..3 {
            for j in 0..3 {
                colours[fg.vertex(i, j)] = (i % 2) as u32;
            }
        }
        colours[fg.right] = 1;
        colours[fg.left] = 1;
        let col = Colouring::new(2, colours).unwrap();
        let w = checked_hex(&fg, &col);
        assert_eq!(w.colour, 1);
        let ends = (w.path[0], *w.path.last().unwrap());
        assert_eq!(ends, (fg.right, fg.left));
    }

    #[test]
    fn hex_rejects_bad_terminals() {
        let fg = framed_grid(3, 3).unwrap();
        let mut colours = vec![0u32; 13];
        colours[fg.bottom] = 1;
        let col = Colouring::new(2, colours).unwrap();
        assert_eq!(hex_check(&fg, &col), Err(HexError::TerminalPattern));
        assert_eq!(
            hex_check(&fg, &Colouring::new(2, vec![0; 5]).unwrap()),
            Err(HexError::LengthMismatch)
        );
    }
}
