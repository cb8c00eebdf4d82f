//! Graph families the clustering bounds are built from: fans, cones over
//! disjoint copies, the three tower constructions, and framed grids.
//!
//! Builders label their vertices (`Role`) and, where the construction
//! yields one, return a tree decomposition alongside the graph so callers
//! never have to recover the width by search.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decomp::{validate_decomposition, DecompError, TreeDecomposition};
use crate::graph::{Graph, Role, VertexLabel};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error("{0}")]
    BadParam(&'static str),
    #[error("family would have {vertices} vertices, cap is {cap}")]
    TooLarge { vertices: u128, cap: usize },
    #[error("cannot parse family spec: {0}")]
    Parse(String),
    #[error(transparent)]
    Decomp(#[from] DecompError),
}

/// Path on `n` vertices, `i` adjacent to `i+1`.
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges valid")
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete edges valid")
}

/// Fan: a dominant vertex 0 joined to every vertex of the base path
/// `1..=n`. Has `n + 1` vertices and `2n - 1` edges.
pub fn fan(n: usize) -> Graph {
    assert!(n >= 1, "fan needs a nonempty base path");
    let spokes = (1..=n).map(|i| (0, i));
    let base = (2..=n).map(|i| (i - 1, i));
    let mut g = Graph::new(n + 1, spokes.chain(base)).expect("fan edges valid");
    let mut labels = vec![VertexLabel::plain(); n + 1];
    labels[0].role = Role::Dominant;
    g.set_labels(labels).unwrap();
    g
}

/// Path decomposition of `fan(n)`: bags `{0, i, i+1}` along the base, so
/// width 2 for `n >= 2` (a single bag `{0, 1}` for `n = 1`). The dominant
/// vertex sits in every bag.
pub fn fan_decomposition(n: usize) -> TreeDecomposition {
    assert!(n >= 1);
    if n == 1 {
        return TreeDecomposition::new(vec![vec![0, 1]], []).unwrap();
    }
    let bags = (1..n).map(|i| vec![0, i, i + 1]).collect();
    TreeDecomposition::new(bags, (0..n - 2).map(|i| (i, i + 1))).unwrap()
}

/// Cone over `m` disjoint copies of `g`: the copies keep their labels, a
/// fresh apex (last id, role `Apex`) is joined to every other vertex.
pub fn cone(m: usize, g: &Graph) -> Graph {
    assert!(m >= 1, "cone needs at least one copy");
    let copies: Vec<&Graph> = (0..m).map(|_| g).collect();
    let (base, _) = Graph::disjoint_union(&copies);
    let apex = base.vertex_count();
    let edges = base
        .edges()
        .iter()
        .copied()
        .chain((0..apex).map(|v| (v, apex)));
    let mut out = Graph::new(apex + 1, edges).expect("cone edges valid");
    let mut labels = match base.labels() {
        Some(ls) => ls.to_vec(),
        None => vec![VertexLabel::plain(); apex],
    };
    labels.push(VertexLabel::with_role(Role::Apex));
    out.set_labels(labels).unwrap();
    out
}

/// Decomposition of `cone(m, g)` from a decomposition `d` of `g`: each
/// copy reuses `d` with the apex added to every bag, and the copy trees
/// are chained root-to-root. Width grows by exactly one.
pub fn cone_decomposition(m: usize, g: &Graph, d: &TreeDecomposition) -> Result<TreeDecomposition, FamilyError> {
    assert!(m >= 1);
    validate_decomposition(g, d).map_err(DecompError::Invalid)?;
    let nv = g.vertex_count();
    let apex = m * nv;
    let per = d.bag_count();
    if per == 0 {
        // coning the empty graph gives K_1
        return Ok(TreeDecomposition::new(vec![vec![apex]], []).unwrap());
    }
    let mut bags = Vec::with_capacity(m * per);
    let mut edges = Vec::new();
    for copy in 0..m {
        let off = copy * nv;
        let node_off = copy * per;
        for bag in d.bags() {
            let mut b: Vec<usize> = bag.iter().map(|v| v + off).collect();
            b.push(apex);
            bags.push(b);
        }
        for &(x, y) in d.tree().edges() {
            edges.push((x + node_off, y + node_off));
        }
        if copy > 0 {
            edges.push(((copy - 1) * per, node_off));
        }
    }
    Ok(TreeDecomposition::new(bags, edges)?)
}

/// Tower `H_n`: cone over `n²` copies of `fan(n⁴)`, with the derived
/// width-3 decomposition.
pub fn h_tower(n: usize) -> Result<(Graph, TreeDecomposition), FamilyError> {
    if n < 1 {
        return Err(FamilyError::BadParam("h_tower needs n >= 1"));
    }
    let base = fan(n.pow(4));
    let bd = fan_decomposition(n.pow(4));
    let g = cone(n * n, &base);
    let d = cone_decomposition(n * n, &base, &bd)?;
    Ok((g, d))
}

/// Tower `G_c`: `G_2 = h_tower(n)`, then `G_{i+1}` cones `k - 1` copies
/// of `G_i`. Requires `k <= n³` and `c, n, k >= 2`; the decomposition has
/// width `c + 1`.
pub fn g_tower(c: usize, n: usize, k: usize) -> Result<(Graph, TreeDecomposition), FamilyError> {
    if c < 2 || n < 2 || k < 2 {
        return Err(FamilyError::BadParam("g_tower needs c, n, k >= 2"));
    }
    if k as u128 > (n as u128).pow(3) {
        return Err(FamilyError::BadParam("g_tower needs k <= n^3"));
    }
    let (mut g, mut d) = h_tower(n)?;
    for _ in 2..c {
        let next = cone(k - 1, &g);
        d = cone_decomposition(k - 1, &g, &d)?;
        g = next;
    }
    Ok((g, d))
}

/// Tower `C_{t,n}`: `C_1 = K_1`, and `C_{i+1}` cones `n` copies of `C_i`.
/// The decomposition has width `t - 1`.
pub fn c_tower(t: usize, n: usize) -> Result<(Graph, TreeDecomposition), FamilyError> {
    if t < 1 || n < 1 {
        return Err(FamilyError::BadParam("c_tower needs t, n >= 1"));
    }
    let mut g = Graph::empty(1);
    let mut d = TreeDecomposition::new(vec![vec![0]], []).unwrap();
    for _ in 1..t {
        let next = cone(n, &g);
        d = cone_decomposition(n, &g, &d)?;
        g = next;
    }
    Ok((g, d))
}

/// A triangulated grid inside a 4-cycle frame, the board for the
/// four-terminal path lemma.
#[derive(Clone, Debug)]
pub struct FramedGrid {
    pub graph: Graph,
    pub rows: usize,
    pub cols: usize,
    /// Apex adjacent to the whole first row.
    pub top: usize,
    /// Apex adjacent to the whole last column.
    pub right: usize,
    /// Apex adjacent to the whole last row.
    pub bottom: usize,
    /// Apex adjacent to the whole first column.
    pub left: usize,
}

impl FramedGrid {
    /// Terminals in outer-cycle order `(a, b, c, d)`; the lemma pairs
    /// `a` with `c` and `b` with `d`.
    pub fn terminals(&self) -> [usize; 4] {
        [self.top, self.right, self.bottom, self.left]
    }

    /// Grid (non-terminal) vertices, i.e. everything the frame encloses.
    pub fn interior(&self) -> impl Iterator<Item = usize> {
        0..self.rows * self.cols
    }

    pub fn vertex(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }
}

/// Builds a `rows x cols` grid with one consistent diagonal per cell
/// (so the disc is internally triangulated) and four side apexes joined
/// into an outer 4-cycle.
pub fn framed_grid(rows: usize, cols: usize) -> Result<FramedGrid, FamilyError> {
    if rows < 2 || cols < 2 {
        return Err(FamilyError::BadParam("framed grid needs rows, cols >= 2"));
    }
    let id = |i: usize, j: usize| i * cols + j;
    let base = rows * cols;
    let (top, right, bottom, left) = (base, base + 1, base + 2, base + 3);
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
            // one diagonal per cell, lower-left to upper-right
            if i + 1 < rows && j + 1 < cols {
                edges.push((id(i + 1, j), id(i, j + 1)));
            }
        }
    }
    for j in 0..cols {
        edges.push((top, id(0, j)));
        edges.push((bottom, id(rows - 1, j)));
    }
    for i in 0..rows {
        edges.push((left, id(i, 0)));
        edges.push((right, id(i, cols - 1)));
    }
    edges.extend([(top, right), (right, bottom), (bottom, left), (left, top)]);
    let mut graph = Graph::new(base + 4, edges).expect("framed grid edges valid");
    let mut labels = Vec::with_capacity(base + 4);
    for i in 0..rows {
        for j in 0..cols {
            labels.push(VertexLabel { role: Role::Plain, coords: vec![(0, i), (1, j)] });
        }
    }
    labels.extend((0..4).map(|_| VertexLabel::with_role(Role::Apex)));
    graph.set_labels(labels).unwrap();
    Ok(FramedGrid { graph, rows, cols, top, right, bottom, left })
}

/// A parseable description of one family instance, e.g. `fan:9`,
/// `cone:3,fan:4`, `gtower:c=3,n=2,k=2`, `ctower:t=3,n=2`, `framed:4x3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Path { n: usize },
    Complete { n: usize },
    Fan { n: usize },
    Cone { copies: usize, base: Box<FamilySpec> },
    HTower { n: usize },
    GTower { c: usize, n: usize, k: usize },
    CTower { t: usize, n: usize },
    FramedGrid { rows: usize, cols: usize },
}

/// A built family: the graph, its derived decomposition where the
/// construction provides one, and frame terminals for framed grids.
#[derive(Clone, Debug)]
pub struct BuiltFamily {
    pub graph: Graph,
    pub decomposition: Option<TreeDecomposition>,
    pub terminals: Option<[usize; 4]>,
}

/// Default cap on built vertex counts.
pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

impl FamilySpec {
    pub fn parse(s: &str) -> Result<Self, FamilyError> {
        let s = s.trim();
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k.trim(), r.trim()),
            None => (s, ""),
        };
        let int = |txt: &str, what: &str| -> Result<usize, FamilyError> {
            txt.trim()
                .parse::<usize>()
                .map_err(|_| FamilyError::Parse(format!("bad {what} in {s:?}")))
        };
        match kind {
            "path" => Ok(FamilySpec::Path { n: int(rest, "size")? }),
            "complete" => Ok(FamilySpec::Complete { n: int(rest, "size")? }),
            "fan" => Ok(FamilySpec::Fan { n: int(rest, "size")? }),
            "cone" => {
                let (m, base) = rest
                    .split_once(',')
                    .ok_or_else(|| FamilyError::Parse(format!("cone needs copies and a base in {s:?}")))?;
                Ok(FamilySpec::Cone {
                    copies: int(m, "copy count")?,
                    base: Box::new(FamilySpec::parse(base)?),
                })
            }
            "htower" | "h_tower" => Ok(FamilySpec::HTower { n: int(rest, "size")? }),
            "gtower" | "g_tower" => {
                let kv = parse_keyed(rest, &["c", "n", "k"], s)?;
                Ok(FamilySpec::GTower { c: kv[0], n: kv[1], k: kv[2] })
            }
            "ctower" | "c_tower" => {
                let kv = parse_keyed(rest, &["t", "n"], s)?;
                Ok(FamilySpec::CTower { t: kv[0], n: kv[1] })
            }
            "framed" | "framed_grid" => {
                let (r, c) = rest
                    .split_once('x')
                    .ok_or_else(|| FamilyError::Parse(format!("framed grid wants ROWSxCOLS in {s:?}")))?;
                Ok(FamilySpec::FramedGrid { rows: int(r, "rows")?, cols: int(c, "cols")? })
            }
            other => Err(FamilyError::Parse(format!("unknown family kind {other:?}"))),
        }
    }

    /// Number of vertices the build would produce.
    pub fn vertex_count(&self) -> u128 {
        match self {
            FamilySpec::Path { n } | FamilySpec::Complete { n } => *n as u128,
            FamilySpec::Fan { n } => *n as u128 + 1,
            FamilySpec::Cone { copies, base } => *copies as u128 * base.vertex_count() + 1,
            FamilySpec::HTower { n } => {
                let n = *n as u128;
                n * n * (n.pow(4) + 1) + 1
            }
            FamilySpec::GTower { c, n, k } => {
                let mut count = FamilySpec::HTower { n: *n }.vertex_count();
                for _ in 2..*c {
                    count = (*k as u128 - 1) * count + 1;
                }
                count
            }
            FamilySpec::CTower { t, n } => {
                let mut count = 1u128;
                for _ in 1..*t {
                    count = *n as u128 * count + 1;
                }
                count
            }
            FamilySpec::FramedGrid { rows, cols } => *rows as u128 * *cols as u128 + 4,
        }
    }

    pub fn build(&self) -> Result<BuiltFamily, FamilyError> {
        self.build_capped(DEFAULT_VERTEX_CAP)
    }

    pub fn build_capped(&self, cap: usize) -> Result<BuiltFamily, FamilyError> {
        let vertices = self.vertex_count();
        if vertices > cap as u128 {
            return Err(FamilyError::TooLarge { vertices, cap });
        }
        let plain = |graph: Graph, decomposition| BuiltFamily { graph, decomposition, terminals: None };
        match self {
            FamilySpec::Path { n } => {
                let d = if *n == 0 {
                    TreeDecomposition::new(vec![], [])?
                } else if *n == 1 {
                    TreeDecomposition::new(vec![vec![0]], [])?
                } else {
                    TreeDecomposition::new(
                        (0..n - 1).map(|i| vec![i, i + 1]).collect(),
                        (0..n.saturating_sub(2)).map(|i| (i, i + 1)),
                    )?
                };
                Ok(plain(path(*n), Some(d)))
            }
            FamilySpec::Complete { n } => {
                let d = if *n == 0 {
                    TreeDecomposition::new(vec![], [])?
                } else {
                    TreeDecomposition::new(vec![(0..*n).collect()], [])?
                };
                Ok(plain(complete(*n), Some(d)))
            }
            FamilySpec::Fan { n } => {
                if *n < 1 {
                    return Err(FamilyError::BadParam("fan needs n >= 1"));
                }
                Ok(plain(fan(*n), Some(fan_decomposition(*n))))
            }
            FamilySpec::Cone { copies, base } => {
                if *copies < 1 {
                    return Err(FamilyError::BadParam("cone needs m >= 1"));
                }
                let built = base.build_capped(cap)?;
                let g = cone(*copies, &built.graph);
                let d = match &built.decomposition {
                    Some(d) => Some(cone_decomposition(*copies, &built.graph, d)?),
                    None => None,
                };
                Ok(plain(g, d))
            }
            FamilySpec::HTower { n } => {
                let (g, d) = h_tower(*n)?;
                Ok(plain(g, Some(d)))
            }
            FamilySpec::GTower { c, n, k } => {
                let (g, d) = g_tower(*c, *n, *k)?;
                Ok(plain(g, Some(d)))
            }
            FamilySpec::CTower { t, n } => {
                let (g, d) = c_tower(*t, *n)?;
                Ok(plain(g, Some(d)))
            }
            FamilySpec::FramedGrid { rows, cols } => {
                let fg = framed_grid(*rows, *cols)?;
                Ok(BuiltFamily { terminals: Some(fg.terminals()), graph: fg.graph, decomposition: None })
            }
        }
    }
}

impl core::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Complete { n } => write!(f, "complete:{n}"),
            FamilySpec::Fan { n } => write!(f, "fan:{n}"),
            FamilySpec::Cone { copies, base } => write!(f, "cone:{copies},{base}"),
            FamilySpec::HTower { n } => write!(f, "htower:{n}"),
            FamilySpec::GTower { c, n, k } => write!(f, "gtower:c={c},n={n},k={k}"),
            FamilySpec::CTower { t, n } => write!(f, "ctower:t={t},n={n}"),
            FamilySpec::FramedGrid { rows, cols } => write!(f, "framed:{rows}x{cols}"),
        }
    }
}

fn parse_keyed(rest: &str, keys: &[&str], whole: &str) -> Result<Vec<usize>, FamilyError> {
    let mut out = Vec::with_capacity(keys.len());
    let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
    if parts.len() != keys.len() {
        return Err(FamilyError::Parse(format!(
            "expected {} comma-separated values in {whole:?}",
            keys.len()
        )));
    }
    for (part, key) in parts.iter().zip(keys) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| FamilyError::Parse(format!("expected {key}=<int> in {whole:?}")))?;
        if k.trim() != *key {
            return Err(FamilyError::Parse(format!("expected key {key}, got {k} in {whole:?}")));
        }
        out.push(
            v.trim()
                .parse()
                .map_err(|_| FamilyError::Parse(format!("bad value for {key} in {whole:?}")))?,
        );
    }
    Ok(out)
}
