//! Algorithm dispatch shared by `colour`, `search`, `sweep` and `hex`.

use boxtimes_core::algos::{
    bounded_degree_pipeline, c_colour_tw, clique_blowup, product_colouring, project_colouring,
    three_colour_product, tree_partition_heuristic, two_colour_product, ProductInstance,
};
use boxtimes_core::colouring::{evaluate, BoundCertificate, ClusteringReport, Colouring};
use boxtimes_core::families::{framed_grid, FamilySpec};
use boxtimes_core::graph::Graph;
use boxtimes_core::search::{
    hex_check, min_clustering_with_stop, HexWitness, SearchBudget, SearchOutcome,
};

use crate::family::{build_pair, BuiltExt, ExtFamily};
use crate::CliError;

pub const ALGORITHMS: &[&str] = &[
    "two_colour_product",
    "three_colour_product",
    "c_colour_tw",
    "product_colouring",
    "project_colouring",
    "clique_blowup",
    "bounded_degree_pipeline",
];

#[derive(Debug)]
pub struct ColourOutcome {
    pub graph: Graph,
    pub colouring: Colouring,
    pub certificate: BoundCertificate,
    pub report: ClusteringReport,
}

fn need_decomposition(built: BuiltExt, what: &str) -> Result<(Graph, boxtimes_core::TreeDecomposition), CliError> {
    let BuiltExt { graph, decomposition } = built;
    match decomposition {
        Some(d) => Ok((graph, d)),
        None => Err(CliError::input(format!("family {what} has no tree decomposition"))),
    }
}

fn product_instance(f1: &str, f2: &str, seed: u64, cap: usize) -> Result<ProductInstance, CliError> {
    let (b1, b2) = build_pair(f1, f2, seed, cap)?;
    let (g1, d1) = need_decomposition(b1, f1)?;
    let (g2, d2) = need_decomposition(b2, f2)?;
    ProductInstance::new(g1, d1, g2, d2).map_err(|e| CliError::input(format!("{e}")))
}

/// Run one named algorithm on one instance. Product algorithms need a
/// second family; `c_colour_tw` takes exactly one; `clique_blowup`
/// insists the second factor is a complete graph.
fn require_pair<'a>(f2: Option<&'a str>, algo: &str) -> Result<&'a str, CliError> {
    f2.ok_or_else(|| CliError::input(format!("{algo} needs --family2")))
}

pub fn colour_run(
    f1: &str,
    f2: Option<&str>,
    algo: &str,
    colours: Option<usize>,
    seed: u64,
    cap: usize,
) -> Result<ColourOutcome, CliError> {
    let need_colours = |colours: Option<usize>| -> Result<usize, CliError> {
        colours.ok_or_else(|| CliError::input(format!("{algo} needs --colours")))
    };
    let (graph, colouring, certificate) = match algo {
        "two_colour_product" => {
            let inst = product_instance(f1, require_pair(f2, algo)?, seed, cap)?;
            let (col, cert) = two_colour_product(&inst).map_err(|e| CliError::input(e.to_string()))?;
            (inst.product().clone(), col, cert)
        }
        "three_colour_product" => {
            let inst = product_instance(f1, require_pair(f2, algo)?, seed, cap)?;
            let (col, cert) =
                three_colour_product(&inst).map_err(|e| CliError::input(e.to_string()))?;
            (inst.product().clone(), col, cert)
        }
        "c_colour_tw" => {
            if f2.is_some() {
                return Err(CliError::input("c_colour_tw colours a single graph; drop --family2"));
            }
            let c = need_colours(colours)?;
            let built = ExtFamily::parse(f1, seed)?.build(cap)?;
            let (g, d) = need_decomposition(built, f1)?;
            let (col, cert) = c_colour_tw(&g, &d, c).map_err(|e| CliError::input(e.to_string()))?;
            (g, col, cert)
        }
        "product_colouring" => {
            let c = need_colours(colours)?;
            let inst = product_instance(f1, require_pair(f2, algo)?, seed, cap)?;
            let (col, cert) =
                product_colouring(&inst, c).map_err(|e| CliError::input(e.to_string()))?;
            (inst.product().clone(), col, cert)
        }
        "project_colouring" => {
            let c = need_colours(colours)?;
            let inst = product_instance(f1, require_pair(f2, algo)?, seed, cap)?;
            let (base, _) =
                c_colour_tw(inst.g1(), inst.d1(), c).map_err(|e| CliError::input(e.to_string()))?;
            let (col, cert) =
                project_colouring(&inst, &base).map_err(|e| CliError::input(e.to_string()))?;
            (inst.product().clone(), col, cert)
        }
        "clique_blowup" => {
            let c = need_colours(colours)?;
            let f2 = require_pair(f2, algo)?;
            let ell = match ExtFamily::parse(f2, seed)? {
                ExtFamily::Std(FamilySpec::Complete { n }) => n,
                _ => {
                    return Err(CliError::input(
                        "clique_blowup needs --family2 complete:<ell>",
                    ))
                }
            };
            let built = ExtFamily::parse(f1, seed)?.build(cap)?;
            let (g, d) = need_decomposition(built, f1)?;
            if g.vertex_count().saturating_mul(ell) > cap {
                return Err(CliError::input(format!(
                    "product would have {} vertices, cap is {cap}",
                    g.vertex_count() * ell
                )));
            }
            let (base, _) = c_colour_tw(&g, &d, c).map_err(|e| CliError::input(e.to_string()))?;
            let (col, cert) =
                clique_blowup(&g, &base, ell).map_err(|e| CliError::input(e.to_string()))?;
            let product = g.strong_product(&boxtimes_core::families::complete(ell));
            (product, col, cert)
        }
        "bounded_degree_pipeline" => {
            let c = need_colours(colours)?;
            let (b1, b2) = build_pair(f1, require_pair(f2, algo)?, seed, cap)?;
            let (g1, d1) = need_decomposition(b1, f1)?;
            let (g2, d2) = need_decomposition(b2, f2.unwrap())?;
            let witness = tree_partition_heuristic(&g2, &d2, g2.max_degree())
                .map_err(|e| CliError::input(e.to_string()))?;
            let (col, cert) = bounded_degree_pipeline(&g1, &d1, &g2, &witness, c, None)
                .map_err(|e| CliError::input(e.to_string()))?;
            (g1.strong_product(&g2), col, cert)
        }
        other => {
            return Err(CliError::input(format!(
                "unknown algorithm {other:?}; expected one of {ALGORITHMS:?}"
            )))
        }
    };
    let report = evaluate(&graph, &colouring).map_err(|e| CliError::input(e.to_string()))?;
    Ok(ColourOutcome { graph, colouring, certificate, report })
}

/// Build a single family or a product and run the exact search.
pub fn search_run(
    f1: &str,
    f2: Option<&str>,
    colours: usize,
    budget: &SearchBudget,
    timeout_ms: Option<u64>,
    seed: u64,
    cap: usize,
) -> Result<(Graph, SearchOutcome), CliError> {
    let graph = match f2 {
        Some(f2) => {
            let (b1, b2) = build_pair(f1, f2, seed, cap)?;
            b1.graph.strong_product(&b2.graph)
        }
        None => ExtFamily::parse(f1, seed)?.build(cap)?.graph,
    };
    let deadline = timeout_ms.map(|ms| std::time::Instant::now() + std::time::Duration::from_millis(ms));
    let mut stop = move || deadline.is_some_and(|d| std::time::Instant::now() >= d);
    let outcome = min_clustering_with_stop(&graph, colours, budget, &mut stop);
    Ok((graph, outcome))
}

#[derive(Debug)]
pub struct HexOutcome {
    pub witness: HexWitness,
    pub rows: usize,
    pub cols: usize,
}

/// Interior colouring as a row-major string of `0`/`1`; terminals top
/// and bottom take one colour, right and left the other (`swap` flips
/// which).
pub fn hex_run(rows: usize, cols: usize, interior: &str, swap: bool) -> Result<HexOutcome, CliError> {
    let fg = framed_grid(rows, cols).map_err(|e| CliError::input(e.to_string()))?;
    let cells: Vec<u32> = interior
        .trim()
        .chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(CliError::input(format!("interior must be 0/1, found {other:?}"))),
        })
        .collect::<Result<_, _>>()?;
    if cells.len() != rows * cols {
        return Err(CliError::input(format!(
            "interior has {} cells, grid needs {}",
            cells.len(),
            rows * cols
        )));
    }
    let n = fg.graph.vertex_count();
    let mut colours = vec![0u32; n];
    colours[..rows * cols].copy_from_slice(&cells);
    let [top, right, bottom, left] = fg.terminals();
    let (axis_a, axis_b) = if swap { (1, 0) } else { (0, 1) };
    colours[top] = axis_a;
    colours[bottom] = axis_a;
    colours[right] = axis_b;
    colours[left] = axis_b;
    let col = Colouring::new(2, colours).map_err(|e| CliError::input(e.to_string()))?;
    let witness = hex_check(&fg, &col).map_err(|e| match e {
        boxtimes_core::search::HexError::NoWitness => {
            CliError::Violation("no monochromatic crossing path found".into())
        }
        other => CliError::input(other.to_string()),
    })?;
    Ok(HexOutcome { witness, rows, cols })
}
