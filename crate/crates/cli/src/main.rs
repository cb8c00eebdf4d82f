//! `boxtimes`: clustered colouring of strong products at desk scale.
//!
//! Exit codes: 0 success, 1 violated bound / missing witness, 2 bad
//! input.

use std::path::PathBuf;
use std::process::ExitCode;

use boxtimes_cli::family::{build_pair, default_cap, ExtFamily};
use boxtimes_cli::io::{
    self, Bundle, CertificateDto, ColouringDto, GraphDto, ReportDto,
};
use boxtimes_cli::run::{colour_run, hex_run, search_run};
use boxtimes_cli::sweep::{run_sweep, to_csv, SweepSpec};
use boxtimes_cli::verify::{verify_bundle, verify_parts};
use boxtimes_cli::CliError;
use boxtimes_core::search::{SearchBudget, SearchStatus};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "boxtimes", version, about = "clustered colouring of graph products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family or a strong product of two families.
    Build {
        #[arg(long)]
        family: String,
        /// Second factor; output is the strong product.
        #[arg(long)]
        family2: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        #[arg(long)]
        seed: Option<u64>,
        /// Refuse to build more vertices than this.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Run a colouring algorithm and emit a verifiable bundle.
    Colour {
        #[arg(long)]
        family: String,
        #[arg(long)]
        family2: Option<String>,
        #[arg(long)]
        algo: String,
        #[arg(long)]
        colours: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Re-check an emitted bundle (or separate graph/colouring/certificate files).
    Verify {
        /// Bundle file from `colour --out`.
        #[arg(long, conflicts_with_all = ["graph", "colouring", "certificate"])]
        bundle: Option<PathBuf>,
        #[arg(long, requires = "colouring", requires = "certificate")]
        graph: Option<PathBuf>,
        #[arg(long)]
        colouring: Option<PathBuf>,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Exact minimum clustering by branch-and-prune search.
    Search {
        #[arg(long)]
        family: String,
        #[arg(long)]
        family2: Option<String>,
        #[arg(long)]
        colours: usize,
        /// Node budget for the search.
        #[arg(long)]
        budget: Option<u64>,
        /// Wall-clock cut-off.
        #[arg(long)]
        timeout_ms: Option<u64>,
        /// Disable canonical colour-order pruning.
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Sweep a size variable and fit the bound's growth exponent.
    Sweep {
        /// Family template over `m`, e.g. fan:m^2.
        #[arg(long)]
        family: String,
        #[arg(long)]
        family2: Option<String>,
        #[arg(long)]
        algo: String,
        #[arg(long)]
        colours: Option<usize>,
        /// Comma-separated values of m, strictly increasing.
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Check the framed-grid crossing lemma on one interior colouring.
    Hex {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Row-major 0/1 string for the interior cells.
        #[arg(long)]
        interior: String,
        /// Give top/bottom colour 1 and right/left colour 0 instead.
        #[arg(long)]
        swap: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    if let Some(path) = out {
        std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

#[derive(Serialize)]
struct SearchDto {
    lower: usize,
    min_clustering: Option<usize>,
    nodes_explored: u64,
    status: String,
    upper: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<ColouringDto>,
}

#[derive(Serialize)]
struct HexDto {
    colour: u32,
    path: Vec<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Build { family, family2, out, format, seed, cap } => {
            let seed = seed.unwrap_or(0);
            let cap = cap.unwrap_or_else(default_cap);
            let graph = match &family2 {
                Some(f2) => {
                    let (b1, b2) = build_pair(&family, f2, seed, cap)?;
                    b1.graph.strong_product(&b2.graph)
                }
                None => ExtFamily::parse(&family, seed)?.build(cap)?.graph,
            };
            let text = match format {
                GraphFormat::Json => io::to_json(&GraphDto::from_graph(&graph)),
                GraphFormat::Dot => io::graph_to_dot(&graph),
            };
            print!("{text}");
            write_out(&out, &text)?;
            Ok(0)
        }
        Command::Colour { family, family2, algo, colours, out, seed, cap } => {
            let outcome = colour_run(
                &family,
                family2.as_deref(),
                &algo,
                colours,
                seed.unwrap_or(0),
                cap.unwrap_or_else(default_cap),
            )?;
            let bundle = Bundle {
                certificate: CertificateDto::from_certificate(&outcome.certificate),
                colouring: ColouringDto::from_colouring(&outcome.colouring),
                graph: GraphDto::from_graph(&outcome.graph),
                report: ReportDto::from_report(&outcome.report),
            };
            let text = io::to_json(&bundle);
            print!("{text}");
            write_out(&out, &text)?;
            // bundles must verify against their own certificate
            let check = verify_bundle(&bundle)?;
            if check.pass {
                Ok(0)
            } else {
                eprintln!("error: certificate violated: {:?}", check.findings);
                Ok(1)
            }
        }
        Command::Verify { bundle, graph, colouring, certificate } => {
            let outcome = if let Some(path) = bundle {
                let bundle: Bundle = io::from_json(&read_file(&path)?, "bundle")?;
                verify_bundle(&bundle)?
            } else {
                let (graph, colouring, certificate) = match (graph, colouring, certificate) {
                    (Some(g), Some(c), Some(t)) => (g, c, t),
                    _ => {
                        return Err(CliError::input(
                            "verify needs --bundle or all of --graph --colouring --certificate",
                        ))
                    }
                };
                let g: GraphDto = io::from_json(&read_file(&graph)?, "graph")?;
                let c: ColouringDto = io::from_json(&read_file(&colouring)?, "colouring")?;
                let t: CertificateDto = io::from_json(&read_file(&certificate)?, "certificate")?;
                verify_parts(&g, &c, &t, None)?
            };
            print!("{}", io::to_json(&outcome));
            Ok(if outcome.pass { 0 } else { 1 })
        }
        Command::Search { family, family2, colours, budget, timeout_ms, no_symmetry, out, seed, cap } => {
            let budget = SearchBudget {
                max_nodes: budget.unwrap_or(SearchBudget::default().max_nodes),
                symmetry: !no_symmetry,
            };
            let (_, outcome) = search_run(
                &family,
                family2.as_deref(),
                colours,
                &budget,
                timeout_ms,
                seed.unwrap_or(0),
                cap.unwrap_or_else(default_cap),
            )?;
            let dto = SearchDto {
                lower: outcome.lower,
                min_clustering: outcome.min_clustering,
                nodes_explored: outcome.nodes_explored,
                status: match outcome.status {
                    SearchStatus::Exact => "exact".into(),
                    SearchStatus::BoundOnly => "bound_only".into(),
                    SearchStatus::ExhaustedBudget => "exhausted".into(),
                },
                upper: outcome.upper,
                witness: outcome.witness.as_ref().map(ColouringDto::from_colouring),
            };
            let text = io::to_json(&dto);
            print!("{text}");
            write_out(&out, &text)?;
            Ok(0)
        }
        Command::Sweep { family, family2, algo, colours, sizes, out, seed, cap } => {
            let sizes: Vec<u64> = sizes
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| CliError::input(format!("bad size {:?}", s.trim())))
                })
                .collect::<Result<_, _>>()?;
            let spec = SweepSpec {
                family1: family,
                family2,
                algorithm: algo,
                colours,
                sizes,
                seed: seed.unwrap_or(0),
                cap: cap.unwrap_or_else(default_cap),
            };
            let result = run_sweep(&spec)?;
            let csv = to_csv(&result);
            print!("{csv}");
            match result.target_exponent {
                Some(target) => println!(
                    "# fitted_exponent={:.6} target={:.6}",
                    result.exponent, target
                ),
                None => println!("# fitted_exponent={:.6}", result.exponent),
            }
            write_out(&out, &csv)?;
            Ok(0)
        }
        Command::Hex { rows, cols, interior, swap, out } => {
            let outcome = hex_run(rows, cols, &interior, swap)?;
            let dto = HexDto { colour: outcome.witness.colour, path: outcome.witness.path.clone() };
            let text = io::to_json(&dto);
            print!("{text}");
            write_out(&out, &text)?;
            Ok(0)
        }
    }
}
