//! Size sweeps: run one algorithm over a family template at increasing
//! sizes and fit the growth exponent of the certificate bound.

use crate::family::substitute_size;
use crate::io::round_sig;
use crate::run::colour_run;
use crate::CliError;

#[derive(Clone, Debug)]
pub struct SweepSpec {
    /// Family template over the size variable `m`.
    pub family1: String,
    pub family2: Option<String>,
    pub algorithm: String,
    pub colours: Option<usize>,
    /// Values of `m`; at least two, strictly increasing.
    pub sizes: Vec<u64>,
    pub seed: u64,
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub m: u64,
    /// Vertices of the coloured graph.
    pub n: usize,
    pub clustering: usize,
    pub bound: f64,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    /// Least-squares slope of log(bound) against log(n).
    pub exponent: f64,
    /// The theorem's exponent for this algorithm, where it has one.
    pub target_exponent: Option<f64>,
}

/// The closed-form growth exponent of each certified bound in the
/// instance size n.
pub fn target_exponent(algorithm: &str, colours: Option<usize>) -> Option<f64> {
    match algorithm {
        "two_colour_product" => Some(2.0 / 3.0),
        "three_colour_product" => Some(4.0 / 7.0),
        "c_colour_tw" => colours.map(|c| 1.0 / c as f64),
        "product_colouring" => colours.map(|c| 1.0 / (c as f64).sqrt().floor()),
        _ => None,
    }
}

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for &(x, y) in points {
        num += (x - mean_x) * (y - mean_y);
        den += (x - mean_x) * (x - mean_x);
    }
    num / den
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, CliError> {
    if spec.sizes.len() < 2 {
        return Err(CliError::input("a sweep needs at least two sizes for a fit"));
    }
    if !spec.sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::input("sweep sizes must be strictly increasing"));
    }
    let mut rows = Vec::with_capacity(spec.sizes.len());
    for &m in &spec.sizes {
        let f1 = substitute_size(&spec.family1, m)?;
        let f2 = spec.family2.as_deref().map(|t| substitute_size(t, m)).transpose()?;
        let out = colour_run(
            &f1,
            f2.as_deref(),
            &spec.algorithm,
            spec.colours,
            spec.seed,
            spec.cap,
        )?;
        rows.push(SweepRow {
            m,
            n: out.graph.vertex_count(),
            clustering: out.report.clustering,
            bound: out.certificate.bound_value,
        });
    }
    if rows.iter().any(|r| r.n < 2 || r.bound <= 0.0) {
        return Err(CliError::input("sweep instances are too small to fit a log-log slope"));
    }
    let points: Vec<(f64, f64)> =
        rows.iter().map(|r| ((r.n as f64).ln(), r.bound.ln())).collect();
    Ok(SweepResult {
        exponent: fit_slope(&points),
        target_exponent: target_exponent(&spec.algorithm, spec.colours),
        rows,
    })
}

/// CSV with one row per size; the fitted exponent goes to the summary
/// line on stdout, not into the data.
pub fn to_csv(result: &SweepResult) -> String {
    let mut out = String::from("m,n,clustering,bound\n");
    for r in &result.rows {
        out.push_str(&format!("{},{},{},{}\n", r.m, r.n, r.clustering, round_sig(r.bound)));
    }
    out
}
