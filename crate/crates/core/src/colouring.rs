//! Colouring data model, the exact clustering evaluator, bound
//! certificates with an independent formula verifier, and the grid
//! isoperimetry audit.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ColouringError {
    #[error("colouring needs at least one colour")]
    EmptyPalette,
    #[error("vertex {vertex} has colour {colour}, palette is 0..{colour_count}")]
    ColourOutOfRange { vertex: usize, colour: u32, colour_count: usize },
    #[error("graph has {vertices} vertices but colouring assigns {assigned}")]
    LengthMismatch { vertices: usize, assigned: usize },
}

/// An assignment of at most `colour_count` colours; adjacent vertices may
/// share a colour. Unused colours are fine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    colour_count: usize,
    colours: Vec<u32>,
}

impl Colouring {
    pub fn new(colour_count: usize, colours: Vec<u32>) -> Result<Self, ColouringError> {
        if colour_count == 0 {
            return Err(ColouringError::EmptyPalette);
        }
        for (vertex, &colour) in colours.iter().enumerate() {
            if colour as usize >= colour_count {
                return Err(ColouringError::ColourOutOfRange { vertex, colour, colour_count });
            }
        }
        Ok(Colouring { colour_count, colours })
    }

    /// Everything colour 0.
    pub fn monochromatic(n: usize) -> Self {
        Colouring { colour_count: 1, colours: vec![0; n] }
    }

    pub fn colour_count(&self) -> usize {
        self.colour_count
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn get(&self, v: usize) -> u32 {
        self.colours[v]
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }
}

/// Exact clustering census of one coloured graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusteringReport {
    /// Maximum monochromatic component size over all colours.
    pub clustering: usize,
    /// Largest monochromatic component per colour (0 for unused colours).
    pub per_colour_max: Vec<usize>,
    /// Per colour, monochromatic component sizes sorted non-increasing.
    pub component_census: Vec<Vec<usize>>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            // path halving
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub(crate) fn size_of(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }
}

/// Exact clustering census: union-find over the edges whose endpoints
/// share a colour.
pub fn evaluate(g: &Graph, col: &Colouring) -> Result<ClusteringReport, ColouringError> {
    if col.len() != g.vertex_count() {
        return Err(ColouringError::LengthMismatch {
            vertices: g.vertex_count(),
            assigned: col.len(),
        });
    }
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for &(u, v) in g.edges() {
        if col.get(u) == col.get(v) {
            uf.union(u, v);
        }
    }
    let mut census = vec![Vec::new(); col.colour_count()];
    let mut seen = vec![false; n];
    for v in 0..n {
        let r = uf.find(v);
        if !seen[r] {
            seen[r] = true;
            census[col.get(r) as usize].push(uf.size_of(r));
        }
    }
    Ok(report_from_census(col.colour_count(), census))
}

/// Independent reference evaluator: per-colour component search, no
/// union-find. Slower; exists to cross-check `evaluate`.
pub fn naive_evaluate(g: &Graph, col: &Colouring) -> Result<ClusteringReport, ColouringError> {
    if col.len() != g.vertex_count() {
        return Err(ColouringError::LengthMismatch {
            vertices: g.vertex_count(),
            assigned: col.len(),
        });
    }
    let mut census = vec![Vec::new(); col.colour_count()];
    for colour in 0..col.colour_count() as u32 {
        for comp in g.components_where(|v| col.get(v) == colour) {
            census[colour as usize].push(comp.len());
        }
    }
    Ok(report_from_census(col.colour_count(), census))
}

fn report_from_census(colour_count: usize, mut census: Vec<Vec<usize>>) -> ClusteringReport {
    for sizes in &mut census {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
    }
    let per_colour_max: Vec<usize> = census
        .iter()
        .map(|sizes| sizes.first().copied().unwrap_or(0))
        .collect();
    let clustering = per_colour_max.iter().copied().max().unwrap_or(0);
    let _ = colour_count;
    ClusteringReport { clustering, per_colour_max, component_census: census }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum CertificateError {
    #[error("no bound formula registered for algorithm {0:?}")]
    UnknownAlgorithm(String),
    #[error("certificate for {algorithm:?} is missing parameter {param:?}")]
    MissingParam { algorithm: String, param: &'static str },
    #[error("stated bound {stated} does not match recomputed formula value {recomputed}")]
    BoundMismatch { stated: f64, recomputed: f64 },
}

/// A claimed clustering bound: which formula, at which parameters, and
/// its value. The verifier recomputes the value independently.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCertificate {
    pub algorithm: String,
    pub params: BTreeMap<String, f64>,
    pub bound_value: f64,
}

impl BoundCertificate {
    pub fn new(algorithm: &str, params: &[(&str, f64)], bound_value: f64) -> Self {
        BoundCertificate {
            algorithm: String::from(algorithm),
            params: params.iter().map(|&(k, v)| (String::from(k), v)).collect(),
            bound_value,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertificateCheck {
    pub pass: bool,
    /// Slack `bound_value - clustering`; negative on failure.
    pub margin: f64,
}

/// Recomputes the formula value a certificate claims, from its own
/// parameters. This is the verifier half of the certificate contract;
/// it shares no code with the algorithms that emit certificates.
pub fn recompute_bound(algorithm: &str, params: &BTreeMap<String, f64>) -> Result<f64, CertificateError> {
    let need = |param: &'static str| -> Result<f64, CertificateError> {
        params.get(param).copied().ok_or(CertificateError::MissingParam {
            algorithm: String::from(algorithm),
            param,
        })
    };
    match algorithm {
        "two_colour_product" => {
            let (t, n) = (need("t")?, need("n")?);
            Ok(2.0 * libm::pow((t + 1.0) * n, 2.0 / 3.0))
        }
        "three_colour_product" => {
            let (t, n) = (need("t")?, need("n")?);
            Ok(2.0 * libm::pow(t + 1.0, 6.0 / 7.0) * libm::pow(n, 4.0 / 7.0))
        }
        "c_colour_tw" => {
            let (t, c, n) = (need("t")?, need("c")?, need("n")?);
            Ok(libm::pow(t + 1.0, (c - 1.0) / c) * libm::pow(n, 1.0 / c))
        }
        "product_colouring" => {
            let (t, c, n) = (need("t")?, need("c")?, need("n")?);
            let s = libm::floor(libm::sqrt(c));
            Ok(libm::pow(t + 1.0, 2.0 * (1.0 - 1.0 / libm::sqrt(c))) * libm::pow(n, 1.0 / s))
        }
        "project_colouring" => {
            let (k, n1, n2) = (need("k")?, need("n1")?, need("n2")?);
            if n2 <= n1 {
                Ok(k * libm::sqrt(n1 * n2))
            } else {
                Ok(k * n2)
            }
        }
        "clique_blowup" => Ok(need("k")? * need("ell")?),
        "bounded_degree_pipeline" => {
            let c = need("c")?;
            if need("certified")? != 0.0 {
                let (t, delta, n) = (need("t")?, need("delta")?, need("n")?);
                let alpha = libm::pow(6.0, c + 1.0) * (t + 1.0) * (t + 1.0) * libm::pow(delta, c);
                Ok(alpha * libm::pow(n, c / (c * c - c + 1.0)))
            } else if need("branch")? == 1.0 {
                let (k_base, tmd, q) = (need("k_base")?, need("tree_max_degree")?, need("q")?);
                let spread = if tmd > 2.0 { tmd - 1.0 } else { 1.0 };
                Ok(2.0 * k_base * libm::pow(spread, c - 1.0) * q)
            } else {
                let (t, h, ell, q) = (need("t")?, need("h")?, need("ell")?, need("q")?);
                Ok(libm::pow(t + 1.0, (c - 1.0) / c) * libm::pow(h, 1.0 / c) * ell * q)
            }
        }
        other => Err(CertificateError::UnknownAlgorithm(String::from(other))),
    }
}

/// Pass iff measured clustering is within the certified bound; the
/// stated bound must first agree with the recomputed formula value.
pub fn check_certificate(
    report: &ClusteringReport,
    cert: &BoundCertificate,
) -> Result<CertificateCheck, CertificateError> {
    check_certificate_with_tolerance(report, cert, 1e-9)
}

/// As [`check_certificate`] with an explicit relative tolerance, for
/// certificates that passed through lossy (rounded) serialisation.
pub fn check_certificate_with_tolerance(
    report: &ClusteringReport,
    cert: &BoundCertificate,
    rel_tol: f64,
) -> Result<CertificateCheck, CertificateError> {
    let recomputed = recompute_bound(&cert.algorithm, &cert.params)?;
    let scale = if libm::fabs(cert.bound_value) > 1.0 { libm::fabs(cert.bound_value) } else { 1.0 };
    if libm::fabs(recomputed - cert.bound_value) > rel_tol * scale {
        return Err(CertificateError::BoundMismatch { stated: cert.bound_value, recomputed });
    }
    let margin = cert.bound_value - report.clustering as f64;
    // bounds that are mathematically tight (e.g. exactly n) may round a
    // few ulps under the integer clustering; grant the formula the same
    // relative slack the recompute check uses
    Ok(CertificateCheck { pass: margin >= -rel_tol * scale, margin })
}

#[derive(Clone, Debug, PartialEq)]
pub enum IsoperimetryOutcome {
    /// A precondition failed; the inequality is not asserted.
    NotApplicable { reason: &'static str },
    Pass { lhs: f64, rhs: f64 },
    /// The lemma is a theorem, so this indicates an implementation bug.
    Fail { lhs: f64, rhs: f64 },
}

impl IsoperimetryOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, IsoperimetryOutcome::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, IsoperimetryOutcome::Fail { .. })
    }
}

/// Checks `n² <= 4|S|√k` for a separator `S` of the cartesian grid
/// `P_n □ P_n` whose leftover components all have at most `k` vertices.
/// Gated on `|S| <= n²/2` and `k <= n²/e²`; outside the gate the
/// inequality is not claimed and the audit reports not-applicable.
pub fn grid_isoperimetry_audit(n: usize, s: &[usize], k: usize) -> IsoperimetryOutcome {
    let nn = n * n;
    let mut in_s = vec![false; nn];
    for &v in s {
        assert!(v < nn, "separator vertex {v} outside grid of {nn}");
        in_s[v] = true;
    }
    let s_size = in_s.iter().filter(|&&b| b).count();
    if s_size as f64 > nn as f64 / 2.0 {
        return IsoperimetryOutcome::NotApplicable { reason: "separator exceeds half the grid" };
    }
    let e = core::f64::consts::E;
    if k as f64 > nn as f64 / (e * e) {
        return IsoperimetryOutcome::NotApplicable { reason: "component budget above n^2/e^2" };
    }
    let p = crate::families::path(n);
    let grid = p.cartesian_product(&p);
    if grid
        .components_where(|v| !in_s[v])
        .iter()
        .any(|comp| comp.len() > k)
    {
        return IsoperimetryOutcome::NotApplicable { reason: "a component exceeds the budget" };
    }
    let lhs = nn as f64;
    let rhs = 4.0 * s_size as f64 * libm::sqrt(k as f64);
    if lhs <= rhs {
        IsoperimetryOutcome::Pass { lhs, rhs }
    } else {
        IsoperimetryOutcome::Fail { lhs, rhs }
    }
}
