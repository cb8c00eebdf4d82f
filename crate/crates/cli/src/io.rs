//! Serialisable mirrors of the core types plus the text formats.
//!
//! JSON output is deterministic: struct fields are declared in
//! alphabetical order, dynamic maps are `BTreeMap`, and every float is
//! rounded to 6 significant digits on the way out. Conversions back to
//! core types re-validate everything.

use std::collections::BTreeMap;

use boxtimes_core::colouring::{BoundCertificate, ClusteringReport, Colouring};
use boxtimes_core::graph::{Graph, Role, VertexLabel};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Round to 6 significant digits; integers up to 999 999 survive
/// exactly.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exp = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(5 - exp);
    (x * scale).round() / scale
}

fn role_name(role: Role) -> &'static str {
    match role {
        Role::Plain => "plain",
        Role::Dominant => "dominant",
        Role::Spine => "spine",
        Role::Top => "top",
        Role::Apex => "apex",
    }
}

fn role_from_name(name: &str) -> Result<Role, CliError> {
    Ok(match name {
        "plain" => Role::Plain,
        "dominant" => Role::Dominant,
        "spine" => Role::Spine,
        "top" => Role::Top,
        "apex" => Role::Apex,
        other => return Err(CliError::input(format!("unknown vertex role {other:?}"))),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelDto {
    pub coords: Vec<(u32, usize)>,
    pub role: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDto {
    pub edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<LabelDto>>,
    pub n: usize,
}

impl GraphDto {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDto {
            edges: g.edges().to_vec(),
            labels: g.labels().map(|ls| {
                ls.iter()
                    .map(|l| LabelDto { coords: l.coords.clone(), role: role_name(l.role).into() })
                    .collect()
            }),
            n: g.vertex_count(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, CliError> {
        let mut g = Graph::new(self.n, self.edges.iter().copied())
            .map_err(|e| CliError::input(format!("bad graph file: {e}")))?;
        if let Some(labels) = &self.labels {
            let mut ls = Vec::with_capacity(labels.len());
            for l in labels {
                ls.push(VertexLabel { role: role_from_name(&l.role)?, coords: l.coords.clone() });
            }
            g.set_labels(ls).map_err(|e| CliError::input(format!("bad graph labels: {e}")))?;
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColouringDto {
    pub colour_count: usize,
    pub colours: Vec<u32>,
}

impl ColouringDto {
    pub fn from_colouring(c: &Colouring) -> Self {
        ColouringDto { colour_count: c.colour_count(), colours: c.colours().to_vec() }
    }

    pub fn to_colouring(&self) -> Result<Colouring, CliError> {
        Colouring::new(self.colour_count, self.colours.clone())
            .map_err(|e| CliError::input(format!("bad colouring file: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDto {
    pub algorithm: String,
    pub bound_value: f64,
    pub params: BTreeMap<String, f64>,
}

impl CertificateDto {
    pub fn from_certificate(c: &BoundCertificate) -> Self {
        CertificateDto {
            algorithm: c.algorithm.clone(),
            bound_value: round_sig(c.bound_value),
            params: c.params.iter().map(|(k, &v)| (k.clone(), round_sig(v))).collect(),
        }
    }

    pub fn to_certificate(&self) -> BoundCertificate {
        let params: Vec<(&str, f64)> =
            self.params.iter().map(|(k, &v)| (k.as_str(), v)).collect();
        BoundCertificate::new(&self.algorithm, &params, self.bound_value)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDto {
    pub clustering: usize,
    pub component_census: Vec<Vec<usize>>,
    pub per_colour_max: Vec<usize>,
}

impl ReportDto {
    pub fn from_report(r: &ClusteringReport) -> Self {
        ReportDto {
            clustering: r.clustering,
            component_census: r.component_census.clone(),
            per_colour_max: r.per_colour_max.clone(),
        }
    }
}

/// Everything one algorithm run produces, as a single verifiable file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bundle {
    pub certificate: CertificateDto,
    pub colouring: ColouringDto,
    pub graph: GraphDto,
    pub report: ReportDto,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable value");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("cannot parse {what}: {e}")))
}

/// DOT rendering; roles become node attributes so layered families stay
/// readable in graph viewers.
pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph g {\n");
    for v in 0..g.vertex_count() {
        match g.labels().map(|ls| ls[v].role) {
            Some(Role::Plain) | None => out.push_str(&format!("  {v};\n")),
            Some(role) => out.push_str(&format!("  {v} [role=\"{}\"];\n", role_name(role))),
        }
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
