//! Independent re-checking of an emitted bundle: re-evaluate the
//! colouring on the graph, recompute the certificate formula, compare
//! both against what the bundle claims.

use boxtimes_core::colouring::{check_certificate_with_tolerance, evaluate, CertificateError};
use serde::Serialize;

use crate::io::{Bundle, CertificateDto, ColouringDto, GraphDto, ReportDto};
use crate::CliError;

/// Bundle floats were rounded to 6 significant digits on write; accept
/// that much drift (and no more) when recomputing formulas.
pub const FILE_TOLERANCE: f64 = 2e-6;

#[derive(Clone, Debug, Serialize)]
pub struct VerifyFinding {
    pub detail: String,
    pub kind: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutcome {
    pub bound: f64,
    pub clustering: usize,
    pub findings: Vec<VerifyFinding>,
    pub margin: f64,
    pub pass: bool,
    /// Colour and size of the component that breaks the bound, if one
    /// does.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<(usize, usize)>,
}

pub fn verify_parts(
    graph: &GraphDto,
    colouring: &ColouringDto,
    certificate: &CertificateDto,
    stored_report: Option<&ReportDto>,
) -> Result<VerifyOutcome, CliError> {
    let g = graph.to_graph()?;
    let col = colouring.to_colouring()?;
    let cert = certificate.to_certificate();
    let report = evaluate(&g, &col).map_err(|e| CliError::input(e.to_string()))?;
    let mut findings = Vec::new();
    let mut margin = f64::NAN;
    let mut worst = None;
    match check_certificate_with_tolerance(&report, &cert, FILE_TOLERANCE) {
        Ok(check) => {
            margin = check.margin;
            if !check.pass {
                let colour = report
                    .per_colour_max
                    .iter()
                    .enumerate()
                    .max_by_key(|(_, &size)| size)
                    .map(|(colour, _)| colour)
                    .unwrap_or(0);
                worst = Some((colour, report.clustering));
                findings.push(VerifyFinding {
                    detail: format!(
                        "colour {colour} has a component of {} vertices, bound is {}",
                        report.clustering, cert.bound_value
                    ),
                    kind: "bound_violation".into(),
                });
            }
        }
        Err(CertificateError::BoundMismatch { stated, recomputed }) => {
            findings.push(VerifyFinding {
                detail: format!("certificate states {stated}, formula gives {recomputed}"),
                kind: "formula_mismatch".into(),
            });
        }
        Err(other) => {
            findings.push(VerifyFinding { detail: other.to_string(), kind: "certificate".into() });
        }
    }
    if let Some(stored) = stored_report {
        if stored != &ReportDto::from_report(&report) {
            findings.push(VerifyFinding {
                detail: format!(
                    "stored report claims clustering {}, re-evaluation gives {}",
                    stored.clustering, report.clustering
                ),
                kind: "report_mismatch".into(),
            });
        }
    }
    Ok(VerifyOutcome {
        bound: cert.bound_value,
        clustering: report.clustering,
        pass: findings.is_empty(),
        findings,
        margin,
        worst,
    })
}

pub fn verify_bundle(bundle: &Bundle) -> Result<VerifyOutcome, CliError> {
    verify_parts(&bundle.graph, &bundle.colouring, &bundle.certificate, Some(&bundle.report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io;
    use crate::run::colour_run;

    fn bundle_of(f1: &str, f2: Option<&str>, algo: &str, colours: Option<usize>) -> Bundle {
        let out = colour_run(f1, f2, algo, colours, 0, 1_000_000).unwrap();
        Bundle {
            certificate: CertificateDto::from_certificate(&out.certificate),
            colouring: ColouringDto::from_colouring(&out.colouring),
            graph: GraphDto::from_graph(&out.graph),
            report: ReportDto::from_report(&out.report),
        }
    }

    #[test]
    fn emitted_bundles_verify_after_round_trip() {
        for (f1, f2, algo, colours) in [
            ("fan:9", Some("fan:9"), "two_colour_product", None),
            ("fan:12", Some("path:7"), "three_colour_product", None),
            ("ktree:n=30,t=2,seed=4", None, "c_colour_tw", Some(3)),
        ] {
            let bundle = bundle_of(f1, f2, algo, colours);
            let text = io::to_json(&bundle);
            let back: Bundle = io::from_json(&text, "bundle").unwrap();
            let outcome = verify_bundle(&back).unwrap();
            assert!(outcome.pass, "{algo}: {:?}", outcome.findings);
        }
    }

    #[test]
    fn perturbed_bound_fails_formula_check() {
        let mut bundle = bundle_of("fan:9", Some("fan:9"), "two_colour_product", None);
        bundle.certificate.bound_value *= 1.05;
        let outcome = verify_bundle(&bundle).unwrap();
        assert!(!outcome.pass);
        assert_eq!(outcome.findings[0].kind, "formula_mismatch");
    }

    #[test]
    fn single_vertex_tamper_breaks_a_tight_bound() {
        let mut bundle = bundle_of("fan:25", None, "c_colour_tw", Some(2));
        let n = bundle.graph.n;
        let bound = bundle.certificate.bound_value;
        // find one recolouring that merges components past the bound
        let original = bundle.colouring.colours.clone();
        let mut tampered = None;
        'search: for v in 0..n {
            for colour in 0..bundle.colouring.colour_count as u32 {
                if original[v] == colour {
                    continue;
                }
                bundle.colouring.colours = original.clone();
                bundle.colouring.colours[v] = colour;
                let outcome = verify_bundle(&bundle).unwrap();
                if outcome.clustering as f64 > bound {
                    tampered = Some((v, colour, outcome));
                    break 'search;
                }
            }
        }
        let (_, _, outcome) = tampered.expect("some single recolouring breaches the bound");
        assert!(!outcome.pass);
        assert!(outcome.findings.iter().any(|f| f.kind == "bound_violation"));
        assert!(outcome.findings.iter().any(|f| f.kind == "report_mismatch"));
        assert!(outcome.worst.is_some());
    }
}
