use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{parse_spec, print_spec, Spec};
use crate::criteria::{criterion_report, hypergraph_criterion_report, CriterionReport, ImpliedVerdict, Interpretation};
use crate::error::{Error, Result};
use crate::quantum::{
    density_of_graph, density_of_hypergraph, graph_ppt_verdict, product_vector_range_search, ProductVector,
    DEFAULT_PPT_TOL,
};
use crate::surgery::{default_max_depth, prove_entangled, ProofTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "entangled-NPT")]
    EntangledNpt,
    #[serde(rename = "bound-entangled")]
    BoundEntangled,
    #[serde(rename = "PPT-uncertified")]
    PptUncertified,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::EntangledNpt => "entangled-NPT",
            Verdict::BoundEntangled => "bound-entangled",
            Verdict::PptUncertified => "PPT-uncertified",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// `None` infers the interpretation from the edge kinds.
    pub interpretation: Option<Interpretation>,
    pub tol: f64,
    /// `None` uses the edge count of the input.
    pub max_depth: Option<usize>,
    /// Runs the product-vector range search at this resolution when set.
    pub resolution: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            interpretation: None,
            tol: DEFAULT_PPT_TOL,
            max_depth: None,
            resolution: None,
        }
    }
}

/// Range-search evidence; real product vectors only, and an empty list is
/// not a proof that none exist.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeEvidence {
    pub resolution: usize,
    pub rank: usize,
    pub witnesses: Vec<ProductVector>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub input_digest: String,
    pub rows: usize,
    pub cols: usize,
    #[serde(flatten)]
    pub criterion: CriterionReport,
    pub min_eig: Option<f64>,
    pub proof: Option<ProofTree>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<RangeEvidence>,
    pub verdict: Verdict,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Verdict from the embedded parts alone.
///
/// No state gives `inconclusive`. A numerically NPT state that the degree
/// condition does not certify is `entangled-NPT`. Otherwise the state is PPT
/// (certified or numeric), and it is `bound-entangled` exactly when surgery
/// proved it entangled.
pub fn recompute_verdict(report: &Report) -> Verdict {
    let Some(ppt) = &report.criterion.ppt else {
        return Verdict::Inconclusive;
    };
    let certified = report.criterion.implied_verdict == ImpliedVerdict::PptCertified;
    if !ppt.is_ppt && !certified {
        return Verdict::EntangledNpt;
    }
    match &report.proof {
        Some(tree) if tree.proven => Verdict::BoundEntangled,
        _ => Verdict::PptUncertified,
    }
}

fn digest(spec: &Spec) -> String {
    hex::encode(Sha256::digest(print_spec(spec).as_bytes()))
}

fn pipeline(spec: &Spec, opts: &VerifyOptions, full: bool) -> Result<Report> {
    let (mut criterion, proof, proof_note, range) = match spec {
        Spec::Graph(g) => {
            let interpretation = opts.interpretation.unwrap_or_else(|| Interpretation::infer(g));
            let mut criterion = criterion_report(g, interpretation)?;
            if !g.is_edgeless() {
                criterion.ppt = Some(graph_ppt_verdict(g, opts.tol)?);
            }
            let (proof, note) = if !full {
                (None, None)
            } else if g.is_edgeless() {
                (None, Some("edgeless graph has no state".to_string()))
            } else {
                match prove_entangled(g, opts.max_depth.unwrap_or_else(|| default_max_depth(g))) {
                    Ok(tree) => (Some(tree), None),
                    Err(e @ Error::IncidenceClass { .. }) => (None, Some(format!("surgery not run: {e}"))),
                    Err(e) => return Err(e),
                }
            };
            let range = match opts.resolution {
                Some(res) if full && !g.is_edgeless() => {
                    let rho = density_of_graph(g)?;
                    Some(RangeEvidence {
                        resolution: res,
                        rank: rho.rank(),
                        witnesses: product_vector_range_search(&rho, res)?,
                    })
                }
                _ => None,
            };
            (criterion, proof, note, range)
        }
        Spec::Hypergraph(h) => {
            if let Some(i) = opts.interpretation.filter(|&i| i != Interpretation::Hypergraph) {
                return Err(Error::InterpretationMismatch {
                    interpretation: i.to_string(),
                    kind: "hyper".into(),
                });
            }
            let criterion = hypergraph_criterion_report(h, opts.tol)?;
            let note = full.then(|| "surgery is not defined for hypergraph states".to_string());
            let range = match opts.resolution {
                Some(res) if full && !h.is_empty() => {
                    let rho = density_of_hypergraph(h)?;
                    Some(RangeEvidence {
                        resolution: res,
                        rank: rho.rank(),
                        witnesses: product_vector_range_search(&rho, res)?,
                    })
                }
                _ => None,
            };
            (criterion, None, note, range)
        }
    };
    if let Some(ppt) = &criterion.ppt {
        if criterion.implied_verdict == ImpliedVerdict::EntangledByDegree && ppt.is_ppt {
            criterion
                .details
                .push_str("; degree criterion detects entanglement of a numerically PPT state");
        }
    }
    let mut report = Report {
        input_digest: digest(spec),
        rows: spec.rows(),
        cols: spec.cols(),
        min_eig: criterion.ppt.map(|p| p.min_eig),
        criterion,
        proof,
        proof_note,
        range,
        verdict: Verdict::Inconclusive,
    };
    report.verdict = recompute_verdict(&report);
    Ok(report)
}

/// Degree criterion plus numeric PPT check, without surgery.
pub fn check(spec: &Spec, opts: &VerifyOptions) -> Result<Report> {
    pipeline(spec, opts, false)
}

/// Degree criterion, numeric PPT check and surgery search (plus the range
/// search when a resolution is given).
pub fn verify(spec: &Spec, opts: &VerifyOptions) -> Result<Report> {
    pipeline(spec, opts, true)
}

pub fn verify_text(text: &str, opts: &VerifyOptions) -> Result<Report> {
    verify(&parse_spec(text)?, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cross_hatch, EdgeKind, Weight};

    #[test]
    fn bell_is_npt() {
        let r = verify_text("grid 2 2\nL (0,0) (1,1)\n", &VerifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::EntangledNpt);
        assert!(r.proof.as_ref().unwrap().proven);
        assert!((r.min_eig.unwrap() + 0.5).abs() < 1e-9);
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for field in ["interpretation", "degree_equal", "applicable", "min_eig", "proof", "verdict"] {
            assert!(json.get(field).is_some(), "missing {field}");
        }
        assert_eq!(json["verdict"], "entangled-NPT");
        assert_eq!(json["interpretation"], "L");
        let c = check(&parse_spec("grid 2 2\nL (0,0) (1,1)\n").unwrap(), &VerifyOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::EntangledNpt);
        assert!(c.proof.is_none());
    }

    #[test]
    fn cross_hatch_is_bound_entangled() {
        let g = cross_hatch(3, 3, EdgeKind::Q, &Weight::one()).unwrap();
        let r = verify(&Spec::Graph(g), &VerifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::BoundEntangled);
        assert_eq!(recompute_verdict(&r), r.verdict);
    }

    #[test]
    fn edgeless_and_inconclusive() {
        let r = verify_text("grid 2 2\n", &VerifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.min_eig.is_none());
        let sep = verify_text("grid 2 2\nL (0,0) (0,1)\n", &VerifyOptions::default()).unwrap();
        assert_eq!(sep.verdict, Verdict::PptUncertified);
        assert!(!sep.proof.unwrap().proven);
    }

    #[test]
    fn interpretation_handling() {
        let opts = VerifyOptions {
            interpretation: Some(Interpretation::Q),
            ..VerifyOptions::default()
        };
        assert!(matches!(
            verify_text("grid 2 2\nL (0,0) (1,1)\n", &opts),
            Err(Error::InterpretationMismatch { .. })
        ));
        let hyper = verify_text("hypergrid 2 2\nH (0,0) (0,1) (1,0)\n", &VerifyOptions::default()).unwrap();
        assert_eq!(hyper.verdict, Verdict::EntangledNpt);
        assert!(verify_text("hypergrid 2 2\nH (0,0) (0,1) (1,0)\n", &opts).is_err());
    }

    #[test]
    fn digest_ignores_layout() {
        let a = verify_text("grid 2 2\nL (1,1) (0,0)\n", &VerifyOptions::default()).unwrap();
        let b = verify_text("# c\ngrid 2 2\n  L (0,0)   (1,1) w=1\n", &VerifyOptions::default()).unwrap();
        assert_eq!(a.input_digest, b.input_digest);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn range_evidence_for_separable_edge() {
        let opts = VerifyOptions {
            resolution: Some(16),
            ..VerifyOptions::default()
        };
        let r = verify_text("grid 2 2\nL (0,0) (0,1)\n", &opts).unwrap();
        let range = r.range.unwrap();
        assert_eq!(range.rank, 1);
        assert_eq!(range.witnesses.len(), 1);
    }
}
