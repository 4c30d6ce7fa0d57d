//! Degree criteria, their applicability gates, and hybrid incidence classes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeFilter, EdgeKind, GridGraph, Hypergraph};
use crate::linalg::ExactVector;
use crate::quantum::{density_of_hypergraph, ppt_verdict, PptVerdict};

/// Incidence class of a hybrid graph, most specific first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HybridClass {
    PureL,
    PureQ,
    /// Bipartite `Q`-subgraph and no vertex touching both kinds.
    #[serde(rename = "NOI")]
    Noi,
    /// Bipartite `Q`-subgraph with every `L`-edge inside one part.
    #[serde(rename = "COI")]
    Coi,
    #[serde(rename = "GI")]
    Gi,
}

impl fmt::Display for HybridClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HybridClass::PureL => "PureL",
            HybridClass::PureQ => "PureQ",
            HybridClass::Noi => "NOI",
            HybridClass::Coi => "COI",
            HybridClass::Gi => "GI",
        })
    }
}

/// Classifies `g`. Edgeless graphs count as `PureL`.
///
/// COI is tested on the whole graph: some two-colouring of the `Q`-subgraph
/// must put both ends of every `L`-edge on the same side, which is the same as
/// a sign labelling that is constant across `L`-edges and flips across
/// `Q`-edges.
pub fn classify_hybrid(g: &GridGraph) -> HybridClass {
    let (has_l, has_q) = (g.has_kind(EdgeKind::L), g.has_kind(EdgeKind::Q));
    if !has_q {
        return HybridClass::PureL;
    }
    if !has_l {
        return HybridClass::PureQ;
    }
    if is_noi(g) {
        HybridClass::Noi
    } else if g.balanced_signs().is_some() {
        HybridClass::Coi
    } else {
        HybridClass::Gi
    }
}

/// The NOI predicate on its own (true for pure graphs with bipartite `Q`-part).
pub fn is_noi(g: &GridGraph) -> bool {
    if g.bipartition(EdgeFilter::QOnly).is_none() {
        return false;
    }
    let n = g.vertex_count();
    let (mut touches_l, mut touches_q) = (vec![false; n], vec![false; n]);
    for e in g.edges() {
        let flags = match e.kind {
            EdgeKind::L => &mut touches_l,
            EdgeKind::Q => &mut touches_q,
        };
        flags[g.index(e.a)] = true;
        flags[g.index(e.b)] = true;
    }
    (0..n).all(|i| !(touches_l[i] && touches_q[i]))
}

/// The COI predicate on its own; every NOI graph satisfies it.
pub fn is_coi(g: &GridGraph) -> bool {
    g.balanced_signs().is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Interpretation {
    L,
    Q,
    #[serde(rename = "hybrid")]
    Hybrid,
    #[serde(rename = "hypergraph")]
    Hypergraph,
}

impl Interpretation {
    /// `L` for all-`L` (and edgeless) graphs, `Q` for all-`Q`, else hybrid.
    pub fn infer(g: &GridGraph) -> Self {
        match (g.has_kind(EdgeKind::L), g.has_kind(EdgeKind::Q)) {
            (_, false) => Interpretation::L,
            (false, true) => Interpretation::Q,
            (true, true) => Interpretation::Hybrid,
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interpretation::L => "L",
            Interpretation::Q => "Q",
            Interpretation::Hybrid => "hybrid",
            Interpretation::Hypergraph => "hypergraph",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ImpliedVerdict {
    #[serde(rename = "PPT-certified")]
    PptCertified,
    #[serde(rename = "entangled-by-degree")]
    EntangledByDegree,
    #[serde(rename = "inapplicable")]
    Inapplicable,
}

impl fmt::Display for ImpliedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImpliedVerdict::PptCertified => "PPT-certified",
            ImpliedVerdict::EntangledByDegree => "entangled-by-degree",
            ImpliedVerdict::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub interpretation: Interpretation,
    pub applicable: bool,
    pub degree_equal: bool,
    pub implied_verdict: ImpliedVerdict,
    /// Incidence class of the graph and of its transpose (hybrid only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hybrid_class: Option<(HybridClass, HybridClass)>,
    /// Numeric PPT verdict; always present for hypergraphs with a state.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ppt: Option<PptVerdict>,
    pub details: String,
}

fn small_dimension_note(rows: usize, cols: usize) -> Option<String> {
    (rows * cols <= 6 && rows.min(cols) <= 2 && rows.max(cols) <= 3).then(|| {
        format!("on a {rows}x{cols} grid PPT is equivalent to separability")
    })
}

/// Degree criterion under one graph interpretation.
///
/// `L` is always applicable, `Q` needs a bipartite transpose, and hybrid needs
/// a transpose that is NOI, COI, pure `L` or bipartite pure `Q`. Degree
/// equality certifies PPT under every interpretation.
pub fn criterion_report(g: &GridGraph, interpretation: Interpretation) -> Result<CriterionReport> {
    let mismatch = |kind: EdgeKind| Error::InterpretationMismatch {
        interpretation: interpretation.to_string(),
        kind: kind.to_string(),
    };
    let transpose = g.partial_transpose();
    let mut hybrid_class = None;
    let (applicable, gate) = match interpretation {
        Interpretation::L => {
            if g.has_kind(EdgeKind::Q) {
                return Err(mismatch(EdgeKind::Q));
            }
            (true, "always applicable".to_string())
        }
        Interpretation::Q => {
            if g.has_kind(EdgeKind::L) {
                return Err(mismatch(EdgeKind::L));
            }
            let bip = transpose.is_bipartite();
            let gate = if bip { "transpose is bipartite" } else { "transpose is not bipartite" };
            (bip, gate.to_string())
        }
        Interpretation::Hybrid => {
            let (own, other) = (classify_hybrid(g), classify_hybrid(&transpose));
            hybrid_class = Some((own, other));
            let ok = match other {
                HybridClass::PureL | HybridClass::Noi | HybridClass::Coi => true,
                HybridClass::PureQ => transpose.is_bipartite(),
                HybridClass::Gi => false,
            };
            (ok, format!("graph is {own}, transpose is {other}"))
        }
        Interpretation::Hypergraph => {
            return Err(Error::Precondition(
                "use hypergraph_criterion_report for hypergraph states".into(),
            ))
        }
    };
    let degree_equal = g.degree_equal();
    let implied_verdict = if degree_equal {
        ImpliedVerdict::PptCertified
    } else if applicable {
        ImpliedVerdict::EntangledByDegree
    } else {
        ImpliedVerdict::Inapplicable
    };
    let mut details = format!(
        "{interpretation} interpretation: {gate}; D(G) {} D(G^T)",
        if degree_equal { "=" } else { "!=" }
    );
    if let Some(note) = small_dimension_note(g.rows(), g.cols()) {
        details.push_str("; ");
        details.push_str(&note);
        match implied_verdict {
            ImpliedVerdict::PptCertified if !g.is_edgeless() => details.push_str(", so the state is separable"),
            ImpliedVerdict::EntangledByDegree => details.push_str(", so the state is entangled"),
            _ => {}
        }
    }
    Ok(CriterionReport {
        interpretation,
        applicable,
        degree_equal,
        implied_verdict,
        hybrid_class,
        ppt: None,
        details,
    })
}

/// Degree criterion on the clique expansion of `h`, with a numeric PPT check.
///
/// Degree equality does not certify PPT for hypergraph states, so the
/// verdict is never `PPT-certified`.
pub fn hypergraph_criterion_report(h: &Hypergraph, tol: f64) -> Result<CriterionReport> {
    let g = h.to_graph();
    let applicable = g.partial_transpose().is_bipartite();
    let degree_equal = g.degree_equal();
    let implied_verdict = if applicable && !degree_equal {
        ImpliedVerdict::EntangledByDegree
    } else {
        ImpliedVerdict::Inapplicable
    };
    let ppt = if h.is_empty() {
        None
    } else {
        Some(ppt_verdict(&density_of_hypergraph(h)?, tol)?)
    };
    let mut details = format!(
        "hypergraph interpretation: transpose of the clique expansion is {}bipartite; D(G) {} D(G^T)",
        if applicable { "" } else { "not " },
        if degree_equal { "=" } else { "!=" }
    );
    match &ppt {
        None => details.push_str("; no hyperedges, so there is no state"),
        Some(v) => details.push_str(&format!(
            "; partial transpose minimum eigenvalue {:.3e} ({})",
            v.min_eig,
            if v.is_ppt { "PPT" } else { "NPT" }
        )),
    }
    Ok(CriterionReport {
        interpretation: Interpretation::Hypergraph,
        applicable,
        degree_equal,
        implied_verdict,
        hybrid_class: None,
        ppt,
        details,
    })
}

/// `±1` vector in the kernel of `ℒ(g)`, from a balanced sign labelling.
pub fn kernel_sign_vector(g: &GridGraph) -> Option<ExactVector> {
    let signs = g.balanced_signs()?;
    Some(ExactVector::from_i64(&signs.iter().map(|&s| s as i64).collect::<Vec<_>>()))
}
