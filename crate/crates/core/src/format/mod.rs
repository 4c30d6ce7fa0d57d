//! Spec text format, renderers, matrix dumps and verdict reports.

mod parse;
mod render;
mod report;

pub use parse::{parse_spec, print_spec};
pub use render::{emit_matrix, render, MatrixFormat, MatrixKind, RenderFormat};
pub use report::{check, recompute_verdict, verify, verify_text, RangeEvidence, Report, Verdict, VerifyOptions};

use crate::graph::{GridGraph, Hypergraph};

/// A parsed spec file: a graph or a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spec {
    Graph(GridGraph),
    Hypergraph(Hypergraph),
}

impl Spec {
    pub fn rows(&self) -> usize {
        match self {
            Spec::Graph(g) => g.rows(),
            Spec::Hypergraph(h) => h.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Spec::Graph(g) => g.cols(),
            Spec::Hypergraph(h) => h.cols(),
        }
    }
}

impl From<GridGraph> for Spec {
    fn from(g: GridGraph) -> Self {
        Spec::Graph(g)
    }
}

impl From<Hypergraph> for Spec {
    fn from(h: Hypergraph) -> Self {
        Spec::Hypergraph(h)
    }
}
