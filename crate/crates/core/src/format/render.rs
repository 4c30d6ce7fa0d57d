use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::One;

use super::Spec;
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, GridGraph};
use crate::linalg::{laplacian, rational_to_f64, signed_laplacian, signless_laplacian, ExactMatrix};
use crate::quantum::{density_of_graph, density_of_hypergraph, matrix_partial_transpose};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Dot,
    Ascii,
}

impl FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(RenderFormat::Dot),
            "ascii" => Ok(RenderFormat::Ascii),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// Signed Laplacian of the edge set.
    L,
    /// Signless Laplacian of the edge set.
    Q,
    /// Hybrid Laplacian honouring edge kinds.
    Hybrid,
    Density,
    /// Partial transpose of the density matrix.
    Ppt,
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l" => Ok(MatrixKind::L),
            "q" => Ok(MatrixKind::Q),
            "hybrid" => Ok(MatrixKind::Hybrid),
            "density" => Ok(MatrixKind::Density),
            "ppt" => Ok(MatrixKind::Ppt),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Json,
    Csv,
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(MatrixFormat::Json),
            "csv" => Ok(MatrixFormat::Csv),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

/// Graph drawn for a spec; hypergraphs show their clique expansion.
fn drawn_graph(spec: &Spec) -> GridGraph {
    match spec {
        Spec::Graph(g) => g.clone(),
        Spec::Hypergraph(h) => h.to_graph(),
    }
}

fn dot(spec: &Spec) -> String {
    let g = drawn_graph(spec);
    let mut out = String::from("graph grid {\n  layout=neato;\n  node [shape=circle, fontsize=10];\n");
    if let Spec::Hypergraph(h) = spec {
        for e in h.hyperedges() {
            let _ = writeln!(out, "  // {e}");
        }
    }
    for x in g.vertices() {
        let _ = writeln!(
            out,
            "  \"{},{}\" [label=\"{x}\", pos=\"{},{}!\"];",
            x.row,
            x.col,
            x.col,
            -(x.row as i64)
        );
    }
    for e in g.edges() {
        let style = match e.kind {
            EdgeKind::L => "dashed",
            EdgeKind::Q => "solid",
        };
        let _ = write!(
            out,
            "  \"{},{}\" -- \"{},{}\" [style={style}",
            e.a.row, e.a.col, e.b.row, e.b.col
        );
        if !e.weight.value().is_one() {
            let _ = write!(out, ", label=\"{}\"", e.weight);
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}

fn ascii(spec: &Spec) -> String {
    let g = drawn_graph(spec);
    let counts = g.incidence_counts();
    let width = g.cols().to_string().len().max(1);
    let label = g.rows().to_string().len();
    let mut out = String::new();
    let noun = match spec {
        Spec::Graph(_) => "grid",
        Spec::Hypergraph(_) => "hypergrid",
    };
    let _ = writeln!(out, "{}x{} {noun}, {} edges", g.rows(), g.cols(), g.edge_count());
    let _ = write!(out, "{:label$} ", "");
    for c in 0..g.cols() {
        let _ = write!(out, " {c:>width$}");
    }
    out.push('\n');
    for r in 0..g.rows() {
        let _ = write!(out, "{r:>label$} ");
        for c in 0..g.cols() {
            let mark = if counts[r * g.cols() + c] == 0 { '.' } else { 'o' };
            let _ = write!(out, " {mark:>width$}");
        }
        out.push('\n');
    }
    match spec {
        Spec::Graph(g) => g.edges().for_each(|e| {
            let _ = writeln!(out, "{e}");
        }),
        Spec::Hypergraph(h) => h.hyperedges().for_each(|e| {
            let _ = writeln!(out, "{e}");
        }),
    }
    out
}

pub fn render(spec: &Spec, format: RenderFormat) -> String {
    match format {
        RenderFormat::Dot => dot(spec),
        RenderFormat::Ascii => ascii(spec),
    }
}

fn select_matrix(spec: &Spec, which: MatrixKind) -> Result<ExactMatrix> {
    Ok(match (which, spec) {
        (MatrixKind::L, s) => signed_laplacian(&drawn_graph(s)),
        (MatrixKind::Q, s) => signless_laplacian(&drawn_graph(s)),
        (MatrixKind::Hybrid, s) => laplacian(&drawn_graph(s)),
        (MatrixKind::Density, Spec::Graph(g)) => density_of_graph(g)?.matrix().clone(),
        (MatrixKind::Density, Spec::Hypergraph(h)) => density_of_hypergraph(h)?.matrix().clone(),
        (MatrixKind::Ppt, Spec::Graph(g)) => matrix_partial_transpose(&density_of_graph(g)?),
        (MatrixKind::Ppt, Spec::Hypergraph(h)) => matrix_partial_transpose(&density_of_hypergraph(h)?),
    })
}

/// Dumps one matrix of the spec. JSON holds exact `"p/q"` strings, CSV holds
/// decimals. `L`, `Q` and `hybrid` of a hypergraph refer to its clique
/// expansion; `density` and `ppt` use the hyperedge state.
pub fn emit_matrix(spec: &Spec, which: MatrixKind, format: MatrixFormat) -> Result<String> {
    let m = select_matrix(spec, which)?;
    let mut out = String::new();
    match format {
        MatrixFormat::Json => {
            out.push_str("[\n");
            for i in 0..m.rows() {
                let row: Vec<String> = m
                    .row(i)
                    .iter()
                    .map(|x| format!("\"{}/{}\"", x.numer(), x.denom()))
                    .collect();
                let sep = if i + 1 < m.rows() { "," } else { "" };
                let _ = writeln!(out, "  [{}]{sep}", row.join(", "));
            }
            out.push_str("]\n");
        }
        MatrixFormat::Csv => {
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(|x| rational_to_f64(x).to_string()).collect();
                let _ = writeln!(out, "{}", row.join(","));
            }
        }
    }
    Ok(out)
}
