use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid dimensions must be positive, got {rows}x{cols}")]
    Dimension { rows: usize, cols: usize },

    #[error("vertex {vertex} lies outside the {rows}x{cols} grid")]
    OutOfBounds { vertex: VertexId, rows: usize, cols: usize },

    #[error("self-loop at {0}")]
    SelfLoop(VertexId),

    #[error("vertex pair {0}-{1} already carries an edge")]
    DuplicateEdge(VertexId, VertexId),

    #[error("edge weight must be positive, got {0}")]
    NonPositiveWeight(String),

    #[error("hyperedge needs three distinct vertices")]
    DegenerateHyperedge,

    #[error("duplicate hyperedge {0}")]
    DuplicateHyperedge(String),

    #[error("cross-hatch graphs need at least 3 rows and 3 columns, got {rows}x{cols}")]
    CrossHatchTooSmall { rows: usize, cols: usize },

    #[error("composition offset ({row_offset},{col_offset}) pushes a {rows}x{cols} graph out of the {outer_rows}x{outer_cols} grid")]
    CompositionBounds {
        rows: usize,
        cols: usize,
        row_offset: usize,
        col_offset: usize,
        outer_rows: usize,
        outer_cols: usize,
    },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("cannot normalize a state without edges (zero trace)")]
    EmptyState,

    #[error("interpretation {interpretation} does not accept {kind}-edges")]
    InterpretationMismatch { interpretation: String, kind: String },

    #[error("pivot {0} is not an isolated vertex")]
    PivotNotIsolated(VertexId),

    #[error("surgery at pivot {0} would not remove any edge")]
    NoOpSurgery(VertexId),

    #[error("operation needs a {expected} graph, got {found}")]
    IncidenceClass { expected: String, found: String },

    #[error("{0}")]
    Precondition(String),

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("statement {statement} (line {line}): {source}")]
    Semantic {
        statement: usize,
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("unknown format `{0}`")]
    UnknownFormat(String),
}
