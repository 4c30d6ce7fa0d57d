//! Graph and hypergraph matrices, indexed by linear vertex index.

use num_traits::{One, Zero};
use serde::Serialize;

use super::ExactMatrix;
use crate::graph::{EdgeKind, GridGraph, Hypergraph};
use crate::Rational;

pub fn degree_matrix(g: &GridGraph) -> ExactMatrix {
    ExactMatrix::diagonal(&g.degree_vector())
}

/// Weighted adjacency, ignoring edge kinds.
pub fn adjacency_matrix(g: &GridGraph) -> ExactMatrix {
    let n = g.vertex_count();
    let mut a = ExactMatrix::zeros(n, n);
    for e in g.edges() {
        let (x, y) = (g.index(e.a), g.index(e.b));
        a.set(x, y, e.weight.value().clone());
        a.set(y, x, e.weight.value().clone());
    }
    a
}

/// Hybrid Laplacian `L(S_l) + Q(S_q) = D - A(S_l) + A(S_q)`.
///
/// Reduces to the signed Laplacian `D - A` for pure `L`-graphs and to the
/// signless `D + A` for pure `Q`-graphs.
pub fn laplacian(g: &GridGraph) -> ExactMatrix {
    let mut m = degree_matrix(g);
    for e in g.edges() {
        let (x, y) = (g.index(e.a), g.index(e.b));
        let w = match e.kind {
            EdgeKind::L => -e.weight.value().clone(),
            EdgeKind::Q => e.weight.value().clone(),
        };
        m.set(x, y, w.clone());
        m.set(y, x, w);
    }
    m
}

/// Signed Laplacian of the edge set, whatever the edge kinds.
pub fn signed_laplacian(g: &GridGraph) -> ExactMatrix {
    laplacian(&g.reinterpret(EdgeKind::L))
}

/// Signless Laplacian of the edge set, whatever the edge kinds.
pub fn signless_laplacian(g: &GridGraph) -> ExactMatrix {
    laplacian(&g.reinterpret(EdgeKind::Q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Oriented,
    Unoriented,
    HybridConcatenated,
}

/// Incidence matrix `[B_l | R_q]` with the edge weights kept apart.
///
/// Columns hold `+1, -1` for `L`-edges and `+1, +1` for `Q`-edges (`L`-edges
/// first, each block in canonical edge order), so that the Laplacian is
/// `M W M^T` with `W = diag(weights)` and no square roots are needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub matrix: ExactMatrix,
    pub weights: Vec<Rational>,
    pub orientation: Orientation,
}

impl IncidenceMatrix {
    pub fn weight_matrix(&self) -> ExactMatrix {
        ExactMatrix::diagonal(&self.weights)
    }

    /// `M W M^T`.
    pub fn weighted_gram(&self) -> ExactMatrix {
        let mw = &self.matrix * &self.weight_matrix();
        &mw * &self.matrix.transpose()
    }
}

pub fn incidence(g: &GridGraph) -> IncidenceMatrix {
    let n = g.vertex_count();
    let ordered: Vec<_> = g.edges_of_kind(EdgeKind::L).chain(g.edges_of_kind(EdgeKind::Q)).collect();
    let mut matrix = ExactMatrix::zeros(n, ordered.len());
    for (c, e) in ordered.iter().enumerate() {
        matrix.set(g.index(e.a), c, Rational::one());
        let other = match e.kind {
            EdgeKind::L => -Rational::one(),
            EdgeKind::Q => Rational::one(),
        };
        matrix.set(g.index(e.b), c, other);
    }
    let orientation = match (g.has_kind(EdgeKind::L), g.has_kind(EdgeKind::Q)) {
        (true, true) => Orientation::HybridConcatenated,
        (false, true) => Orientation::Unoriented,
        _ => Orientation::Oriented,
    };
    IncidenceMatrix {
        matrix,
        weights: ordered.into_iter().map(|e| e.weight.into_inner()).collect(),
        orientation,
    }
}

/// `D(H)`: hyperedge count per vertex.
pub fn hypergraph_degree_matrix(h: &Hypergraph) -> ExactMatrix {
    let deg: Vec<Rational> = h.degrees().into_iter().map(|d| Rational::from_integer(d.into())).collect();
    ExactMatrix::diagonal(&deg)
}

/// `A(H)`: number of hyperedges joining each vertex pair.
pub fn hypergraph_adjacency(h: &Hypergraph) -> ExactMatrix {
    let n = h.vertex_count();
    let mut a = ExactMatrix::zeros(n, n);
    for ((x, y), count) in h.pair_multiplicities() {
        let c = Rational::from_integer(count.into());
        a.set(h.index(x), h.index(y), c.clone());
        a.set(h.index(y), h.index(x), c);
    }
    a
}

/// `L(H) = D(H) + A(H)`, the unnormalized mixture of hyperedge states
/// `|ij> + |kl> + |mn>`.
pub fn hypergraph_laplacian(h: &Hypergraph) -> ExactMatrix {
    &hypergraph_degree_matrix(h) + &hypergraph_adjacency(h)
}

/// `O(H) = D(G) - D(H)` where `G` is the clique expansion of `H`.
pub fn offset_matrix(h: &Hypergraph) -> ExactMatrix {
    &degree_matrix(&h.to_graph()) - &hypergraph_degree_matrix(h)
}

/// `Δ = D(G) - D(G^Γ)`.
pub fn degree_difference(g: &GridGraph) -> ExactMatrix {
    &degree_matrix(g) - &degree_matrix(&g.partial_transpose())
}

pub fn is_nonnegative_diagonal(m: &ExactMatrix) -> bool {
    m.is_diagonal() && m.diagonal_entries().iter().all(|x| *x >= Rational::zero())
}
