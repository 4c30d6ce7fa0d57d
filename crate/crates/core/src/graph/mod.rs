//! Grid-labelled graphs.
//!
//! Vertices sit on an `m x n` grid and are addressed by `(row, col)`. The
//! linear (basis) index of `(i, j)` is `i * n + j`, so the vertex set maps onto
//! the computational basis `|ij>` of a bipartite `m x n` system. Every edge has
//! a kind (`L` for the signed edge state `|ij> - |kl>`, `Q` for the signless
//! `|ij> + |kl>`) and a positive rational weight.

mod builders;
mod dsu;
mod hyper;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use builders::{cross_hatch, cross_hatch_hybrid, cross_hatch_pattern, cross_hatch_with, embed_compose, tile_compose};
pub use dsu::DisjointSet;
pub use hyper::{Hyperedge, Hypergraph};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId {
    pub row: usize,
    pub col: usize,
}

impl VertexId {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    pub const fn linear(self, cols: usize) -> usize {
        self.row * cols + self.col
    }

    pub const fn from_linear(index: usize, cols: usize) -> Self {
        Self::new(index / cols, index % cols)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Shorthand used throughout tests and builders.
pub const fn v(row: usize, col: usize) -> VertexId {
    VertexId::new(row, col)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    L,
    Q,
}

impl EdgeKind {
    /// Sign of the off-diagonal Laplacian entry contributed by this kind.
    pub fn off_diagonal_sign(self) -> i8 {
        match self {
            EdgeKind::L => -1,
            EdgeKind::Q => 1,
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::L => "L",
            EdgeKind::Q => "Q",
        })
    }
}

/// Strictly positive rational edge weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Rational);

impl Weight {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_positive() {
            Ok(Self(value))
        } else {
            Err(Error::NonPositiveWeight(value.to_string()))
        }
    }

    pub fn one() -> Self {
        Self(Rational::one())
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::NonPositiveWeight(format!("{numer}/0")));
        }
        Self::new(Rational::new(numer.into(), denom.into()))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let value: Rational = text.parse().map_err(serde::de::Error::custom)?;
        Weight::new(value).map_err(serde::de::Error::custom)
    }
}

/// An edge with endpoints in canonical order (`a < b`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
    pub kind: EdgeKind,
    pub weight: Weight,
}

impl Edge {
    pub fn new(kind: EdgeKind, a: VertexId, b: VertexId, weight: Weight) -> Result<Self> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(Self { a, b, kind, weight })
    }

    pub fn unit(kind: EdgeKind, a: VertexId, b: VertexId) -> Result<Self> {
        Self::new(kind, a, b, Weight::one())
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.a == x || self.b == x
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.a, self.b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.kind, self.a, self.b)?;
        if !self.weight.value().is_one() {
            write!(f, " w={}", self.weight)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct EdgeLabel {
    kind: EdgeKind,
    weight: Weight,
}

/// Which edges take part in a structural query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeFilter {
    All,
    QOnly,
}

/// A simple grid-labelled graph with typed, weighted edges.
///
/// At most one edge joins any vertex pair, whatever its kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridGraph {
    rows: usize,
    cols: usize,
    edges: BTreeMap<(VertexId, VertexId), EdgeLabel>,
}

impl GridGraph {
    /// Edgeless `rows x cols` grid.
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension { rows, cols });
        }
        Ok(Self {
            rows,
            cols,
            edges: BTreeMap::new(),
        })
    }

    pub fn from_edges(rows: usize, cols: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut g = Self::new(rows, cols)?;
        for e in edges {
            g.insert(e)?;
        }
        Ok(g)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vertex_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, x: VertexId) -> bool {
        x.row < self.rows && x.col < self.cols
    }

    pub fn check_vertex(&self, x: VertexId) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfBounds {
                vertex: x,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn index(&self, x: VertexId) -> usize {
        x.linear(self.cols)
    }

    pub fn vertex(&self, index: usize) -> VertexId {
        VertexId::from_linear(index, self.cols)
    }

    /// Vertices in linear-index order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(|i| self.vertex(i))
    }

    pub fn add_edge(&mut self, kind: EdgeKind, a: VertexId, b: VertexId, weight: Weight) -> Result<()> {
        self.insert(Edge::new(kind, a, b, weight)?)
    }

    /// Pure variant of [`GridGraph::add_edge`].
    pub fn with_edge(&self, kind: EdgeKind, a: VertexId, b: VertexId, weight: Weight) -> Result<Self> {
        let mut g = self.clone();
        g.add_edge(kind, a, b, weight)?;
        Ok(g)
    }

    pub fn insert(&mut self, edge: Edge) -> Result<()> {
        self.check_vertex(edge.a)?;
        self.check_vertex(edge.b)?;
        let key = (edge.a, edge.b);
        if self.edges.contains_key(&key) {
            return Err(Error::DuplicateEdge(edge.a, edge.b));
        }
        self.edges.insert(
            key,
            EdgeLabel {
                kind: edge.kind,
                weight: edge.weight,
            },
        );
        Ok(())
    }

    pub fn remove_edge(&mut self, a: VertexId, b: VertexId) -> Option<Edge> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.remove(&key).map(|l| Edge {
            a: key.0,
            b: key.1,
            kind: l.kind,
            weight: l.weight,
        })
    }

    pub fn edge(&self, a: VertexId, b: VertexId) -> Option<Edge> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.get(&key).map(|l| Edge {
            a: key.0,
            b: key.1,
            kind: l.kind,
            weight: l.weight.clone(),
        })
    }

    pub fn has_pair(&self, a: VertexId, b: VertexId) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.contains_key(&key)
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&(a, b), l)| Edge {
            a,
            b,
            kind: l.kind,
            weight: l.weight.clone(),
        })
    }

    pub fn edges_of_kind(&self, kind: EdgeKind) -> impl Iterator<Item = Edge> + '_ {
        self.edges().filter(move |e| e.kind == kind)
    }

    pub fn has_kind(&self, kind: EdgeKind) -> bool {
        self.edges.values().any(|l| l.kind == kind)
    }

    /// Copy of the graph keeping only edges of `kind`.
    pub fn subgraph_of_kind(&self, kind: EdgeKind) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            edges: self
                .edges
                .iter()
                .filter(|(_, l)| l.kind == kind)
                .map(|(k, l)| (*k, l.clone()))
                .collect(),
        }
    }

    /// Same edge set with every edge relabelled to `kind`.
    pub fn reinterpret(&self, kind: EdgeKind) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            edges: self
                .edges
                .iter()
                .map(|(k, l)| {
                    (
                        *k,
                        EdgeLabel {
                            kind,
                            weight: l.weight.clone(),
                        },
                    )
                })
                .collect(),
        }
    }

    /// Weighted degree of every vertex, by linear index.
    pub fn degree_vector(&self) -> Vec<Rational> {
        let mut deg = vec![Rational::zero(); self.vertex_count()];
        for (&(a, b), l) in &self.edges {
            deg[self.index(a)] += l.weight.value();
            deg[self.index(b)] += l.weight.value();
        }
        deg
    }

    /// Number of incident edges per vertex, by linear index.
    pub fn incidence_counts(&self) -> Vec<usize> {
        let mut count = vec![0; self.vertex_count()];
        for &(a, b) in self.edges.keys() {
            count[self.index(a)] += 1;
            count[self.index(b)] += 1;
        }
        count
    }

    pub fn isolated_vertices(&self) -> Vec<VertexId> {
        self.incidence_counts()
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c == 0)
            .map(|(i, _)| self.vertex(i))
            .collect()
    }

    /// Partial transpose on the second tensor factor:
    /// `{(i,j),(k,l)} -> {(i,l),(k,j)}`, keeping kind and weight.
    ///
    /// The map is an involution on unordered pairs of distinct vertices and
    /// never produces a self-loop, so the result is always a simple graph.
    pub fn partial_transpose(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|(&(a, b), l)| {
                let x = VertexId::new(a.row, b.col);
                let y = VertexId::new(b.row, a.col);
                let key = if x < y { (x, y) } else { (y, x) };
                (key, l.clone())
            })
            .collect::<BTreeMap<_, _>>();
        debug_assert_eq!(edges.len(), self.edges.len());
        Self {
            rows: self.rows,
            cols: self.cols,
            edges,
        }
    }

    /// `D(G) == D(G^Γ)`, compared exactly.
    pub fn degree_equal(&self) -> bool {
        self.degree_vector() == self.partial_transpose().degree_vector()
    }

    fn adjacency_lists(&self, filter: EdgeFilter) -> Vec<Vec<(usize, EdgeKind)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (&(a, b), l) in &self.edges {
            if filter == EdgeFilter::QOnly && l.kind != EdgeKind::Q {
                continue;
            }
            let (x, y) = (self.index(a), self.index(b));
            adj[x].push((y, l.kind));
            adj[y].push((x, l.kind));
        }
        adj
    }

    /// Connected components ordered by smallest linear index; isolated
    /// vertices are singleton components.
    pub fn components(&self) -> Vec<Component> {
        let mut dsu = DisjointSet::new(self.vertex_count());
        for &(a, b) in self.edges.keys() {
            dsu.union(self.index(a), self.index(b));
        }
        let groups = dsu.groups();
        let mut owner = vec![0; self.vertex_count()];
        for (c, members) in groups.iter().enumerate() {
            for &x in members {
                owner[x] = c;
            }
        }
        let mut comps: Vec<Component> = groups
            .into_iter()
            .map(|members| Component {
                vertices: members.into_iter().map(|i| self.vertex(i)).collect(),
                edges: Vec::new(),
            })
            .collect();
        for e in self.edges() {
            let c = owner[self.index(e.a)];
            comps[c].edges.push(e);
        }
        comps
    }

    /// Component id of every vertex (by linear index), consistent with the
    /// order of [`GridGraph::components`].
    pub fn component_ids(&self) -> Vec<usize> {
        let mut dsu = DisjointSet::new(self.vertex_count());
        for &(a, b) in self.edges.keys() {
            dsu.union(self.index(a), self.index(b));
        }
        let mut ids = vec![0; self.vertex_count()];
        for (c, members) in dsu.groups().into_iter().enumerate() {
            for x in members {
                ids[x] = c;
            }
        }
        ids
    }

    /// Two-colouring of the filtered edge set. The smallest vertex of every
    /// component lands in `part1`.
    pub fn bipartition(&self, filter: EdgeFilter) -> Option<Bipartition> {
        let adj = self.adjacency_lists(filter);
        let colour = two_colour(&adj, |_| false)?;
        let mut part1 = BTreeSet::new();
        let mut part2 = BTreeSet::new();
        for (i, c) in colour.into_iter().enumerate() {
            if c > 0 {
                part1.insert(self.vertex(i));
            } else {
                part2.insert(self.vertex(i));
            }
        }
        Some(Bipartition { part1, part2 })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition(EdgeFilter::All).is_some()
    }

    /// Sign labelling with equal signs across every `L`-edge and opposite
    /// signs across every `Q`-edge, if one exists. The smallest vertex of each
    /// component gets `+1`.
    ///
    /// Such a labelling restricted to a component is exactly a kernel vector
    /// of the hybrid Laplacian supported on that component.
    pub fn balanced_signs(&self) -> Option<Vec<i8>> {
        let adj = self.adjacency_lists(EdgeFilter::All);
        two_colour(&adj, |kind| kind == EdgeKind::L)
    }

    /// Injective byte encoding of the graph value.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(16 + 24 * self.edges.len());
        key.extend_from_slice(&(self.rows as u64).to_le_bytes());
        key.extend_from_slice(&(self.cols as u64).to_le_bytes());
        for (&(a, b), l) in &self.edges {
            key.extend_from_slice(&(self.index(a) as u64).to_le_bytes());
            key.extend_from_slice(&(self.index(b) as u64).to_le_bytes());
            key.push(match l.kind {
                EdgeKind::L => b'L',
                EdgeKind::Q => b'Q',
            });
            key.extend_from_slice(l.weight.value().to_string().as_bytes());
            key.push(b';');
        }
        key
    }
}

/// BFS two-colouring. `same(kind)` says whether an edge of that kind joins
/// equal colours. Returns `+1`/`-1` per vertex or `None` on a conflict.
fn two_colour(adj: &[Vec<(usize, EdgeKind)>], same: impl Fn(EdgeKind) -> bool) -> Option<Vec<i8>> {
    let n = adj.len();
    let mut colour = vec![0i8; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if colour[start] != 0 {
            continue;
        }
        colour[start] = 1;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &(y, kind) in &adj[x] {
                let want = if same(kind) { colour[x] } else { -colour[x] };
                if colour[y] == 0 {
                    colour[y] = want;
                    queue.push_back(y);
                } else if colour[y] != want {
                    return None;
                }
            }
        }
    }
    Some(colour)
}

impl fmt::Display for GridGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} grid [", self.rows, self.cols)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Edge>,
}

impl Component {
    pub fn is_isolated_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn has_kind(&self, kind: EdgeKind) -> bool {
        self.edges.iter().any(|e| e.kind == kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub part1: BTreeSet<VertexId>,
    pub part2: BTreeSet<VertexId>,
}

impl Bipartition {
    /// `1` or `2`, or `None` for a vertex outside both parts.
    pub fn side(&self, x: VertexId) -> Option<u8> {
        if self.part1.contains(&x) {
            Some(1)
        } else if self.part2.contains(&x) {
            Some(2)
        } else {
            None
        }
    }

    /// No edge of `g` (after `filter`) stays inside one part.
    pub fn separates(&self, g: &GridGraph, filter: EdgeFilter) -> bool {
        g.edges()
            .filter(|e| filter == EdgeFilter::All || e.kind == EdgeKind::Q)
            .all(|e| self.side(e.a) != self.side(e.b))
    }
}
