use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Edge, EdgeKind, GridGraph, VertexId, Weight};
use crate::error::{Error, Result};
use crate::Rational;

/// Three distinct vertices, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Hyperedge([VertexId; 3]);

impl Hyperedge {
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Result<Self> {
        let mut vs = [a, b, c];
        vs.sort();
        if vs[0] == vs[1] || vs[1] == vs[2] {
            return Err(Error::DegenerateHyperedge);
        }
        Ok(Self(vs))
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        self.0
    }

    pub fn pairs(&self) -> [(VertexId, VertexId); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }
}

impl fmt::Display for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "H {a} {b} {c}")
    }
}

/// Grid hypergraph whose hyperedges all have exactly three vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    rows: usize,
    cols: usize,
    hyperedges: BTreeSet<Hyperedge>,
}

impl Hypergraph {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension { rows, cols });
        }
        Ok(Self {
            rows,
            cols,
            hyperedges: BTreeSet::new(),
        })
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

    pub fn len(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperedges.is_empty()
    }

    pub fn hyperedges(&self) -> impl Iterator<Item = &Hyperedge> {
        self.hyperedges.iter()
    }

    pub fn index(&self, x: VertexId) -> usize {
        x.linear(self.cols)
    }

    pub fn add(&mut self, h: Hyperedge) -> Result<()> {
        for x in h.vertices() {
            if x.row >= self.rows || x.col >= self.cols {
                return Err(Error::OutOfBounds {
                    vertex: x,
                    rows: self.rows,
                    cols: self.cols,
                });
            }
        }
        if !self.hyperedges.insert(h) {
            return Err(Error::DuplicateHyperedge(h.to_string()));
        }
        Ok(())
    }

    /// Number of hyperedges at each vertex, by linear index.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for h in &self.hyperedges {
            for x in h.vertices() {
                deg[self.index(x)] += 1;
            }
        }
        deg
    }

    /// Number of hyperedges shared by each co-occurring vertex pair.
    pub fn pair_multiplicities(&self) -> BTreeMap<(VertexId, VertexId), usize> {
        let mut mult = BTreeMap::new();
        for h in &self.hyperedges {
            for pair in h.pairs() {
                *mult.entry(pair).or_insert(0) += 1;
            }
        }
        mult
    }

    /// Clique expansion: every co-occurring pair becomes one `Q`-edge whose
    /// weight counts the hyperedges containing both endpoints.
    pub fn to_graph(&self) -> GridGraph {
        let mut g = GridGraph::new(self.rows, self.cols).expect("dimensions checked at construction");
        for ((a, b), count) in self.pair_multiplicities() {
            let weight = Weight::new(Rational::from_integer(count.into())).expect("count is positive");
            g.insert(Edge::new(EdgeKind::Q, a, b, weight).expect("hyperedge vertices are distinct"))
                .expect("pairs are unique and in bounds");
        }
        g
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} hypergrid [", self.rows, self.cols)?;
        for (i, h) in self.hyperedges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{h}")?;
        }
        f.write_str("]")
    }
}
