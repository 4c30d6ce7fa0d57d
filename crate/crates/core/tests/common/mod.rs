#![allow(dead_code)]

use gridstate::criteria::{classify_hybrid, HybridClass};
use gridstate::graph::{EdgeKind, GridGraph, Hyperedge, Hypergraph, VertexId, Weight};
use gridstate::Rational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kinds {
    L,
    Q,
    Mixed,
}

/// Uniform-ish rational in `(0, 5]` with denominator at most 7.
pub fn random_weight(rng: &mut impl Rng) -> Weight {
    let denom: i64 = rng.gen_range(1..=7);
    let numer: i64 = rng.gen_range(1..=5 * denom);
    Weight::ratio(numer, denom).unwrap()
}

pub fn all_pairs(rows: usize, cols: usize) -> Vec<(VertexId, VertexId)> {
    let vs: Vec<VertexId> = (0..rows * cols).map(|i| VertexId::from_linear(i, cols)).collect();
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

fn kind(rng: &mut impl Rng, kinds: Kinds) -> EdgeKind {
    match kinds {
        Kinds::L => EdgeKind::L,
        Kinds::Q => EdgeKind::Q,
        Kinds::Mixed => {
            if rng.gen_bool(0.5) {
                EdgeKind::L
            } else {
                EdgeKind::Q
            }
        }
    }
}

/// `edges` distinct random pairs (capped at the pair count).
pub fn random_graph(rng: &mut impl Rng, rows: usize, cols: usize, edges: usize, kinds: Kinds, weighted: bool) -> GridGraph {
    let mut pairs = all_pairs(rows, cols);
    pairs.shuffle(rng);
    let mut g = GridGraph::new(rows, cols).unwrap();
    for &(a, b) in pairs.iter().take(edges) {
        let w = if weighted { random_weight(rng) } else { Weight::one() };
        let k = kind(rng, kinds);
        g.add_edge(k, a, b, w).unwrap();
    }
    g
}

/// Random grid with `rows <= max_rows`, `cols <= max_cols` and at least two
/// vertices.
pub fn random_dims(rng: &mut impl Rng, max_rows: usize, max_cols: usize) -> (usize, usize) {
    loop {
        let r = rng.gen_range(1..=max_rows);
        let c = rng.gen_range(1..=max_cols);
        if r * c >= 2 {
            return (r, c);
        }
    }
}

/// Random graph whose edges all cross a random two-colouring.
pub fn random_bipartite(rng: &mut impl Rng, rows: usize, cols: usize, kinds: Kinds, weighted: bool) -> GridGraph {
    let n = rows * cols;
    let colour: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut g = GridGraph::new(rows, cols).unwrap();
    for (a, b) in all_pairs(rows, cols) {
        if colour[a.linear(cols)] != colour[b.linear(cols)] && rng.gen_bool(0.35) {
            let w = if weighted { random_weight(rng) } else { Weight::one() };
            let k = kind(rng, kinds);
            g.add_edge(k, a, b, w).unwrap();
        }
    }
    g
}

/// Random COI graph that is not NOI: `Q`-edges cross a random signing,
/// `L`-edges stay on one side, and some vertex carries both kinds.
pub fn random_coi(rng: &mut impl Rng, max_rows: usize, max_cols: usize, weighted: bool) -> GridGraph {
    loop {
        let (rows, cols) = random_dims(rng, max_rows, max_cols);
        let n = rows * cols;
        let sign: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let mut g = GridGraph::new(rows, cols).unwrap();
        for (a, b) in all_pairs(rows, cols) {
            if !rng.gen_bool(0.3) {
                continue;
            }
            let same = sign[a.linear(cols)] == sign[b.linear(cols)];
            let k = if same { EdgeKind::L } else { EdgeKind::Q };
            let w = if weighted { random_weight(rng) } else { Weight::one() };
            g.add_edge(k, a, b, w).unwrap();
        }
        if classify_hybrid(&g) == HybridClass::Coi {
            return g;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    L,
    Q,
    Weighted,
    Hybrid,
}

/// Random degree-equal graph on a grid of at most 3x4.
///
/// Half of the weighted samples reweight a degree-equal graph uniformly,
/// the other half draw independent weights and keep degree-equal draws.
pub fn degree_equal_sample(rng: &mut impl Rng, family: Family) -> GridGraph {
    loop {
        let (rows, cols) = random_dims(rng, 3, 4);
        let edges = rng.gen_range(1..=6);
        let kinds = match family {
            Family::L => Kinds::L,
            Family::Q => Kinds::Q,
            Family::Weighted => {
                if rng.gen_bool(0.5) {
                    Kinds::L
                } else {
                    Kinds::Q
                }
            }
            Family::Hybrid => Kinds::Mixed,
        };
        let per_edge = family == Family::Weighted && rng.gen_bool(0.5);
        let mut g = random_graph(rng, rows, cols, edges, kinds, per_edge);
        if !g.degree_equal() {
            continue;
        }
        if family == Family::Weighted && !per_edge {
            let w = random_weight(rng);
            let mut h = GridGraph::new(rows, cols).unwrap();
            for e in g.edges() {
                h.add_edge(e.kind, e.a, e.b, w.clone()).unwrap();
            }
            g = h;
        }
        if family == Family::Hybrid && !matches!(classify_hybrid(&g), HybridClass::Noi | HybridClass::Coi) {
            continue;
        }
        return g;
    }
}

pub fn random_hypergraph(rng: &mut impl Rng, max_rows: usize, max_cols: usize, max_edges: usize) -> Hypergraph {
    loop {
        let (rows, cols) = random_dims(rng, max_rows, max_cols);
        if rows * cols < 3 {
            continue;
        }
        let mut h = Hypergraph::new(rows, cols).unwrap();
        let target = rng.gen_range(0..=max_edges);
        let mut vs: Vec<VertexId> = (0..rows * cols).map(|i| VertexId::from_linear(i, cols)).collect();
        for _ in 0..target * 4 {
            if h.len() == target {
                break;
            }
            vs.shuffle(rng);
            let _ = h.add(Hyperedge::new(vs[0], vs[1], vs[2]).unwrap());
        }
        return h;
    }
}

pub fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// Edge-list degree vector, independent of the library's degree code.
pub fn degrees_from_edges(g: &GridGraph) -> Vec<Rational> {
    let mut d = vec![int(0); g.vertex_count()];
    for e in g.edges() {
        d[e.a.row * g.cols() + e.a.col] += e.weight.value();
        d[e.b.row * g.cols() + e.b.col] += e.weight.value();
    }
    d
}

/// Brute-force two-colourability over all `2^n` colourings (`n <= 12`).
pub fn brute_force_bipartite(g: &GridGraph, q_only: bool) -> bool {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|e| !q_only || e.kind == EdgeKind::Q)
        .map(|e| (e.a.linear(g.cols()), e.b.linear(g.cols())))
        .collect();
    (0u32..1 << n).any(|mask| edges.iter().all(|&(a, b)| (mask >> a) & 1 != (mask >> b) & 1))
}

/// Brute-force balanced signing: a `±1` labelling with equal signs across
/// `L`-edges and opposite signs across `Q`-edges.
pub fn brute_force_balanced(g: &GridGraph) -> bool {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize, EdgeKind)> = g
        .edges()
        .map(|e| (e.a.linear(g.cols()), e.b.linear(g.cols()), e.kind))
        .collect();
    (0u32..1 << n).any(|mask| {
        edges.iter().all(|&(a, b, k)| {
            let same = (mask >> a) & 1 == (mask >> b) & 1;
            same == (k == EdgeKind::L)
        })
    })
}

/// Components by breadth-first search on an adjacency matrix.
pub fn bfs_components(g: &GridGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        let (a, b) = (e.a.linear(g.cols()), e.b.linear(g.cols()));
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            for y in 0..n {
                if adj[x][y] && !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
            i += 1;
        }
        comp.sort();
        comps.push(comp);
    }
    comps
}

/// Eigenvalues of a symmetric `f64` matrix counted within `eps` of zero,
/// using power-free Gaussian elimination with partial pivoting on `A`.
pub fn numeric_nullity(a: &[f64], n: usize, eps: f64) -> usize {
    let mut m = a.to_vec();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).max_by(|&x, &y| m[x * n + col].abs().total_cmp(&m[y * n + col].abs())) else {
            break;
        };
        if m[p * n + col].abs() <= eps {
            continue;
        }
        for k in 0..n {
            m.swap(row * n + k, p * n + k);
        }
        for r in 0..n {
            if r != row {
                let f = m[r * n + col] / m[row * n + col];
                for k in 0..n {
                    m[r * n + k] -= f * m[row * n + k];
                }
            }
        }
        rank += 1;
        row += 1;
    }
    n - rank
}
