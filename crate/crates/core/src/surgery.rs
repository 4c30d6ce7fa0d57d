//! Graph surgery: CUT/STITCH steps, proxy graphs for COI inputs, and the
//! AND-OR search that certifies entanglement through the range criterion.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::criteria::{classify_hybrid, is_noi};
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeKind, GridGraph, VertexId};
use crate::linalg::{laplacian, span_contains, ExactVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Col,
}

impl Axis {
    fn contains(self, pivot: VertexId, x: VertexId) -> bool {
        match self {
            Axis::Row => x.row == pivot.row,
            Axis::Col => x.col == pivot.col,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Col => "col",
        })
    }
}

fn edge_strings<S: Serializer>(edges: &[Edge], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(edges.iter().map(|e| e.to_string()))
}

fn vertex_string<S: Serializer>(x: &VertexId, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// One CUT followed by its STITCH.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryStep {
    pub axis: Axis,
    #[serde(serialize_with = "vertex_string")]
    pub pivot: VertexId,
    #[serde(serialize_with = "edge_strings")]
    pub removed: Vec<Edge>,
    #[serde(serialize_with = "edge_strings")]
    pub added: Vec<Edge>,
}

fn surgery_class_error(g: &GridGraph) -> Error {
    Error::IncidenceClass {
        expected: "pure L, bipartite pure Q or NOI".into(),
        found: classify_hybrid(g).to_string(),
    }
}

/// Row or column surgery at an isolated pivot.
///
/// CUT removes every edge touching the pivot's row (column). STITCH then
/// rejoins, inside each component of the input that lost edges, the pieces
/// its surviving vertices fall into: with a chain of `L`-edges when all
/// survivors carry the same sign of the component's balanced labelling, and
/// otherwise with a spanning tree of `Q`-edges between opposite signs.
pub fn surgery(g: &GridGraph, pivot: VertexId, axis: Axis) -> Result<(GridGraph, SurgeryStep)> {
    g.check_vertex(pivot)?;
    if g.incidence_counts()[g.index(pivot)] > 0 {
        return Err(Error::PivotNotIsolated(pivot));
    }
    if !is_noi(g) {
        return Err(surgery_class_error(g));
    }
    let signs = g.balanced_signs().ok_or_else(|| surgery_class_error(g))?;
    let on_line = |x: VertexId| axis.contains(pivot, x);

    let removed: Vec<Edge> = g.edges().filter(|e| on_line(e.a) || on_line(e.b)).collect();
    if removed.is_empty() {
        return Err(Error::NoOpSurgery(pivot));
    }
    let mut child = g.clone();
    for e in &removed {
        child.remove_edge(e.a, e.b);
    }

    let piece = child.component_ids();
    let sign = |x: VertexId| signs[g.index(x)];
    let mut added = Vec::new();
    for comp in g.components() {
        if !comp.edges.iter().any(|e| on_line(e.a) || on_line(e.b)) {
            continue;
        }
        let mut pieces: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for &x in comp.vertices.iter().filter(|&&x| !on_line(x)) {
            pieces.entry(piece[g.index(x)]).or_default().push(x);
        }
        let mut pieces: Vec<Vec<VertexId>> = pieces.into_values().collect();
        for p in &mut pieces {
            p.sort();
        }
        pieces.sort();
        if pieces.len() < 2 {
            continue;
        }
        let first = sign(pieces[0][0]);
        if pieces.iter().flatten().all(|&x| sign(x) == first) {
            for w in pieces.windows(2) {
                added.push(Edge::unit(EdgeKind::L, w[0][0], w[1][0])?);
            }
        } else {
            added.extend(q_spanning_tree(&pieces, sign)?);
        }
    }
    if added.len() >= removed.len() {
        return Err(Error::Precondition(format!(
            "stitch at {pivot} would add {} edges for {} removed",
            added.len(),
            removed.len()
        )));
    }
    for e in &added {
        child.insert(e.clone())?;
    }
    Ok((child, SurgeryStep { axis, pivot, removed, added }))
}

/// Joins pieces (sorted by smallest vertex) with `Q`-edges between opposite
/// signs; a piece that cannot attach yet waits for a later pass.
fn q_spanning_tree(pieces: &[Vec<VertexId>], sign: impl Fn(VertexId) -> i8) -> Result<Vec<Edge>> {
    let mut attached: BTreeSet<VertexId> = pieces[0].iter().copied().collect();
    let mut waiting: Vec<&Vec<VertexId>> = pieces[1..].iter().collect();
    let mut edges = Vec::new();
    while !waiting.is_empty() {
        let before = waiting.len();
        let mut still = Vec::new();
        for p in waiting {
            let link = p
                .iter()
                .find_map(|&u| attached.iter().find(|&&w| sign(w) != sign(u)).map(|&w| (u, w)));
            match link {
                Some((u, w)) => {
                    edges.push(Edge::unit(EdgeKind::Q, u, w)?);
                    attached.extend(p.iter().copied());
                }
                None => still.push(p),
            }
        }
        if still.len() == before {
            return Err(Error::Precondition("stitch pieces cannot be joined by Q-edges".into()));
        }
        waiting = still;
    }
    Ok(edges)
}

pub fn row_surgery(g: &GridGraph, pivot: VertexId) -> Result<(GridGraph, SurgeryStep)> {
    surgery(g, pivot, Axis::Row)
}

pub fn col_surgery(g: &GridGraph, pivot: VertexId) -> Result<(GridGraph, SurgeryStep)> {
    surgery(g, pivot, Axis::Col)
}

/// Exact kernel check for one executed step: the child's hybrid Laplacian
/// annihilates the signed indicator of every parent component restricted to
/// its survivors, and the unit vector of every vertex on the cut line.
pub fn step_is_sound(parent: &GridGraph, step: &SurgeryStep, child: &GridGraph) -> bool {
    let Some(signs) = parent.balanced_signs() else {
        return false;
    };
    let kernel = match laplacian(child).kernel_basis() {
        Ok(k) => k,
        Err(_) => return false,
    };
    let n = parent.vertex_count();
    let on_line = |x: VertexId| step.axis.contains(step.pivot, x);
    for comp in parent.components() {
        let mut entries = vec![0i64; n];
        let mut any = false;
        for &x in comp.vertices.iter().filter(|&&x| !on_line(x)) {
            entries[parent.index(x)] = signs[parent.index(x)] as i64;
            any = true;
        }
        if any && !span_contains(&kernel, &ExactVector::from_i64(&entries)) {
            return false;
        }
    }
    parent
        .vertices()
        .filter(|&x| on_line(x))
        .all(|x| span_contains(&kernel, &ExactVector::unit(n, parent.index(x))))
}

/// What the proxy construction changed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ProxyTrace {
    #[serde(serialize_with = "edge_strings")]
    pub removed: Vec<Edge>,
    #[serde(serialize_with = "edge_strings")]
    pub added: Vec<Edge>,
    /// `(d1, d2)` per rebuilt component: the smallest `Q`-vertex of each part.
    #[serde(serialize_with = "designated_strings")]
    pub designated: Vec<(VertexId, VertexId)>,
}

fn designated_strings<S: Serializer>(d: &[(VertexId, VertexId)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(d.iter().map(|(a, b)| [a.to_string(), b.to_string()]))
}

impl ProxyTrace {
    pub fn is_empty(&self) -> bool {
        self.removed.is_empty() && self.added.is_empty()
    }
}

/// NOI proxy of a COI graph with the same hybrid-Laplacian kernel.
///
/// In every component with a `Q`-edge the balanced labelling splits the
/// vertices into parts `P1` (containing the smallest vertex) and `P2`. The
/// designated vertices `d1` and `d2` are the smallest vertices of `P1` and
/// `P2` that touch a `Q`-edge. Every `L`-edge at a
/// vertex that also has a `Q`-edge is removed, and so are the `L`-edges of any
/// piece left with no `Q`-edge. If `d1` and `d2` end up apart they get a
/// `Q`-edge; every other piece (each vertex of a stripped piece on its own) is
/// attached through its smallest vertex to the designated vertex of the
/// opposite part. NOI inputs come back unchanged.
pub fn proxy_graph(g: &GridGraph) -> Result<(GridGraph, ProxyTrace)> {
    let signs = g.balanced_signs().ok_or_else(|| Error::IncidenceClass {
        expected: "COI".into(),
        found: classify_hybrid(g).to_string(),
    })?;
    if is_noi(g) {
        return Ok((g.clone(), ProxyTrace::default()));
    }
    let n = g.vertex_count();
    let (mut touches_l, mut touches_q) = (vec![false; n], vec![false; n]);
    for e in g.edges() {
        let flags = if e.kind == EdgeKind::L { &mut touches_l } else { &mut touches_q };
        flags[g.index(e.a)] = true;
        flags[g.index(e.b)] = true;
    }
    let mixed = |x: VertexId| touches_l[g.index(x)] && touches_q[g.index(x)];

    let mut out = g.clone();
    let mut trace = ProxyTrace::default();
    let comps: Vec<_> = g.components().into_iter().filter(|c| c.has_kind(EdgeKind::Q)).collect();
    for comp in &comps {
        for e in comp.edges.iter().filter(|e| e.kind == EdgeKind::L && (mixed(e.a) || mixed(e.b))) {
            out.remove_edge(e.a, e.b);
            trace.removed.push(e.clone());
        }
    }
    let piece = out.component_ids();
    for comp in &comps {
        let sign = |x: VertexId| signs[g.index(x)];
        let on_q = |x: &&VertexId| touches_q[g.index(**x)];
        let d1 = *comp.vertices.iter().filter(on_q).filter(|&&x| sign(x) > 0).min().expect("a Q-edge spans both parts");
        let d2 = *comp.vertices.iter().filter(on_q).filter(|&&x| sign(x) < 0).min().expect("a Q-edge spans both parts");
        trace.designated.push((d1, d2));

        let mut pieces: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for &x in &comp.vertices {
            pieces.entry(piece[g.index(x)]).or_default().push(x);
        }
        let mut anchors = Vec::new();
        for members in pieces.values() {
            let mut members = members.clone();
            members.sort();
            if members.contains(&d1) || members.contains(&d2) {
                continue;
            }
            let has_q = out.edges_of_kind(EdgeKind::Q).any(|e| members.contains(&e.a));
            if has_q || members.len() == 1 {
                anchors.push(members[0]);
                continue;
            }
            for e in out.edges().filter(|e| members.contains(&e.a)).collect::<Vec<_>>() {
                out.remove_edge(e.a, e.b);
                trace.removed.push(e);
            }
            anchors.extend(members);
        }
        if piece[g.index(d1)] != piece[g.index(d2)] {
            trace.added.push(Edge::unit(EdgeKind::Q, d1, d2)?);
        }
        for u in anchors {
            let target = if sign(u) > 0 { d2 } else { d1 };
            trace.added.push(Edge::unit(EdgeKind::Q, u, target)?);
        }
    }
    for e in &trace.added {
        out.insert(e.clone())?;
    }
    trace.removed.sort();
    trace.added.sort();
    debug_assert!(is_noi(&out));
    Ok((out, trace))
}

/// One branch of a proven pivot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub step: SurgeryStep,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proxy: Option<ProxyTrace>,
    pub child: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Empty,
    Proven {
        #[serde(serialize_with = "vertex_string")]
        pivot: VertexId,
        row: Box<Branch>,
        col: Box<Branch>,
    },
    Inconclusive {
        reason: String,
    },
}

impl Outcome {
    pub fn is_proven(&self) -> bool {
        !matches!(self, Outcome::Inconclusive { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofNode {
    #[serde(skip)]
    pub graph: GridGraph,
    #[serde(rename = "edges", serialize_with = "edge_strings")]
    pub edge_list: Vec<Edge>,
    /// Surgery levels below this node in its proof; zero for leaves.
    pub height: usize,
    #[serde(flatten)]
    pub outcome: Outcome,
}

/// AND-OR proof record: a DAG of nodes keyed by graph digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofTree {
    pub root: String,
    pub max_depth: usize,
    pub proven: bool,
    /// Proxy applied to the input before the search, if it was COI.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_proxy: Option<ProxyTrace>,
    pub nodes: BTreeMap<String, ProofNode>,
}

impl ProofTree {
    pub fn root_node(&self) -> &ProofNode {
        &self.nodes[&self.root]
    }

    pub fn reason(&self) -> Option<&str> {
        match &self.root_node().outcome {
            Outcome::Inconclusive { reason } => Some(reason),
            _ => None,
        }
    }

    /// Every executed step with its parent and child graphs.
    pub fn steps(&self) -> Vec<(&GridGraph, &Branch, &GridGraph)> {
        let mut out = Vec::new();
        for node in self.nodes.values() {
            if let Outcome::Proven { row, col, .. } = &node.outcome {
                for b in [row, col] {
                    out.push((&node.graph, b.as_ref(), &self.nodes[&b.child].graph));
                }
            }
        }
        out
    }
}

pub fn node_key(g: &GridGraph) -> String {
    hex::encode(Sha256::digest(g.canonical_key()))
}

/// Child of a surgery step, proxied when it comes out COI; `None` when the
/// pivot is inadmissible on this axis.
fn admissible_child(g: &GridGraph, pivot: VertexId, axis: Axis) -> Option<(GridGraph, SurgeryStep, Option<ProxyTrace>)> {
    let (child, step) = surgery(g, pivot, axis).ok()?;
    child.balanced_signs()?;
    if is_noi(&child) {
        return Some((child, step, None));
    }
    let (proxy, trace) = proxy_graph(&child).ok()?;
    Some((proxy, step, Some(trace)))
}

#[derive(Debug, Clone)]
enum Memo {
    Done { height: usize, outcome: Outcome },
    /// Failed with this budget; `structural` failures hold for any budget.
    Failed { budget: usize, structural: bool, reason: String },
}

struct Search {
    memo: HashMap<Vec<u8>, Memo>,
    graphs: HashMap<String, GridGraph>,
}

/// `Ok(height)` when proven, `Err(structural)` otherwise.
type Status = std::result::Result<usize, bool>;

impl Search {
    fn solve(&mut self, g: &GridGraph, budget: usize) -> Status {
        let key = g.canonical_key();
        match self.memo.get(&key) {
            Some(Memo::Done { height, .. }) if *height <= budget => return Ok(*height),
            Some(Memo::Failed { budget: b, structural, .. }) if *structural || *b >= budget => {
                return Err(*structural)
            }
            _ => {}
        }
        self.graphs.entry(node_key(g)).or_insert_with(|| g.clone());
        if g.is_edgeless() {
            self.memo.insert(key, Memo::Done { height: 0, outcome: Outcome::Empty });
            return Ok(0);
        }
        let fail = |this: &mut Self, structural: bool, reason: String| {
            if !matches!(this.memo.get(&key), Some(Memo::Done { .. })) {
                this.memo.insert(key.clone(), Memo::Failed { budget, structural, reason });
            }
            Err(structural)
        };
        if budget == 0 {
            return fail(self, false, "depth limit reached".into());
        }
        let pivots = g.isolated_vertices();
        if pivots.is_empty() {
            return fail(self, true, "no isolated vertex".into());
        }
        let mut admissible = false;
        let mut structural = true;
        for pivot in pivots {
            let Some(row) = admissible_child(g, pivot, Axis::Row) else { continue };
            let Some(col) = admissible_child(g, pivot, Axis::Col) else { continue };
            admissible = true;
            let hr = match self.solve(&row.0, budget - 1) {
                Ok(h) => h,
                Err(s) => {
                    structural &= s;
                    continue;
                }
            };
            let hc = match self.solve(&col.0, budget - 1) {
                Ok(h) => h,
                Err(s) => {
                    structural &= s;
                    continue;
                }
            };
            let height = 1 + hr.max(hc);
            let branch = |(child, step, proxy): (GridGraph, SurgeryStep, Option<ProxyTrace>)| {
                Box::new(Branch {
                    step,
                    proxy,
                    child: node_key(&child),
                })
            };
            let outcome = Outcome::Proven {
                pivot,
                row: branch(row),
                col: branch(col),
            };
            self.memo.insert(key, Memo::Done { height, outcome });
            return Ok(height);
        }
        if !admissible {
            fail(self, true, "no admissible pivot".into())
        } else if structural {
            fail(self, true, "no pivot has two proven children".into())
        } else {
            fail(self, false, format!("no pivot has two proven children within depth {budget}"))
        }
    }

    fn collect(&self, g: &GridGraph, nodes: &mut BTreeMap<String, ProofNode>) {
        let key = node_key(g);
        if nodes.contains_key(&key) {
            return;
        }
        let raw = g.canonical_key();
        let (height, outcome) = match &self.memo[&raw] {
            Memo::Done { height, outcome } => (*height, outcome.clone()),
            Memo::Failed { reason, .. } => (0, Outcome::Inconclusive { reason: reason.clone() }),
        };
        nodes.insert(
            key,
            ProofNode {
                graph: g.clone(),
                edge_list: g.edges().collect(),
                height,
                outcome: outcome.clone(),
            },
        );
        if let Outcome::Proven { row, col, .. } = outcome {
            for b in [row, col] {
                let child = self.graphs[&b.child].clone();
                self.collect(&child, nodes);
            }
        }
    }
}

/// Searches for a surgery proof that `g` is entangled.
///
/// A node is proven when it is edgeless, or when some isolated pivot (in
/// ascending order) has an admissible row child and column child that are
/// both proven. COI inputs and children are replaced by their proxies first;
/// GI children make the pivot inadmissible, and so do no-op surgeries.
/// `max_depth` bounds the number of surgery levels.
pub fn prove_entangled(g: &GridGraph, max_depth: usize) -> Result<ProofTree> {
    if g.balanced_signs().is_none() {
        return Err(Error::IncidenceClass {
            expected: "pure L, bipartite pure Q, NOI or COI".into(),
            found: classify_hybrid(g).to_string(),
        });
    }
    let (start, root_proxy) = if is_noi(g) {
        (g.clone(), None)
    } else {
        let (p, trace) = proxy_graph(g)?;
        (p, Some(trace))
    };
    let mut search = Search {
        memo: HashMap::new(),
        graphs: HashMap::new(),
    };
    let proven = search.solve(&start, max_depth).is_ok();
    let mut nodes = BTreeMap::new();
    search.collect(&start, &mut nodes);
    Ok(ProofTree {
        root: node_key(&start),
        max_depth,
        proven,
        root_proxy,
        nodes,
    })
}

/// Default depth budget: the edge count of the input.
pub fn default_max_depth(g: &GridGraph) -> usize {
    g.edge_count()
}

/// Re-executes every recorded step and checks that it reproduces the
/// recorded child and passes the exact kernel check.
pub fn replay(tree: &ProofTree) -> Result<()> {
    for (key, node) in &tree.nodes {
        if node_key(&node.graph) != *key {
            return Err(Error::Precondition(format!("node {key} does not match its graph")));
        }
        match &node.outcome {
            Outcome::Empty if !node.graph.is_edgeless() => {
                return Err(Error::Precondition(format!("node {key} is marked empty but has edges")))
            }
            Outcome::Proven { pivot, row, col } => {
                for b in [row, col] {
                    let (child, step) = surgery(&node.graph, *pivot, b.step.axis)?;
                    if step != b.step || !step_is_sound(&node.graph, &step, &child) {
                        return Err(Error::Precondition(format!("step {} at {pivot} does not replay", b.step.axis)));
                    }
                    let child = match &b.proxy {
                        Some(recorded) => {
                            let (p, trace) = proxy_graph(&child)?;
                            if &trace != recorded {
                                return Err(Error::Precondition(format!("proxy below {key} does not replay")));
                            }
                            p
                        }
                        None => child,
                    };
                    let target = tree
                        .nodes
                        .get(&b.child)
                        .ok_or_else(|| Error::Precondition(format!("missing child {}", b.child)))?;
                    if child != target.graph || !target.outcome.is_proven() {
                        return Err(Error::Precondition(format!("child {} does not replay", b.child)));
                    }
                }
            }
            _ => {}
        }
    }
    Ok(())
}

fn short(key: &str) -> &str {
    &key[..12.min(key.len())]
}

fn edge_list(edges: &[Edge]) -> String {
    let parts: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Human-readable account of a proof, one node at a time from the root.
pub fn surgery_trace(tree: &ProofTree) -> String {
    let mut out = String::new();
    let root = tree.root_node();
    let status = if tree.proven { "proven" } else { "inconclusive" };
    let _ = writeln!(out, "proof {status} (max depth {})", tree.max_depth);
    if let Some(p) = &tree.root_proxy {
        let _ = writeln!(out, "input proxied: removed {} added {}", edge_list(&p.removed), edge_list(&p.added));
    }
    let mut seen = BTreeSet::new();
    let mut stack = vec![(tree.root.as_str(), 0usize)];
    while let Some((key, depth)) = stack.pop() {
        let node = &tree.nodes[key];
        let pad = "  ".repeat(depth);
        if !seen.insert(key) {
            let _ = writeln!(out, "{pad}node {} (see above)", short(key));
            continue;
        }
        let _ = write!(out, "{pad}node {} {}: ", short(key), edge_list(&node.edge_list));
        match &node.outcome {
            Outcome::Empty => {
                let _ = writeln!(out, "empty");
            }
            Outcome::Inconclusive { reason } => {
                let _ = writeln!(out, "inconclusive ({reason})");
            }
            Outcome::Proven { pivot, row, col } => {
                let _ = writeln!(out, "pivot {pivot}");
                for b in [row, col] {
                    let _ = writeln!(
                        out,
                        "{pad}  {} cut {} stitch {}{} -> {}",
                        b.step.axis,
                        edge_list(&b.step.removed),
                        edge_list(&b.step.added),
                        b.proxy
                            .as_ref()
                            .map(|p| format!(" proxy -{} +{}", edge_list(&p.removed), edge_list(&p.added)))
                            .unwrap_or_default(),
                        short(&b.child)
                    );
                }
                stack.push((col.child.as_str(), depth + 1));
                stack.push((row.child.as_str(), depth + 1));
            }
        }
    }
    if !root.outcome.is_proven() {
        let _ = writeln!(out, "reason: {}", tree.reason().unwrap_or_default());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cross_hatch, v, Weight};
    use crate::linalg::same_span;

    use EdgeKind::{L, Q};

    type EdgeSpec = (EdgeKind, (usize, usize), (usize, usize));

    fn graph(rows: usize, cols: usize, edges: &[EdgeSpec]) -> GridGraph {
        let mut g = GridGraph::new(rows, cols).unwrap();
        for &(k, a, b) in edges {
            g.add_edge(k, v(a.0, a.1), v(b.0, b.1), Weight::one()).unwrap();
        }
        g
    }

    fn edge(k: EdgeKind, a: (usize, usize), b: (usize, usize)) -> Edge {
        Edge::unit(k, v(a.0, a.1), v(b.0, b.1)).unwrap()
    }

    #[test]
    fn small_l_graph_surgeries() {
        let g = graph(2, 3, &[(L, (0, 0), (1, 1)), (L, (0, 2), (1, 1)), (L, (0, 1), (1, 2))]);
        assert!(g.isolated_vertices().contains(&v(1, 0)));
        let (row, step) = row_surgery(&g, v(1, 0)).unwrap();
        assert_eq!(step.removed.len(), 3);
        assert_eq!(step.added, vec![edge(L, (0, 0), (0, 2))]);
        assert_eq!(row.edges().collect::<Vec<_>>(), vec![edge(L, (0, 0), (0, 2))]);
        assert!(step_is_sound(&g, &step, &row));

        let (col, step) = col_surgery(&g, v(1, 0)).unwrap();
        assert_eq!(step.removed, vec![edge(L, (0, 0), (1, 1))]);
        assert!(step.added.is_empty());
        assert_eq!(col.edge_count(), 2);
        assert!(step_is_sound(&g, &step, &col));
    }

    #[test]
    fn q_graph_stitches_with_l_edge() {
        let g = graph(2, 2, &[(Q, (0, 0), (1, 0)), (Q, (0, 1), (1, 0))]);
        let (row, step) = row_surgery(&g, v(1, 1)).unwrap();
        assert_eq!(step.added, vec![edge(L, (0, 0), (0, 1))]);
        assert_eq!(row.edges().collect::<Vec<_>>(), vec![edge(L, (0, 0), (0, 1))]);
        let (col, step) = col_surgery(&g, v(1, 1)).unwrap();
        assert!(step.added.is_empty());
        assert_eq!(col.edges().collect::<Vec<_>>(), vec![edge(Q, (0, 0), (1, 0))]);
    }

    #[test]
    fn mixed_survivors_stitch_with_q_edges() {
        // cutting column 1 out of the path leaves survivors on both sides
        let g = graph(2, 3, &[(Q, (0, 0), (1, 2)), (Q, (1, 2), (0, 1)), (Q, (0, 1), (1, 0))]);
        let (child, step) = col_surgery(&g, v(1, 1)).unwrap();
        assert_eq!(step.removed.len(), 2);
        assert_eq!(step.added, vec![edge(Q, (0, 0), (1, 0))]);
        assert!(step_is_sound(&g, &step, &child));
    }

    #[test]
    fn surgery_errors() {
        let g = graph(2, 2, &[(L, (0, 0), (0, 1))]);
        assert_eq!(row_surgery(&g, v(0, 0)).unwrap_err(), Error::PivotNotIsolated(v(0, 0)));
        assert_eq!(row_surgery(&g, v(1, 0)).unwrap_err(), Error::NoOpSurgery(v(1, 0)));
        let coi = graph(
            2,
            3,
            &[(Q, (0, 0), (1, 1)), (Q, (0, 2), (1, 1)), (L, (0, 0), (1, 2)), (L, (0, 2), (1, 2))],
        );
        assert!(matches!(row_surgery(&coi, v(1, 0)), Err(Error::IncidenceClass { .. })));
    }

    #[test]
    fn proxy_of_coi_example() {
        let g = graph(
            2,
            3,
            &[(Q, (0, 0), (1, 1)), (Q, (0, 2), (1, 1)), (L, (0, 0), (1, 2)), (L, (0, 2), (1, 2))],
        );
        let (p, trace) = proxy_graph(&g).unwrap();
        assert_eq!(trace.removed, vec![edge(L, (0, 0), (1, 2)), edge(L, (0, 2), (1, 2))]);
        assert_eq!(trace.added, vec![edge(Q, (1, 1), (1, 2))]);
        assert_eq!(trace.designated, vec![(v(0, 0), v(1, 1))]);
        assert!(is_noi(&p));
        assert!(same_span(
            &laplacian(&g).kernel_basis().unwrap(),
            &laplacian(&p).kernel_basis().unwrap()
        ));

        let (rp, _) = row_surgery(&p, v(1, 0)).unwrap();
        assert_eq!(rp.edges().collect::<Vec<_>>(), vec![edge(L, (0, 0), (0, 2))]);
        let (cp, _) = col_surgery(&p, v(1, 0)).unwrap();
        assert!(!cp.has_pair(v(0, 0), v(1, 1)));
    }

    #[test]
    fn proxy_strips_l_pieces() {
        // (1,0)-(1,1) hangs off the Q-vertex (0,0) through an L-edge
        let g = graph(2, 3, &[(Q, (0, 0), (0, 1)), (L, (0, 0), (1, 0)), (L, (1, 0), (1, 1))]);
        let (p, trace) = proxy_graph(&g).unwrap();
        assert!(is_noi(&p));
        assert_eq!(trace.removed.len(), 2);
        assert_eq!(p.edge_count(), 3);
        assert!(p.edges().all(|e| e.kind == Q));
        assert!(same_span(
            &laplacian(&g).kernel_basis().unwrap(),
            &laplacian(&p).kernel_basis().unwrap()
        ));
        // the smallest positive vertex carries only L-edges
        let g = graph(2, 3, &[(L, (0, 0), (0, 2)), (L, (0, 0), (0, 1)), (Q, (0, 1), (1, 0))]);
        let (p, trace) = proxy_graph(&g).unwrap();
        assert_eq!(trace.designated, vec![(v(0, 1), v(1, 0))]);
        assert!(is_noi(&p));
        assert_eq!(trace.added, vec![edge(Q, (0, 0), (1, 0)), edge(Q, (0, 2), (1, 0))]);

        let noi = graph(2, 2, &[(Q, (0, 0), (1, 1)), (L, (0, 1), (1, 0))]);
        let (same, trace) = proxy_graph(&noi).unwrap();
        assert_eq!(same, noi);
        assert!(trace.is_empty());
    }

    #[test]
    fn bell_proof() {
        let g = graph(2, 2, &[(L, (0, 0), (1, 1))]);
        let tree = prove_entangled(&g, default_max_depth(&g)).unwrap();
        assert!(tree.proven);
        let Outcome::Proven { pivot, row, col } = &tree.root_node().outcome else {
            panic!("expected a proof");
        };
        assert_eq!(*pivot, v(0, 1));
        assert_eq!(row.child, col.child);
        assert_eq!(tree.nodes.len(), 2);
        replay(&tree).unwrap();
        assert!(surgery_trace(&tree).contains("pivot (0,1)"));
    }

    #[test]
    fn separable_edge_is_inconclusive() {
        let g = graph(2, 2, &[(L, (0, 0), (0, 1))]);
        let tree = prove_entangled(&g, 5).unwrap();
        assert!(!tree.proven);
        assert_eq!(tree.reason(), Some("no admissible pivot"));
        assert!(surgery_trace(&tree).contains("reason"));
    }

    #[test]
    fn cross_hatch_proofs() {
        for kind in [L, Q] {
            let g = cross_hatch(3, 3, kind, &Weight::one()).unwrap();
            let tree = prove_entangled(&g, default_max_depth(&g)).unwrap();
            assert!(tree.proven);
            replay(&tree).unwrap();
            assert!(tree.nodes.values().all(|n| n.outcome.is_proven()));
            assert_eq!(prove_entangled(&g, default_max_depth(&g)).unwrap(), tree);
        }
    }

    #[test]
    fn depth_cap() {
        let g = cross_hatch(3, 3, L, &Weight::one()).unwrap();
        let tree = prove_entangled(&g, 1).unwrap();
        assert!(!tree.proven);
        assert!(tree.reason().unwrap().contains("depth"));
    }
}
