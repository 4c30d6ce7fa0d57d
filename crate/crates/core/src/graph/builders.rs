//! Generators for bound entangled families and their compositions.

use super::{Edge, EdgeKind, GridGraph, VertexId, Weight};
use crate::error::{Error, Result};

/// Vertex pairs of the `m x n` cross-hatch pattern.
///
/// Two families of parallel hatch lines cover the grid boundary:
/// `{(i,0),(i+1,n-1)}` for `0 <= i < m-1` and `{(0,j),(m-1,j-1)}` for
/// `1 <= j < n`. Every boundary vertex is matched exactly once and every
/// interior vertex is isolated, so components are single edges. The partial
/// transpose matches the same boundary vertices, hence `D(G) = D(G^Γ)` under
/// uniform weights.
pub fn cross_hatch_pattern(m: usize, n: usize) -> Result<Vec<(VertexId, VertexId)>> {
    if m < 3 || n < 3 {
        return Err(Error::CrossHatchTooSmall { rows: m, cols: n });
    }
    let down = (0..m - 1).map(|i| (VertexId::new(i, 0), VertexId::new(i + 1, n - 1)));
    let across = (1..n).map(|j| (VertexId::new(0, j), VertexId::new(m - 1, j - 1)));
    Ok(down.chain(across).collect())
}

/// Cross-hatch graph with one kind and one weight on every edge.
pub fn cross_hatch(m: usize, n: usize, kind: EdgeKind, weight: &Weight) -> Result<GridGraph> {
    cross_hatch_with(m, n, |_, _, _| (kind, weight.clone()))
}

/// Cross-hatch graph whose `k`-th pattern edge gets `assign(k, a, b)`.
pub fn cross_hatch_with(
    m: usize,
    n: usize,
    mut assign: impl FnMut(usize, VertexId, VertexId) -> (EdgeKind, Weight),
) -> Result<GridGraph> {
    let pattern = cross_hatch_pattern(m, n)?;
    let mut g = GridGraph::new(m, n)?;
    for (k, (a, b)) in pattern.into_iter().enumerate() {
        let (kind, weight) = assign(k, a, b);
        g.insert(Edge::new(kind, a, b, weight)?)?;
    }
    Ok(g)
}

/// Cross-hatch graph alternating `L` and `Q` along the pattern order. The
/// pattern is a matching, so the result is NOI.
pub fn cross_hatch_hybrid(m: usize, n: usize, weight: &Weight) -> Result<GridGraph> {
    cross_hatch_with(m, n, |k, _, _| {
        let kind = if k % 2 == 0 { EdgeKind::L } else { EdgeKind::Q };
        (kind, weight.clone())
    })
}

fn shifted_edges(
    g: &GridGraph,
    row_offset: usize,
    col_offset: usize,
    rows: usize,
    cols: usize,
) -> Result<impl Iterator<Item = Edge> + '_> {
    if row_offset + g.rows() > rows || col_offset + g.cols() > cols {
        return Err(Error::CompositionBounds {
            rows: g.rows(),
            cols: g.cols(),
            row_offset,
            col_offset,
            outer_rows: rows,
            outer_cols: cols,
        });
    }
    let shift = move |x: VertexId| VertexId::new(x.row + row_offset, x.col + col_offset);
    Ok(g.edges().map(move |e| Edge {
        a: shift(e.a),
        b: shift(e.b),
        ..e
    }))
}

/// Union of `outer` with `inner` shifted by the offsets.
pub fn embed_compose(outer: &GridGraph, inner: &GridGraph, row_offset: usize, col_offset: usize) -> Result<GridGraph> {
    let mut g = outer.clone();
    for e in shifted_edges(inner, row_offset, col_offset, outer.rows(), outer.cols())? {
        g.insert(e)?;
    }
    Ok(g)
}

/// Union of shifted tiles on a fresh `rows x cols` grid.
pub fn tile_compose(tiles: &[(GridGraph, usize, usize)], rows: usize, cols: usize) -> Result<GridGraph> {
    let mut g = GridGraph::new(rows, cols)?;
    for (tile, row_offset, col_offset) in tiles {
        for e in shifted_edges(tile, *row_offset, *col_offset, rows, cols)? {
            g.insert(e)?;
        }
    }
    Ok(g)
}
