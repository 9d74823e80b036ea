//! Vertex- and arc-colored undirected graphs.
//!
//! Vertices are dense integers `0..n`. Colors are plain integer ids; an
//! uncolored graph is one where every vertex has color 0 and both
//! orientations of every edge have arc color 0. Arc colors are assigned to
//! ordered pairs, so the two orientations of an edge may carry different
//! colors.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{argument, Result};

/// An immutable vertex- and arc-colored undirected graph in CSR form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    offsets: Vec<u32>,
    neighbors: Vec<u32>,
    /// Arc color of (v, w) for the CSR slot of w in v's list.
    arc_out: Vec<u32>,
    /// Arc color of (w, v) for the same slot.
    arc_in: Vec<u32>,
    vertex_colors: Vec<u32>,
    uniform_arcs: bool,
}

impl ColoredGraph {
    /// Builds an uncolored graph from an edge list.
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        Self::with_colors(n, edges, None, &[])
    }

    /// Builds a graph with optional vertex colors and arc color overrides.
    ///
    /// `arc_colors` lists ordered pairs `(v, w, color)`; both orientations of
    /// an edge default to color 0 unless overridden. Every listed pair must
    /// be an orientation of an edge.
    pub fn with_colors(
        n: usize,
        edges: &[(u32, u32)],
        vertex_colors: Option<&[u32]>,
        arc_colors: &[(u32, u32, u32)],
    ) -> Result<Self> {
        let mut deg = vec![0u32; n];
        for &(v, w) in edges {
            if v as usize >= n || w as usize >= n {
                return Err(argument(format!("edge ({v},{w}) out of range for n={n}")));
            }
            if v == w {
                return Err(argument(format!("self-loop at vertex {v}")));
            }
            deg[v as usize] += 1;
            deg[w as usize] += 1;
        }
        let mut offsets = vec![0u32; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let mut neighbors = vec![0u32; offsets[n] as usize];
        let mut cursor: Vec<u32> = offsets[..n].to_vec();
        for &(v, w) in edges {
            neighbors[cursor[v as usize] as usize] = w;
            cursor[v as usize] += 1;
            neighbors[cursor[w as usize] as usize] = v;
            cursor[w as usize] += 1;
        }
        for v in 0..n {
            let slice = &mut neighbors[offsets[v] as usize..offsets[v + 1] as usize];
            slice.sort_unstable();
            if slice.windows(2).any(|p| p[0] == p[1]) {
                return Err(argument(format!("parallel edge at vertex {v}")));
            }
        }

        let vertex_colors = match vertex_colors {
            Some(cols) => {
                if cols.len() != n {
                    return Err(argument(format!(
                        "vertex color list has length {}, expected {n}",
                        cols.len()
                    )));
                }
                cols.to_vec()
            }
            None => vec![0; n],
        };

        let mut g = ColoredGraph {
            n,
            offsets,
            neighbors,
            arc_out: vec![0; edges.len() * 2],
            arc_in: vec![0; edges.len() * 2],
            vertex_colors,
            uniform_arcs: true,
        };
        for &(v, w, c) in arc_colors {
            g.set_arc_color(v, w, c)?;
        }
        Ok(g)
    }

    fn slot(&self, v: u32, w: u32) -> Option<usize> {
        let s = self.offsets[v as usize] as usize;
        let e = self.offsets[v as usize + 1] as usize;
        self.neighbors[s..e].binary_search(&w).ok().map(|i| s + i)
    }

    fn set_arc_color(&mut self, v: u32, w: u32, c: u32) -> Result<()> {
        let vw = self
            .slot(v, w)
            .ok_or_else(|| argument(format!("arc color on non-edge ({v},{w})")))?;
        let wv = self.slot(w, v).expect("adjacency is symmetric");
        self.arc_out[vw] = c;
        self.arc_in[wv] = c;
        if c != 0 {
            self.uniform_arcs = false;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, v: u32) -> usize {
        (self.offsets[v as usize + 1] - self.offsets[v as usize]) as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v as u32)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    /// Neighbors of `v` together with the arc colors of both orientations:
    /// `(w, color(v, w), color(w, v))`.
    pub fn arcs(&self, v: u32) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        let s = self.offsets[v as usize] as usize;
        let e = self.offsets[v as usize + 1] as usize;
        (s..e).map(move |i| (self.neighbors[i], self.arc_out[i], self.arc_in[i]))
    }

    pub fn has_edge(&self, v: u32, w: u32) -> bool {
        self.slot(v, w).is_some()
    }

    pub fn vertex_color(&self, v: u32) -> u32 {
        self.vertex_colors[v as usize]
    }

    pub fn vertex_colors(&self) -> &[u32] {
        &self.vertex_colors
    }

    /// Arc color of the ordered pair `(v, w)`, provided `vw` is an edge.
    pub fn arc_color(&self, v: u32, w: u32) -> Option<u32> {
        self.slot(v, w).map(|i| self.arc_out[i])
    }

    /// True if every arc carries color 0.
    pub fn uniform_arc_colors(&self) -> bool {
        self.uniform_arcs
    }

    pub fn max_arc_color(&self) -> u32 {
        self.arc_out.iter().copied().max().unwrap_or(0)
    }

    /// Undirected edges as pairs `(v, w)` with `v < w`, in sorted order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m());
        for v in 0..self.n as u32 {
            for &w in self.neighbors(v) {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out
    }

    /// Ordered pairs `(v, w, color)` for every arc whose color is non-zero.
    pub fn colored_arcs(&self) -> Vec<(u32, u32, u32)> {
        let mut out = Vec::new();
        for v in 0..self.n as u32 {
            for (w, c_out, _) in self.arcs(v) {
                if c_out != 0 {
                    out.push((v, w, c_out));
                }
            }
        }
        out
    }

    /// Returns a copy of the graph with extra edges added, every new arc
    /// carrying the given color.
    pub fn with_added_edges(&self, extra: &[(u32, u32)], arc_color: u32) -> Result<Self> {
        let mut edges = self.edges();
        edges.extend_from_slice(extra);
        let mut arcs = self.colored_arcs();
        for &(v, w) in extra {
            arcs.push((v, w, arc_color));
            arcs.push((w, v, arc_color));
        }
        Self::with_colors(self.n, &edges, Some(&self.vertex_colors), &arcs)
    }

    /// Returns the same graph with different vertex colors.
    pub fn with_vertex_colors(&self, colors: &[u32]) -> Result<Self> {
        Self::with_colors(self.n, &self.edges(), Some(colors), &self.colored_arcs())
    }

    /// Subgraph induced by `verts`; vertex `verts[i]` becomes vertex `i`.
    pub fn induced_subgraph(&self, verts: &[u32]) -> Result<Self> {
        let mut index = vec![u32::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        let mut arcs = Vec::new();
        for &v in verts {
            for (w, c_out, c_in) in self.arcs(v) {
                let (iv, iw) = (index[v as usize], index[w as usize]);
                if iw == u32::MAX || v >= w {
                    continue;
                }
                edges.push((iv, iw));
                if c_out != 0 {
                    arcs.push((iv, iw, c_out));
                }
                if c_in != 0 {
                    arcs.push((iw, iv, c_in));
                }
            }
        }
        let colors: Vec<u32> = verts.iter().map(|&v| self.vertex_colors[v as usize]).collect();
        Self::with_colors(verts.len(), &edges, Some(&colors), &arcs)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Applies a vertex relabeling: vertex `v` of `self` becomes `pi[v]`.
    pub fn relabel(&self, pi: &[u32]) -> Result<Self> {
        if pi.len() != self.n {
            return Err(argument("relabeling has wrong length"));
        }
        let edges: Vec<(u32, u32)> = self
            .edges()
            .iter()
            .map(|&(v, w)| (pi[v as usize], pi[w as usize]))
            .collect();
        let mut colors = vec![0; self.n];
        for v in 0..self.n {
            colors[pi[v] as usize] = self.vertex_colors[v];
        }
        let arcs: Vec<(u32, u32, u32)> = self
            .colored_arcs()
            .iter()
            .map(|&(v, w, c)| (pi[v as usize], pi[w as usize], c))
            .collect();
        Self::with_colors(self.n, &edges, Some(&colors), &arcs)
    }
}

/// Disjoint union of two graphs; colors are taken from a shared id space.
pub fn disjoint_union(g: &ColoredGraph, h: &ColoredGraph) -> ColoredGraph {
    let off = g.n() as u32;
    let mut edges = g.edges();
    edges.extend(h.edges().iter().map(|&(v, w)| (v + off, w + off)));
    let mut colors = g.vertex_colors().to_vec();
    colors.extend_from_slice(h.vertex_colors());
    let mut arcs = g.colored_arcs();
    arcs.extend(h.colored_arcs().iter().map(|&(v, w, c)| (v + off, w + off, c)));
    ColoredGraph::with_colors(g.n() + h.n(), &edges, Some(&colors), &arcs)
        .expect("disjoint union of valid graphs is valid")
}

/// Two graphs packed into one disjoint union so refinement assigns canonical
/// colors across both.
#[derive(Clone, Debug)]
pub struct GraphPair {
    union: ColoredGraph,
    offset: usize,
}

impl GraphPair {
    pub fn new(g: &ColoredGraph, h: &ColoredGraph) -> Self {
        GraphPair {
            union: disjoint_union(g, h),
            offset: g.n(),
        }
    }

    pub fn union(&self) -> &ColoredGraph {
        &self.union
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// True if the union vertex belongs to the first graph.
    pub fn is_left(&self, v: u32) -> bool {
        (v as usize) < self.offset
    }
}
