//! Vertex-disjoint path counting by unit-capacity max-flow on the
//! split-vertex digraph.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{argument, Result};
use crate::graph::ColoredGraph;

struct FlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<u32>,
    cap: Vec<i32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { adj: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn add_edge(&mut self, u: u32, v: u32, cap: i32) {
        self.adj[u as usize].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.adj[v as usize].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Edmonds-Karp; unit capacities keep this tiny at desk scale.
    fn max_flow(&mut self, s: u32, t: u32) -> usize {
        let mut flow = 0;
        loop {
            let mut pred: Vec<Option<usize>> = vec![None; self.adj.len()];
            let mut queue = alloc::collections::VecDeque::new();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u as usize] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && pred[v as usize].is_none() && v != s {
                        pred[v as usize] = Some(e);
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if pred[t as usize].is_none() {
                return flow;
            }
            let mut v = t;
            while v != s {
                let e = pred[v as usize].unwrap();
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
    }
}

/// Builds the split-vertex network: vertex u becomes `in = 2u`, `out = 2u+1`
/// with an internal unit edge, and each graph edge contributes both
/// directions between out- and in-copies.
fn split_network(g: &ColoredGraph, extra_nodes: usize) -> FlowNet {
    let mut net = FlowNet::new(2 * g.n() + extra_nodes);
    for u in 0..g.n() as u32 {
        net.add_edge(2 * u, 2 * u + 1, 1);
        for &v in g.neighbors(u) {
            net.add_edge(2 * u + 1, 2 * v, 1);
        }
    }
    net
}

/// Maximum number of pairwise internally vertex-disjoint paths between two
/// distinct vertices; a shared edge counts as one path.
pub fn max_vertex_disjoint_paths(g: &ColoredGraph, v: u32, w: u32) -> Result<usize> {
    if v == w {
        return Err(argument("path endpoints must be distinct"));
    }
    if v as usize >= g.n() || w as usize >= g.n() {
        return Err(argument("path endpoint out of range"));
    }
    let mut net = split_network(g, 0);
    Ok(net.max_flow(2 * v + 1, 2 * w))
}

/// Maximum number of fully vertex-disjoint paths from `sources` to `sinks`
/// (super-source/super-sink construction; endpoint vertices also have unit
/// capacity).
pub fn max_disjoint_paths_between_sets(g: &ColoredGraph, sources: &[u32], sinks: &[u32]) -> usize {
    let s = 2 * g.n() as u32;
    let t = s + 1;
    let mut net = split_network(g, 2);
    for &u in sources {
        net.add_edge(s, 2 * u, 1);
    }
    for &u in sinks {
        net.add_edge(2 * u + 1, t, 1);
    }
    net.max_flow(s, t)
}
