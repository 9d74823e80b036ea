//! The k-improvement closure: add an edge between every non-adjacent pair
//! joined by more than k internally vertex-disjoint paths, sweeping until a
//! fixpoint. Added edges carry a fresh arc color so they stay
//! distinguishable from original edges.

use alloc::vec::Vec;

use crate::error::{argument, Result};
use crate::graph::ColoredGraph;
use crate::tcr::flow::max_vertex_disjoint_paths;

/// The k-improved graph; also reports how many sweeps added edges.
pub fn k_improvement_with_sweeps(g: &ColoredGraph, k: usize) -> Result<(ColoredGraph, usize)> {
    if k < 1 {
        return Err(argument("improvement needs k >= 1"));
    }
    let improved_color = g.max_arc_color() + 1;
    let mut current = g.clone();
    let mut productive = 0;
    loop {
        let mut additions: Vec<(u32, u32)> = Vec::new();
        for v in 0..current.n() as u32 {
            for w in v + 1..current.n() as u32 {
                if !current.has_edge(v, w) && max_vertex_disjoint_paths(&current, v, w)? > k {
                    additions.push((v, w));
                }
            }
        }
        if additions.is_empty() {
            return Ok((current, productive));
        }
        productive += 1;
        current = current.with_added_edges(&additions, improved_color)?;
    }
}

pub fn k_improvement(g: &ColoredGraph, k: usize) -> Result<ColoredGraph> {
    Ok(k_improvement_with_sweeps(g, k)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn k23_gains_exactly_the_hub_edge() {
        let g = gen::gen_complete_bipartite(2, 3).unwrap();
        let improved = k_improvement(&g, 2).unwrap();
        assert_eq!(improved.m(), g.m() + 1);
        assert!(improved.has_edge(0, 1));
        // the added edge is tagged with the fresh arc color
        assert_eq!(improved.arc_color(0, 1), Some(1));
        assert_eq!(improved.arc_color(0, 2), Some(0));
    }

    #[test]
    fn trees_are_fixed_points() {
        for seed in 0..5 {
            let g = gen::random_connected_bounded_degree(12, 3, seed).unwrap();
            // extract a spanning tree by BFS
            let mut edges = Vec::new();
            let mut seen = alloc::vec![false; g.n()];
            seen[0] = true;
            let mut queue = alloc::vec![0u32];
            while let Some(v) = queue.pop() {
                for &w in g.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        edges.push((v.min(w), v.max(w)));
                        queue.push(w);
                    }
                }
            }
            let tree = ColoredGraph::new(g.n(), &edges).unwrap();
            for k in 1..=3 {
                let improved = k_improvement(&tree, k).unwrap();
                assert_eq!(improved.edges(), tree.edges());
            }
        }
    }

    #[test]
    fn improvement_is_idempotent() {
        for seed in 0..10 {
            let g = gen::random_connected_bounded_degree(10, 5, seed).unwrap();
            for k in 1..=3 {
                let (improved, sweeps) = k_improvement_with_sweeps(&g, k).unwrap();
                // one productive sweep suffices: the improvement of the
                // improvement adds nothing
                assert!(sweeps <= 1, "seed {seed}, k {k}");
                let again = k_improvement(&improved, k).unwrap();
                assert_eq!(again.edges(), improved.edges());
            }
        }
    }
}
