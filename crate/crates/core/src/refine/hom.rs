//! Exact homomorphism counting from trees by dynamic programming over a
//! rooted orientation; counts are exact big integers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{argument, Result};
use crate::graph::ColoredGraph;

/// Number of color-preserving homomorphisms from the tree `f` into `g`.
pub fn hom_count_tree(f: &ColoredGraph, g: &ColoredGraph) -> Result<BigUint> {
    if f.n() == 0 {
        return Err(argument("pattern tree must be non-empty"));
    }
    if !f.is_connected() || f.m() != f.n() - 1 {
        return Err(argument("pattern graph is not a tree"));
    }
    if g.n() == 0 {
        return Ok(BigUint::zero());
    }

    // BFS order from the root so children are processed before parents
    let root = 0u32;
    let mut parent = vec![u32::MAX; f.n()];
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in f.neighbors(u) {
            if w != root && parent[w as usize] == u32::MAX {
                parent[w as usize] = u;
                order.push(w);
            }
        }
    }

    // table[u][x]: homomorphisms of the subtree rooted at u mapping u to x
    let mut table: Vec<Vec<BigUint>> = vec![Vec::new(); f.n()];
    for &u in order.iter().rev() {
        let mut row = vec![BigUint::zero(); g.n()];
        for x in 0..g.n() as u32 {
            if f.vertex_color(u) != g.vertex_color(x) {
                continue;
            }
            let mut prod = BigUint::one();
            for &c in f.neighbors(u) {
                if parent[c as usize] != u {
                    continue;
                }
                let mut sum = BigUint::zero();
                for (y, c_out, c_in) in g.arcs(x) {
                    if f.arc_color(u, c) == Some(c_out) && f.arc_color(c, u) == Some(c_in) {
                        sum += &table[c as usize][y as usize];
                    }
                }
                prod *= sum;
                if prod.is_zero() {
                    break;
                }
            }
            row[x as usize] = prod;
        }
        table[u as usize] = row;
    }
    Ok(table[root as usize].iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn single_edge_counts_oriented_edges() {
        let f = gen::gen_path(1).unwrap();
        for seed in 0..5 {
            let g = gen::random_connected_bounded_degree(12, 4, seed).unwrap();
            assert_eq!(hom_count_tree(&f, &g).unwrap(), BigUint::from(2 * g.m()));
        }
    }

    #[test]
    fn single_vertex_counts_vertices() {
        let f = ColoredGraph::new(1, &[]).unwrap();
        let g = gen::gen_cycle(9).unwrap();
        assert_eq!(hom_count_tree(&f, &g).unwrap(), BigUint::from(9u32));
    }

    #[test]
    fn path3_into_c6_matches_brute_force() {
        let f = gen::gen_path(2).unwrap(); // path on 3 vertices
        let g = gen::gen_cycle(6).unwrap();
        // oracle: enumerate all 6^3 maps and check edge preservation
        let mut count = 0u32;
        for a in 0..6u32 {
            for b in 0..6u32 {
                for c in 0..6u32 {
                    if g.has_edge(a, b) && g.has_edge(b, c) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 24);
        assert_eq!(hom_count_tree(&f, &g).unwrap(), BigUint::from(count));
    }

    #[test]
    fn rejects_non_trees() {
        let f = gen::gen_cycle(4).unwrap();
        let g = gen::gen_cycle(6).unwrap();
        assert!(hom_count_tree(&f, &g).is_err());
    }
}
