//! Reduction from graph isomorphism to string isomorphism: positions are the
//! 2-subsets of the vertex set in lexicographic order, the group is the
//! induced action of the symmetric group on pairs, and each graph becomes
//! the characteristic string of its edge set.

use alloc::vec::Vec;

use crate::error::{argument, Result};
use crate::gen::subsets_lex;
use crate::graph::ColoredGraph;
use crate::perm::{Perm, PermGroup};
use crate::si::{GString, SIInstance};

/// Rank of the pair `{v, w}` (v != w) among the 2-subsets of `0..n` in
/// lexicographic order.
pub fn pair_rank(n: usize, v: u32, w: u32) -> usize {
    let (a, b) = (v.min(w) as usize, v.max(w) as usize);
    // pairs starting with a' < a, then offset within the block of a
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// The permutation of pair ranks induced by a vertex permutation.
pub fn pair_action_perm(n: usize, g: &Perm) -> Perm {
    let pairs = subsets_lex(n, 2);
    let images: Vec<u32> = pairs
        .iter()
        .map(|p| pair_rank(n, g.image(p[0]), g.image(p[1])) as u32)
        .collect();
    Perm::from_images(images).expect("induced pair action is a permutation")
}

/// The induced action of the full symmetric group on 2-subsets, generated by
/// the images of a transposition and an n-cycle.
pub fn pair_action_group(n: usize) -> PermGroup {
    let sym = PermGroup::symmetric(n);
    let images: Vec<Perm> = sym.generators().iter().map(|g| pair_action_perm(n, g)).collect();
    let degree = n * (n - 1) / 2;
    PermGroup::new_unchecked(degree, images)
}

fn edge_string(g: &ColoredGraph) -> GString {
    let n = g.n();
    let pairs = subsets_lex(n, 2);
    let values: Vec<u32> = pairs.iter().map(|p| g.has_edge(p[0], p[1]) as u32).collect();
    GString::new(2, values).expect("characteristic string is binary")
}

/// Encodes a graph pair as a string isomorphism instance over the pair
/// action; a vertex bijection is a graph isomorphism exactly when its
/// induced pair permutation is a string isomorphism.
pub fn gi_to_si(g: &ColoredGraph, h: &ColoredGraph) -> Result<SIInstance> {
    if g.n() != h.n() {
        return Err(argument("graphs with different orders are never isomorphic"));
    }
    let x = edge_string(g);
    let y = edge_string(h);
    SIInstance::plain(x, y, pair_action_group(g.n()))
}
