//! Deciding whether k-WL tells two graphs apart.

use alloc::vec::Vec;

use crate::error::{argument, Result};
use crate::graph::ColoredGraph;
use crate::refine::{cr_family, wl_family, Coloring};

fn class_size_witness(g_stable: &Coloring, h_stable: &Coloring) -> Option<u32> {
    let num = g_stable.num_colors().max(h_stable.num_colors());
    let mut counts = alloc::vec![(0usize, 0usize); num];
    for &c in g_stable.assignment() {
        counts[c as usize].0 += 1;
    }
    for &c in h_stable.assignment() {
        counts[c as usize].1 += 1;
    }
    counts.iter().position(|&(a, b)| a != b).map(|c| c as u32)
}

/// Tests whether the stable k-WL colorings of `g` and `h` (computed jointly,
/// so color ids are shared) give some color different multiplicities. Returns
/// the smallest witnessing color id when they do.
pub fn distinguishes(g: &ColoredGraph, h: &ColoredGraph, k: usize) -> Result<(bool, Option<u32>)> {
    if k < 1 {
        return Err(argument("distinguishes needs k >= 1"));
    }
    let (rounds, stabilized) = if k == 1 {
        cr_family(&[g, h], &[g.vertex_colors(), h.vertex_colors()])
    } else {
        wl_family(&[g, h], k)?
    };
    let stable: &Vec<Coloring> = &rounds[stabilized];
    let witness = class_size_witness(&stable[0], &stable[1]);
    Ok((witness.is_some(), witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::graph::disjoint_union;

    #[test]
    fn regular_pair_needs_two_dimensions() {
        let c6 = gen::gen_cycle(6).unwrap();
        let kk = disjoint_union(&gen::gen_cycle(3).unwrap(), &gen::gen_cycle(3).unwrap());
        let (one, w1) = distinguishes(&c6, &kk, 1).unwrap();
        assert!(!one);
        assert!(w1.is_none());
        let (two, w2) = distinguishes(&c6, &kk, 2).unwrap();
        assert!(two);
        assert!(w2.is_some());
    }

    #[test]
    fn srg_pair_needs_three_dimensions() {
        let s = gen::gen_shrikhande();
        let r = gen::gen_rook44();
        assert!(!distinguishes(&s, &r, 2).unwrap().0);
        assert!(distinguishes(&s, &r, 3).unwrap().0);
    }

    #[test]
    fn distinguishing_is_monotone_in_k() {
        for seed in 0..8 {
            let g = gen::random_connected_bounded_degree(9, 3, seed).unwrap();
            let h = gen::random_connected_bounded_degree(9, 3, seed + 100).unwrap();
            let (d1, _) = distinguishes(&g, &h, 1).unwrap();
            let (d2, _) = distinguishes(&g, &h, 2).unwrap();
            let (d3, _) = distinguishes(&g, &h, 3).unwrap();
            if d1 {
                assert!(d2, "seed {seed}");
            }
            if d2 {
                assert!(d3, "seed {seed}");
            }
        }
    }
}
