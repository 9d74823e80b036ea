//! Property suite for the refinement engines: monotonicity, fixpoints,
//! isomorphism invariance, agreement between the engines, the k-hierarchy,
//! and the tree-homomorphism direction of indistinguishability.

use std::collections::BTreeSet;

use isokit_core::gen;
use isokit_core::graph::disjoint_union;
use isokit_core::refine::{
    color_refine, color_refine_default, distinguishes, hom_count_tree, stable_partition,
};
use isokit_core::ColoredGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus(count: usize, seed_base: u64) -> Vec<ColoredGraph> {
    (0..count as u64)
        .map(|s| {
            let n = 8 + (s % 9) as usize;
            let d = 3 + (s % 3) as usize;
            gen::random_connected_bounded_degree(n, d, seed_base + s).unwrap()
        })
        .collect()
}

#[test]
fn traces_refine_monotonically_and_stabilize() {
    for g in corpus(50, 10) {
        let trace = color_refine_default(&g);
        for w in trace.rounds.windows(2) {
            assert!(w[1].refines(&w[0]));
        }
        assert!(trace.stabilized_at < g.n().max(1));
        // re-running one step on the stable coloring yields an equivalent one
        let again = color_refine(&g, trace.stable()).unwrap();
        assert!(again.rounds[1].equivalent(trace.stable()));
        assert_eq!(again.stabilized_at, 0);
    }
}

#[test]
fn refinement_is_isomorphism_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for g in corpus(30, 20) {
        let mut relabel: Vec<u32> = (0..g.n() as u32).collect();
        relabel.shuffle(&mut rng);
        let h = g.relabel(&relabel).unwrap();
        let pair = disjoint_union(&g, &h);
        let trace = color_refine_default(&pair);
        let stable = trace.stable();
        let off = g.n();
        // classes pair up exactly along the relabeling
        for v in 0..g.n() {
            let mate = relabel[v] as usize + off;
            assert_eq!(stable.color(v), stable.color(mate));
        }
        // and per-color class sizes agree across the two sides
        let mut left = vec![0usize; stable.num_colors()];
        let mut right = vec![0usize; stable.num_colors()];
        for v in 0..pair.n() {
            if v < off {
                left[stable.color(v) as usize] += 1;
            } else {
                right[stable.color(v) as usize] += 1;
            }
        }
        assert_eq!(left, right);
    }
}

#[test]
fn worklist_engine_agrees_with_the_round_engine() {
    for g in corpus(200, 30) {
        let fast = stable_partition(&g, g.vertex_colors());
        let slow = color_refine_default(&g);
        assert!(fast.to_coloring(0).equivalent(slow.stable()));
    }
}

#[test]
fn distinguishing_power_is_monotone_in_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let graphs = corpus(20, 40);
    for _ in 0..25 {
        let g = &graphs[rng.gen_range(0..graphs.len())];
        let h = &graphs[rng.gen_range(0..graphs.len())];
        if g.n() != h.n() {
            continue;
        }
        let (d1, _) = distinguishes(g, h, 1).unwrap();
        let (d2, _) = distinguishes(g, h, 2).unwrap();
        if d1 {
            assert!(d2);
        }
    }
}

/// All unlabeled trees with at most `max` vertices, deduplicated by a
/// canonical rooted encoding over all roots.
fn all_trees_up_to(max: usize) -> Vec<ColoredGraph> {
    fn canon(adj: &[Vec<u32>], v: u32, parent: i64) -> String {
        let mut parts: Vec<String> = adj[v as usize]
            .iter()
            .filter(|&&w| w as i64 != parent)
            .map(|&w| canon(adj, w, v as i64))
            .collect();
        parts.sort();
        format!("({})", parts.join(""))
    }
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=max {
        if n == 1 {
            seen.insert("()".into());
            out.push(ColoredGraph::new(1, &[]).unwrap());
            continue;
        }
        // all labeled trees via parent sequences, deduplicated canonically
        let mut stack: Vec<Vec<u32>> = vec![vec![]];
        while let Some(parents) = stack.pop() {
            let k = parents.len() + 1;
            if k == n {
                let edges: Vec<(u32, u32)> =
                    parents.iter().enumerate().map(|(i, &p)| (p, i as u32 + 1)).collect();
                let mut adj = vec![Vec::new(); n];
                for &(a, b) in &edges {
                    adj[a as usize].push(b);
                    adj[b as usize].push(a);
                }
                let key = (0..n as u32).map(|r| canon(&adj, r, -1)).min().unwrap();
                if seen.insert(key) {
                    out.push(ColoredGraph::new(n, &edges).unwrap());
                }
                continue;
            }
            for p in 0..k as u32 {
                let mut next = parents.clone();
                next.push(p);
                stack.push(next);
            }
        }
    }
    out
}

#[test]
fn one_indistinguishable_graphs_agree_on_tree_homomorphism_counts() {
    let trees = all_trees_up_to(8);
    // 1, 1, 1, 2, 3, 6, 11, 23 unlabeled trees on 1..=8 vertices
    assert_eq!(trees.len(), 48);

    // pairs that plain refinement cannot separate: regular pairs and
    // relabelings
    let c6 = gen::gen_cycle(6).unwrap();
    let two_triangles = disjoint_union(&gen::gen_cycle(3).unwrap(), &gen::gen_cycle(3).unwrap());
    let mut pairs = vec![(c6, two_triangles)];
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for seed in 0..4 {
        let g = gen::random_regular(10, 3, seed).unwrap();
        let h = gen::random_regular(10, 3, seed + 40).unwrap();
        pairs.push((g, h));
    }
    for seed in 0..3 {
        let g = gen::random_connected_bounded_degree(9, 3, seed).unwrap();
        let mut relabel: Vec<u32> = (0..9).collect();
        relabel.shuffle(&mut rng);
        let h = g.relabel(&relabel).unwrap();
        pairs.push((g, h));
    }

    let mut checked = 0;
    for (g, h) in &pairs {
        let (apart, _) = distinguishes(g, h, 1).unwrap();
        if apart {
            continue;
        }
        checked += 1;
        for f in &trees {
            assert_eq!(
                hom_count_tree(f, g).unwrap(),
                hom_count_tree(f, h).unwrap(),
                "tree on {} vertices separates a 1-indistinguishable pair",
                f.n()
            );
        }
    }
    assert!(checked >= 4, "corpus must contain 1-indistinguishable pairs");
}
