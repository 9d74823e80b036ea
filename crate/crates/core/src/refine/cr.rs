//! Round-by-round Color Refinement.
//!
//! Each round recolors a vertex by its previous color together with the
//! multiset of `(neighbor color, out arc color, in arc color)` triples over
//! its neighborhood, following the one-dimensional refinement step. This
//! engine materializes every round; the worklist engine in `fast` computes
//! only the stable partition.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{argument, Result};
use crate::graph::ColoredGraph;
use crate::refine::{assign_canonical_ids, fingerprint, Coloring, RefinementTrace};

/// Jointly refines a family of graphs (one coloring sequence per graph, ids
/// shared across the family). `initial` gives one arity-1 coloring per graph;
/// initial ids must already be drawn from a shared space.
pub fn cr_family(graphs: &[&ColoredGraph], initial: &[&[u32]]) -> (Vec<Vec<Coloring>>, usize) {
    assert_eq!(graphs.len(), initial.len());
    let sizes: Vec<usize> = graphs.iter().map(|g| g.n()).collect();
    let total: usize = sizes.iter().sum();

    // flat item index over the family
    let mut offsets = vec![0usize; graphs.len() + 1];
    for (i, &s) in sizes.iter().enumerate() {
        offsets[i + 1] = offsets[i] + s;
    }
    let graph_of = |item: usize| -> (usize, u32) {
        let gi = offsets.iter().rposition(|&o| o <= item).unwrap();
        (gi, (item - offsets[gi]) as u32)
    };

    // round 0: canonical ids straight from the initial colors
    let mut colors = vec![0u32; total];
    let fps: Vec<u64> = (0..total)
        .map(|it| {
            let (gi, v) = graph_of(it);
            fingerprint(&[initial[gi][v as usize]])
        })
        .collect();
    let prev = vec![0u32; total];
    let mut num_colors = assign_canonical_ids(
        &prev,
        &fps,
        |it, buf| {
            let (gi, v) = graph_of(it);
            buf.push(initial[gi][v as usize]);
        },
        &mut colors,
    );

    let snapshot = |colors: &[u32], num: usize, round: usize| -> Vec<Coloring> {
        graphs
            .iter()
            .enumerate()
            .map(|(gi, _)| {
                Coloring::new(1, num, round, colors[offsets[gi]..offsets[gi + 1]].to_vec())
            })
            .collect()
    };

    let mut per_round: Vec<Vec<Coloring>> = vec![snapshot(&colors, num_colors, 0)];

    let mut sig_scratch: Vec<u32> = Vec::new();
    let mut round = 0usize;
    loop {
        round += 1;
        // signature of v: previous color, then sorted neighbor triples
        let compute_sig = |it: usize, buf: &mut Vec<u32>, colors: &[u32]| {
            let (gi, v) = graph_of(it);
            let base = offsets[gi];
            let mut triples: Vec<(u32, u32, u32)> = graphs[gi]
                .arcs(v)
                .map(|(w, c_out, c_in)| (colors[base + w as usize], c_out, c_in))
                .collect();
            triples.sort_unstable();
            for (c, a, b) in triples {
                buf.push(c);
                buf.push(a);
                buf.push(b);
            }
        };
        let mut fps = vec![0u64; total];
        for it in 0..total {
            sig_scratch.clear();
            compute_sig(it, &mut sig_scratch, &colors);
            fps[it] = fingerprint(&sig_scratch);
        }
        let mut new_colors = vec![0u32; total];
        let new_num = assign_canonical_ids(
            &colors,
            &fps,
            |it, buf| compute_sig(it, buf, &colors),
            &mut new_colors,
        );
        per_round.push(snapshot(&new_colors, new_num, round));
        let stabilized = new_num == num_colors;
        colors = new_colors;
        num_colors = new_num;
        if stabilized {
            break;
        }
    }

    (per_round, round - 1)
}

/// Color Refinement from an explicit initial coloring.
pub fn color_refine(g: &ColoredGraph, initial: &Coloring) -> Result<RefinementTrace> {
    if initial.arity() != 1 {
        return Err(argument("initial coloring must have arity 1"));
    }
    if initial.domain_size() != g.n() {
        return Err(argument("initial coloring does not match the vertex count"));
    }
    let (rounds, stabilized_at) = cr_family(&[g], &[initial.assignment()]);
    let rounds = rounds.into_iter().map(|mut per_graph| per_graph.remove(0)).collect();
    Ok(RefinementTrace { rounds, stabilized_at })
}

/// Color Refinement starting from the graph's own vertex coloring.
pub fn color_refine_default(g: &ColoredGraph) -> RefinementTrace {
    let (rounds, stabilized_at) = cr_family(&[g], &[g.vertex_colors()]);
    let rounds = rounds.into_iter().map(|mut per_graph| per_graph.remove(0)).collect();
    RefinementTrace { rounds, stabilized_at }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn path_of_length_six_stabilizes_at_round_three() {
        let p = gen::gen_path(6).unwrap();
        let trace = color_refine_default(&p);
        assert_eq!(trace.stabilized_at, 3);
        let partition = trace.stable().partition();
        assert_eq!(
            partition,
            vec![vec![0, 6], vec![1, 5], vec![2, 4], vec![3]]
        );
        // round 1 separates the endpoints only
        assert_eq!(trace.rounds[1].partition(), vec![vec![0, 6], vec![1, 2, 3, 4, 5]]);
        // round 2 peels the next layer
        assert_eq!(
            trace.rounds[2].partition(),
            vec![vec![0, 6], vec![1, 5], vec![2, 3, 4]]
        );
    }

    #[test]
    fn regular_graphs_are_stable_immediately() {
        let c6 = gen::gen_cycle(6).unwrap();
        let trace = color_refine_default(&c6);
        assert_eq!(trace.stabilized_at, 0);
        assert_eq!(trace.stable().num_colors(), 1);
    }

    #[test]
    fn single_vertex_stabilizes_at_zero() {
        let g = crate::graph::ColoredGraph::new(1, &[]).unwrap();
        let trace = color_refine_default(&g);
        assert_eq!(trace.stabilized_at, 0);
        assert_eq!(trace.stable().num_colors(), 1);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let g = gen::gen_cycle(3).unwrap();
        let bad = Coloring::new(2, 1, 0, vec![0; 9]);
        assert!(color_refine(&g, &bad).is_err());
    }

    #[test]
    fn rounds_refine_their_predecessors() {
        let p = gen::gen_path(6).unwrap();
        let trace = color_refine_default(&p);
        for w in trace.rounds.windows(2) {
            assert!(w[1].refines(&w[0]));
        }
        let last = trace.rounds.len() - 1;
        assert!(trace.rounds[last].equivalent(&trace.rounds[last - 1]));
    }
}
