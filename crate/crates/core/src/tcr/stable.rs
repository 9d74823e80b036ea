//! The alternation of Color Refinement and splitting of small classes, the
//! t-CR-bounded predicate, and the t-closure of a vertex set.

use alloc::vec::Vec;

use crate::error::{argument, Result};
use crate::graph::ColoredGraph;
use crate::refine::{Coloring, Partition, Refiner};

/// The alternating coloring sequence: round 0 is the initial coloring, odd
/// rounds are CR-stable refinements, even rounds split every class of size
/// at most t into singletons. Recording stops once a full CR-and-split cycle
/// refines nothing.
#[derive(Clone, Debug)]
pub struct TcrTrace {
    pub rounds: Vec<Coloring>,
    pub discrete: bool,
}

impl TcrTrace {
    /// The t-CR-stable coloring.
    pub fn stable(&self) -> &Coloring {
        self.rounds.last().expect("trace has at least the initial round")
    }
}

/// Splits every class of size `2..=t` into singleton classes; returns true
/// if anything changed.
fn split_small_classes(p: &mut Partition, t: usize) -> bool {
    let mut changed = false;
    let before = p.num_classes() as u32;
    for c in 0..before {
        let size = p.class_size(c);
        if size < 2 || size > t {
            continue;
        }
        changed = true;
        // peel members in ascending vertex order until the class is single
        let mut members: Vec<u32> = p.members(c).to_vec();
        members.sort_unstable();
        for &v in &members[1..] {
            p.individualize(v);
        }
    }
    changed
}

/// Initial colors: the graph's own colors refined by giving each listed
/// vertex a fresh color (in list order).
fn individualized_colors(g: &ColoredGraph, individualized: &[u32]) -> Result<Vec<u32>> {
    let mut colors = g.vertex_colors().to_vec();
    let fresh_base = colors.iter().copied().max().unwrap_or(0) + 1;
    let mut seen = alloc::collections::BTreeSet::new();
    let mut next = fresh_base;
    for &v in individualized {
        if v as usize >= g.n() {
            return Err(argument("individualized vertex out of range"));
        }
        if seen.insert(v) {
            colors[v as usize] = next;
            next += 1;
        }
    }
    Ok(colors)
}

/// Runs the alternation from the graph's coloring with the given vertices
/// individualized first.
pub fn tcr_stable(g: &ColoredGraph, t: usize, individualized: &[u32]) -> Result<TcrTrace> {
    if t < 1 {
        return Err(argument("the split threshold t must be at least 1"));
    }
    let colors = individualized_colors(g, individualized)?;
    let mut partition = Partition::from_colors(&colors);
    let mut refiner = Refiner::new(g);
    let mut rounds = alloc::vec![partition.to_coloring(0)];
    loop {
        let before_cycle = partition.num_classes();
        refiner.refine(&mut partition);
        rounds.push(partition.to_coloring(rounds.len()));
        split_small_classes(&mut partition, t);
        rounds.push(partition.to_coloring(rounds.len()));
        if partition.num_classes() == before_cycle {
            // drop the two no-op rounds recorded by the final cycle
            rounds.truncate(rounds.len() - 2);
            break;
        }
    }
    let discrete = partition.is_discrete();
    Ok(TcrTrace { rounds, discrete })
}

/// A graph is t-CR-bounded when the alternation reaches the discrete
/// coloring without any individualization.
pub fn is_tcr_bounded(g: &ColoredGraph, t: usize) -> Result<bool> {
    Ok(tcr_stable(g, t, &[])?.discrete)
}

/// The t-closure of a vertex set: individualize it, run the alternation,
/// and collect the vertices left in singleton classes.
pub fn closure(g: &ColoredGraph, x: &[u32], t: usize) -> Result<Vec<u32>> {
    let trace = tcr_stable(g, t, x)?;
    let stable = trace.stable();
    let sizes = stable.class_sizes();
    let mut out: Vec<u32> = (0..g.n() as u32)
        .filter(|&v| sizes[stable.color(v as usize) as usize] == 1)
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::refine::color_refine_default;

    #[test]
    fn cycle_eight_discretizes_with_one_individualized_vertex() {
        let c8 = gen::gen_cycle(8).unwrap();
        let trace = tcr_stable(&c8, 2, &[0]).unwrap();
        assert!(trace.discrete);
        // the alternation: distance classes have size <= 2, split, re-refine
        assert!(trace.rounds.len() >= 3);
    }

    #[test]
    fn threshold_one_is_plain_refinement() {
        for seed in 0..5 {
            let g = gen::random_connected_bounded_degree(14, 4, seed).unwrap();
            let trace = tcr_stable(&g, 1, &[]).unwrap();
            let cr = color_refine_default(&g);
            assert!(trace.stable().equivalent(cr.stable()), "seed {seed}");
        }
    }

    #[test]
    fn regular_graphs_stay_uniform_without_individualization() {
        let g = gen::random_regular(12, 3, 5).unwrap();
        let trace = tcr_stable(&g, 1, &[]).unwrap();
        assert!(!trace.discrete);
        assert_eq!(trace.stable().num_colors(), 1);
    }

    #[test]
    fn path_is_two_cr_bounded() {
        let p = gen::gen_path(6).unwrap();
        assert!(is_tcr_bounded(&p, 2).unwrap());
    }

    #[test]
    fn hexagon_is_not_one_cr_bounded() {
        let c6 = gen::gen_cycle(6).unwrap();
        assert!(!is_tcr_bounded(&c6, 1).unwrap());
    }

    #[test]
    fn precolored_k4_is_three_cr_bounded() {
        let k4 = gen::gen_complete(4).unwrap();
        let colored = k4.with_vertex_colors(&[1, 0, 0, 0]).unwrap();
        assert!(is_tcr_bounded(&colored, 3).unwrap());
        // splitting the remaining class of size 3 needs t >= 3
        assert!(!is_tcr_bounded(&colored, 2).unwrap());
    }

    #[test]
    fn rounds_alternate_and_refine() {
        let c8 = gen::gen_cycle(8).unwrap();
        let trace = tcr_stable(&c8, 2, &[0]).unwrap();
        for w in trace.rounds.windows(2) {
            assert!(w[1].refines(&w[0]));
        }
        // odd rounds are CR-stable: re-refining changes nothing
        for (i, round) in trace.rounds.iter().enumerate() {
            if i % 2 == 1 {
                let cr = crate::refine::color_refine(&c8, round).unwrap();
                assert!(cr.stable().equivalent(round), "round {i} is not CR-stable");
            }
        }
    }

    #[test]
    fn closure_contains_the_seed_and_grows_with_t() {
        let g = gen::gen_dodecahedron();
        let seed = [0u32, 7, 13];
        let cl1 = closure(&g, &seed, 1).unwrap();
        let cl2 = closure(&g, &seed, 2).unwrap();
        for v in seed {
            assert!(cl1.binary_search(&v).is_ok());
        }
        // monotone in t
        assert!(cl1.iter().all(|v| cl2.binary_search(v).is_ok()));
    }

    #[test]
    fn full_vertex_set_closes_to_itself() {
        let g = gen::gen_cycle(6).unwrap();
        let all: Vec<u32> = (0..6).collect();
        assert_eq!(closure(&g, &all, 1).unwrap(), all);
    }

    #[test]
    fn bounded_degree_closure_spans_connected_graphs() {
        // cl_d of a single vertex is everything when max degree <= d
        for seed in 0..10 {
            let g = gen::random_connected_bounded_degree(30, 3, seed).unwrap();
            let cl = closure(&g, &[seed as u32 % 30], 3).unwrap();
            assert_eq!(cl.len(), 30, "seed {seed}");
        }
    }
}
