//! Graph generators and fixed test-bed graphs.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{argument, resource, Result};
use crate::graph::ColoredGraph;

pub use crate::graph::disjoint_union;

/// Path with `len` edges (and `len + 1` vertices).
pub fn gen_path(len: usize) -> Result<ColoredGraph> {
    if len < 1 {
        return Err(argument("path length must be at least 1"));
    }
    let edges: Vec<(u32, u32)> = (0..len as u32).map(|i| (i, i + 1)).collect();
    ColoredGraph::new(len + 1, &edges)
}

/// Cycle on `n` vertices.
pub fn gen_cycle(n: usize) -> Result<ColoredGraph> {
    if n < 3 {
        return Err(argument("cycle needs at least 3 vertices"));
    }
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    ColoredGraph::new(n, &edges)
}

/// Complete graph on `n` vertices.
pub fn gen_complete(n: usize) -> Result<ColoredGraph> {
    let mut edges = Vec::new();
    for v in 0..n as u32 {
        for w in v + 1..n as u32 {
            edges.push((v, w));
        }
    }
    ColoredGraph::new(n, &edges)
}

/// Complete bipartite graph with sides `a` and `b` (side `a` comes first).
pub fn gen_complete_bipartite(a: usize, b: usize) -> Result<ColoredGraph> {
    let mut edges = Vec::new();
    for v in 0..a as u32 {
        for w in 0..b as u32 {
            edges.push((v, a as u32 + w));
        }
    }
    ColoredGraph::new(a + b, &edges)
}

/// All `t`-element subsets of `0..m` in lexicographic order.
pub fn subsets_lex(m: usize, t: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..t as u32).collect();
    if t == 0 || t > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance to the next subset in lex order
        let mut i = t;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < (m - t + i) as u32 {
                cur[i] += 1;
                for j in i + 1..t {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Johnson graph J(m, t): vertices are the t-subsets of `0..m` in
/// lexicographic order, adjacent when they differ in exactly one element.
pub fn gen_johnson(m: usize, t: usize) -> Result<ColoredGraph> {
    if t < 1 || 2 * t > m {
        return Err(argument(format!("johnson graph needs 1 <= t <= m/2, got m={m}, t={t}")));
    }
    let sets = subsets_lex(m, t);
    let mut edges = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let mut common = 0usize;
            let (mut a, mut b) = (0usize, 0usize);
            while a < t && b < t {
                match sets[i][a].cmp(&sets[j][b]) {
                    core::cmp::Ordering::Less => a += 1,
                    core::cmp::Ordering::Greater => b += 1,
                    core::cmp::Ordering::Equal => {
                        common += 1;
                        a += 1;
                        b += 1;
                    }
                }
            }
            if common == t - 1 {
                edges.push((i as u32, j as u32));
            }
        }
    }
    ColoredGraph::new(sets.len(), &edges)
}

/// Kneser graph on the 2-subsets of `0..5`: the Petersen graph.
pub fn gen_petersen() -> ColoredGraph {
    let sets = subsets_lex(5, 2);
    let mut edges = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let disjoint = sets[i].iter().all(|x| !sets[j].contains(x));
            if disjoint {
                edges.push((i as u32, j as u32));
            }
        }
    }
    ColoredGraph::new(sets.len(), &edges).expect("petersen construction is valid")
}

/// Shrikhande graph: Cayley graph of Z4 x Z4 with connection set
/// {(0,1), (1,0), (1,1)} and their inverses. Vertex (a, b) has index 4a + b.
pub fn gen_shrikhande() -> ColoredGraph {
    let idx = |a: i32, b: i32| -> u32 { ((a.rem_euclid(4)) * 4 + b.rem_euclid(4)) as u32 };
    let mut edges = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let v = idx(a, b);
            for (da, db) in [(0, 1), (1, 0), (1, 1)] {
                let w = idx(a + da, b + db);
                if v < w {
                    edges.push((v, w));
                } else {
                    edges.push((w, v));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    ColoredGraph::new(16, &edges).expect("shrikhande construction is valid")
}

/// Line graph of K_{4,4} (the 4x4 rook's graph). Vertex (i, j) has index
/// 4i + j; two vertices are adjacent when they share a row or a column.
pub fn gen_rook44() -> ColoredGraph {
    let mut edges = Vec::new();
    for v in 0..16u32 {
        for w in v + 1..16 {
            if v / 4 == w / 4 || v % 4 == w % 4 {
                edges.push((v, w));
            }
        }
    }
    ColoredGraph::new(16, &edges).expect("rook graph construction is valid")
}

/// Prism over a `k`-gon: two k-cycles `0..k` and `k..2k` joined by rungs.
pub fn gen_prism(k: usize) -> Result<ColoredGraph> {
    if k < 3 {
        return Err(argument("prism needs at least a triangle"));
    }
    let k = k as u32;
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((k + i, k + (i + 1) % k));
        edges.push((i, k + i));
    }
    ColoredGraph::new(2 * k as usize, &edges)
}

/// Dodecahedral graph as the generalized Petersen graph GP(10, 2).
pub fn gen_dodecahedron() -> ColoredGraph {
    let mut edges = Vec::new();
    for i in 0..10u32 {
        edges.push((i, (i + 1) % 10));
        edges.push((i, 10 + i));
        edges.push((10 + i, 10 + (i + 2) % 10));
    }
    edges.iter_mut().for_each(|e| {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    });
    edges.sort_unstable();
    edges.dedup();
    ColoredGraph::new(20, &edges).expect("dodecahedron construction is valid")
}

/// Icosahedral graph: pentagonal antiprism capped by two apex vertices.
pub fn gen_icosahedron() -> ColoredGraph {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let upper = |i: u32| 1 + i % 5;
    let lower = |i: u32| 6 + i % 5;
    for i in 0..5 {
        edges.push((0, upper(i)));
        edges.push((11, lower(i)));
        edges.push((upper(i), upper(i + 1)));
        edges.push((lower(i), lower(i + 1)));
        edges.push((upper(i), lower(i)));
        edges.push((upper(i + 1), lower(i)));
    }
    edges.iter_mut().for_each(|e| {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    });
    edges.sort_unstable();
    edges.dedup();
    ColoredGraph::new(12, &edges).expect("icosahedron construction is valid")
}

/// Random d-regular graph via the configuration model; deterministic for a
/// fixed seed.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<ColoredGraph> {
    if d < 2 || d >= n {
        return Err(argument(format!("regular graph needs 2 <= d < n, got n={n}, d={d}")));
    }
    if (n * d) % 2 != 0 {
        return Err(argument(format!("n*d must be even, got n={n}, d={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| core::iter::repeat(v).take(d)).collect();
    'retries: for _ in 0..10_000 {
        stubs.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(n * d / 2);
        for chunk in stubs.chunks_exact(2) {
            let (v, w) = (chunk[0].min(chunk[1]), chunk[0].max(chunk[1]));
            if v == w {
                continue 'retries;
            }
            edges.push((v, w));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|p| p[0] == p[1]) {
            continue 'retries;
        }
        return ColoredGraph::new(n, &edges);
    }
    Err(resource(format!("could not sample a {d}-regular graph on {n} vertices")))
}

/// Random connected graph with maximum degree at most `d`; a random
/// Hamiltonian path keeps it connected and extra edges are added under the
/// degree cap. Deterministic for a fixed seed.
pub fn random_connected_bounded_degree(n: usize, d: usize, seed: u64) -> Result<ColoredGraph> {
    if n == 0 {
        return Err(argument("graph needs at least one vertex"));
    }
    if d < 2 {
        return Err(argument("degree bound must be at least 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(&mut rng);
    let mut edges: Vec<(u32, u32)> = order.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
    let mut deg = vec![0usize; n];
    for &(v, w) in &edges {
        deg[v as usize] += 1;
        deg[w as usize] += 1;
    }
    let mut present: alloc::collections::BTreeSet<(u32, u32)> = edges.iter().copied().collect();
    for _ in 0..2 * n {
        let v = rng.gen_range(0..n as u32);
        let w = rng.gen_range(0..n as u32);
        let (v, w) = (v.min(w), v.max(w));
        if v == w || deg[v as usize] >= d || deg[w as usize] >= d || present.contains(&(v, w)) {
            continue;
        }
        present.insert((v, w));
        edges.push((v, w));
        deg[v as usize] += 1;
        deg[w as usize] += 1;
    }
    ColoredGraph::new(n, &edges)
}

/// Random graph with exactly `m` distinct edges; deterministic for a fixed
/// seed. Used by the benchmark ladders.
pub fn random_gnm(n: usize, m: usize, seed: u64) -> Result<ColoredGraph> {
    let max = n * (n - 1) / 2;
    if m > max {
        return Err(argument(format!("{m} edges do not fit in a simple graph on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: alloc::collections::BTreeSet<(u32, u32)> = alloc::collections::BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let v = rng.gen_range(0..n as u32);
        let w = rng.gen_range(0..n as u32);
        let (v, w) = (v.min(w), v.max(w));
        if v == w || !present.insert((v, w)) {
            continue;
        }
        edges.push((v, w));
    }
    ColoredGraph::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degree_sequence(g: &ColoredGraph) -> Vec<usize> {
        (0..g.n() as u32).map(|v| g.degree(v)).collect()
    }

    #[test]
    fn path_matches_drawing() {
        let p = gen_path(6).unwrap();
        assert_eq!(p.n(), 7);
        assert_eq!(p.m(), 6);
        assert_eq!(degree_sequence(&p), vec![1, 2, 2, 2, 2, 2, 1]);
        assert!(gen_path(0).is_err());
    }

    #[test]
    fn cycles_and_triangle_unions_are_two_regular() {
        let c6 = gen_cycle(6).unwrap();
        assert!(degree_sequence(&c6).iter().all(|&d| d == 2));
        let two_triangles = disjoint_union(&gen_cycle(3).unwrap(), &gen_cycle(3).unwrap());
        assert_eq!(two_triangles.n(), 6);
        assert!(degree_sequence(&two_triangles).iter().all(|&d| d == 2));
        assert!(gen_cycle(2).is_err());
    }

    #[test]
    fn johnson_5_2_by_brute_force() {
        let g = gen_johnson(5, 2).unwrap();
        assert_eq!(g.n(), 10);
        // independent oracle: adjacency iff |X \ Y| = 1 over explicit subsets
        let sets = subsets_lex(5, 2);
        for i in 0..10u32 {
            for j in 0..10u32 {
                if i == j {
                    continue;
                }
                let diff = sets[i as usize]
                    .iter()
                    .filter(|x| !sets[j as usize].contains(x))
                    .count();
                assert_eq!(g.has_edge(i, j), diff == 1, "pair {i},{j}");
            }
        }
        assert!(degree_sequence(&g).iter().all(|&d| d == 6));
    }

    #[test]
    fn johnson_edge_cases() {
        let g = gen_johnson(4, 1).unwrap();
        assert_eq!(g.m(), 6); // K_4
        assert!(gen_johnson(4, 3).is_err());
    }

    fn srg_parameters(g: &ColoredGraph) -> Option<(usize, usize, usize, usize)> {
        let n = g.n();
        let k = g.degree(0);
        if (0..n as u32).any(|v| g.degree(v) != k) {
            return None;
        }
        let mut lambda = None;
        let mut mu = None;
        for v in 0..n as u32 {
            for w in 0..n as u32 {
                if v == w {
                    continue;
                }
                let common = g.neighbors(v).iter().filter(|&&x| g.has_edge(x, w)).count();
                let slot = if g.has_edge(v, w) { &mut lambda } else { &mut mu };
                match slot {
                    None => *slot = Some(common),
                    Some(c) if *c != common => return None,
                    _ => {}
                }
            }
        }
        Some((n, k, lambda?, mu?))
    }

    #[test]
    fn shrikhande_and_rook_are_srg_16_6_2_2() {
        let s = gen_shrikhande();
        let r = gen_rook44();
        assert_eq!(srg_parameters(&s), Some((16, 6, 2, 2)));
        assert_eq!(srg_parameters(&r), Some((16, 6, 2, 2)));
    }

    #[test]
    fn shrikhande_neighborhoods_are_hexagons() {
        let s = gen_shrikhande();
        for v in 0..16u32 {
            let nbrs: Vec<u32> = s.neighbors(v).to_vec();
            let sub = s.induced_subgraph(&nbrs).unwrap();
            // a 6-cycle: 6 vertices, 6 edges, 2-regular, connected
            assert_eq!(sub.n(), 6);
            assert_eq!(sub.m(), 6);
            assert!((0..6u32).all(|x| sub.degree(x) == 2));
            assert!(sub.is_connected());
        }
    }

    #[test]
    fn rook_neighborhoods_are_two_triangles() {
        let r = gen_rook44();
        for v in 0..16u32 {
            let nbrs: Vec<u32> = r.neighbors(v).to_vec();
            let sub = r.induced_subgraph(&nbrs).unwrap();
            assert_eq!(sub.n(), 6);
            assert_eq!(sub.m(), 6);
            assert!((0..6u32).all(|x| sub.degree(x) == 2));
            assert!(!sub.is_connected());
        }
    }

    #[test]
    fn random_regular_is_deterministic_and_regular() {
        let a = random_regular(10, 3, 42).unwrap();
        let b = random_regular(10, 3, 42).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert!((0..10u32).all(|v| a.degree(v) == 3));
        assert!(random_regular(5, 3, 0).is_err());
    }

    #[test]
    fn random_connected_respects_bounds() {
        let g = random_connected_bounded_degree(50, 4, 1).unwrap();
        assert!(g.is_connected());
        assert!(g.max_degree() <= 4);
    }

    #[test]
    fn fixture_shapes() {
        let d = gen_dodecahedron();
        assert_eq!((d.n(), d.m()), (20, 30));
        assert!((0..20u32).all(|v| d.degree(v) == 3));
        let i = gen_icosahedron();
        assert_eq!((i.n(), i.m()), (12, 30));
        assert!((0..12u32).all(|v| i.degree(v) == 5));
        let p = gen_prism(4).unwrap();
        assert_eq!((p.n(), p.m()), (8, 12));
        assert!((0..8u32).all(|v| p.degree(v) == 3));
        let pet = gen_petersen();
        assert_eq!((pet.n(), pet.m()), (10, 15));
        assert!((0..10u32).all(|v| pet.degree(v) == 3));
    }

    #[test]
    fn generators_produce_valid_graphs_up_to_20() {
        // constructor re-validates symmetry and loop-freeness; exercise it
        for n in 1..=20 {
            let _ = gen_path(n).unwrap();
            if n >= 3 {
                let _ = gen_cycle(n).unwrap();
                let _ = gen_prism(n).unwrap();
            }
            let _ = gen_complete(n).unwrap();
        }
        for m in 2..=8 {
            for t in 1..=m / 2 {
                let _ = gen_johnson(m, t).unwrap();
            }
        }
    }
}
