//! Complete isomorphism and automorphism search by individualization and
//! refinement.
//!
//! The automorphism search walks a base path (always individualizing the
//! minimum vertex of the target cell), then explores siblings level by
//! level. A sibling subtree only needs one automorphism (a coset
//! representative for the stabilizer chain), so it exits early; candidates
//! in the orbit of an already-processed sibling under the currently known
//! group are skipped. Nodes whose refined class-size vector differs from the
//! base path's at the same depth cannot lead to an automorphism and are cut.
//! Leaf candidates are verified edge by edge before being admitted, so
//! pruning never affects soundness.

use alloc::vec::Vec;

use crate::graph::{ColoredGraph, GraphPair};
use crate::perm::{Coset, Perm, PermGroup};
use crate::refine::{Partition, Refiner};

#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub refinements: u64,
}

/// Outcome of an isomorphism or automorphism computation: the verdict, the
/// full coset of isomorphisms (automorphism group plus one witness), and
/// search statistics.
#[derive(Debug)]
pub struct IsoResult {
    pub isomorphic: bool,
    pub coset: Coset,
    pub stats: SearchStats,
}

impl IsoResult {
    pub fn aut_group(&self) -> Option<&PermGroup> {
        self.coset.group()
    }

    pub fn witness(&self) -> Option<&Perm> {
        self.coset.rep()
    }
}

/// Target cell: the smallest non-singleton class, ties broken by the
/// smallest class id. Returns `None` on a discrete partition.
fn target_cell(p: &Partition) -> Option<u32> {
    let mut best: Option<(usize, u32)> = None;
    for c in 0..p.num_classes() as u32 {
        let size = p.class_size(c);
        if size > 1 && best.map_or(true, |(bs, _)| size < bs) {
            best = Some((size, c));
        }
    }
    best.map(|(_, c)| c)
}

struct AutSearch<'g> {
    g: &'g ColoredGraph,
    refiner: Refiner<'g>,
    base: Vec<u32>,
    base_states: Vec<Partition>,
    /// class size vectors per depth, the pruning invariant
    base_sizes: Vec<Vec<u32>>,
    /// vertex carrying each class id in the base leaf
    leaf0: Vec<u32>,
    gens: Vec<Perm>,
    /// stabilizer chain generators per depth, rebuilt when a generator lands
    stab_gens: Vec<Vec<Perm>>,
    stats: SearchStats,
}

/// Full automorphism group computation.
pub fn aut(g: &ColoredGraph) -> IsoResult {
    let n = g.n();
    if n == 0 {
        return IsoResult {
            isomorphic: true,
            coset: Coset::full(PermGroup::trivial(0)),
            stats: SearchStats::default(),
        };
    }
    let mut refiner = Refiner::new(g);
    let mut state = Partition::from_colors(g.vertex_colors());
    refiner.refine(&mut state);

    let mut base = Vec::new();
    let mut base_states = alloc::vec![state];
    while let Some(cell) = target_cell(base_states.last().unwrap()) {
        let last = base_states.last().unwrap();
        let u = *last.members(cell).iter().min().unwrap();
        base.push(u);
        let mut next = last.clone();
        let (old, fresh) = next.individualize(u);
        refiner.refine_seeded(&mut next, &[old, fresh]);
        base_states.push(next);
    }
    let base_sizes: Vec<Vec<u32>> = base_states.iter().map(|s| s.sizes().to_vec()).collect();
    let leaf = base_states.last().unwrap();
    let mut leaf0 = alloc::vec![0u32; n];
    for v in 0..n as u32 {
        leaf0[leaf.class_of(v) as usize] = v;
    }

    let mut search = AutSearch {
        g,
        refiner,
        base,
        base_states,
        base_sizes,
        leaf0,
        gens: Vec::new(),
        stab_gens: Vec::new(),
        stats: SearchStats::default(),
    };
    search.rebuild_stabilizers();
    search.explore(0);

    let group = PermGroup::new_unchecked(n, search.gens);
    IsoResult { isomorphic: true, coset: Coset::full(group), stats: search.stats }
}

impl<'g> AutSearch<'g> {
    fn rebuild_stabilizers(&mut self) {
        let group = PermGroup::new_unchecked(self.g.n(), self.gens.clone());
        self.stab_gens.clear();
        let mut prefix: Vec<u32> = Vec::new();
        for depth in 0..=self.base.len() {
            self.stab_gens.push(group.pointwise_stabilizer(&prefix).generators().to_vec());
            if depth < self.base.len() {
                prefix.push(self.base[depth]);
            }
        }
    }

    /// Orbit of a point under the stabilizer generators at one depth.
    fn orbit_at(&self, depth: usize, point: u32) -> Vec<u32> {
        let gens = &self.stab_gens[depth];
        let mut orbit = alloc::vec![point];
        let mut seen = alloc::collections::BTreeSet::new();
        seen.insert(point);
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in gens {
                let q = g.image(p);
                if seen.insert(q) {
                    orbit.push(q);
                }
            }
        }
        orbit
    }

    fn explore(&mut self, depth: usize) {
        if depth >= self.base.len() {
            return; // the base leaf is the identity candidate
        }
        self.explore(depth + 1);
        let state = self.base_states[depth].clone();
        let cell = target_cell(&state).expect("base path cells are recomputable");
        let u = self.base[depth];
        let mut members: Vec<u32> = state.members(cell).to_vec();
        members.sort_unstable();
        let mut processed = alloc::vec![u];
        for &w in members.iter().filter(|&&w| w != u) {
            let orbit = self.orbit_at(depth, w);
            if orbit.iter().any(|p| processed.contains(p)) {
                processed.push(w);
                continue;
            }
            let mut child = state.clone();
            let (old, fresh) = child.individualize(w);
            self.refiner.refine_seeded(&mut child, &[old, fresh]);
            self.stats.refinements += 1;
            if let Some(pi) = self.find_one(child, depth + 1) {
                self.gens.push(pi);
                self.rebuild_stabilizers();
            }
            processed.push(w);
        }
    }

    /// Finds one automorphism below a node that already deviates from the
    /// base path, or proves there is none.
    fn find_one(&mut self, state: Partition, depth: usize) -> Option<Perm> {
        self.stats.nodes += 1;
        if state.sizes() != &self.base_sizes[depth][..] {
            return None;
        }
        let Some(cell) = target_cell(&state) else {
            return self.verify_leaf(&state);
        };
        let mut members: Vec<u32> = state.members(cell).to_vec();
        members.sort_unstable();
        for w in members {
            let mut child = state.clone();
            let (old, fresh) = child.individualize(w);
            self.refiner.refine_seeded(&mut child, &[old, fresh]);
            self.stats.refinements += 1;
            if let Some(pi) = self.find_one(child, depth + 1) {
                return Some(pi);
            }
        }
        None
    }

    fn verify_leaf(&mut self, leaf: &Partition) -> Option<Perm> {
        let n = self.g.n();
        let mut images = alloc::vec![0u32; n];
        for v in 0..n as u32 {
            images[self.leaf0[leaf.class_of(v) as usize] as usize] = v;
        }
        let pi = Perm::from_images(images).ok()?;
        is_graph_automorphism(self.g, &pi).then_some(pi)
    }
}

/// Direct edge-and-color check of a candidate automorphism.
pub fn is_graph_automorphism(g: &ColoredGraph, pi: &Perm) -> bool {
    if pi.degree() != g.n() {
        return false;
    }
    for v in 0..g.n() as u32 {
        if g.vertex_color(v) != g.vertex_color(pi.image(v)) {
            return false;
        }
        for (w, c_out, c_in) in g.arcs(v) {
            match g.arc_color(pi.image(v), pi.image(w)) {
                Some(c) if c == c_out => {}
                _ => return false,
            }
            if g.arc_color(pi.image(w), pi.image(v)) != Some(c_in) {
                return false;
            }
        }
    }
    true
}

/// Direct check of a candidate isomorphism from `g` onto `h`.
pub fn is_graph_isomorphism(g: &ColoredGraph, h: &ColoredGraph, pi: &Perm) -> bool {
    if pi.degree() != g.n() || g.n() != h.n() || g.m() != h.m() {
        return false;
    }
    for v in 0..g.n() as u32 {
        if g.vertex_color(v) != h.vertex_color(pi.image(v)) {
            return false;
        }
        if g.degree(v) != h.degree(pi.image(v)) {
            return false;
        }
        for (w, c_out, c_in) in g.arcs(v) {
            if h.arc_color(pi.image(v), pi.image(w)) != Some(c_out) {
                return false;
            }
            if h.arc_color(pi.image(w), pi.image(v)) != Some(c_in) {
                return false;
            }
        }
    }
    true
}

struct WitnessSearch<'g> {
    pair: &'g GraphPair,
    g: &'g ColoredGraph,
    h: &'g ColoredGraph,
    refiner: Refiner<'g>,
    stats: SearchStats,
}

/// Isomorphism test with the full coset of isomorphisms on success.
pub fn iso(g: &ColoredGraph, h: &ColoredGraph) -> IsoResult {
    let n = g.n();
    if n != h.n() || g.m() != h.m() {
        return IsoResult {
            isomorphic: false,
            coset: Coset::empty(n),
            stats: SearchStats::default(),
        };
    }
    if n == 0 {
        return IsoResult {
            isomorphic: true,
            coset: Coset::full(PermGroup::trivial(0)),
            stats: SearchStats::default(),
        };
    }
    let pair = GraphPair::new(g, h);
    let mut search = WitnessSearch {
        pair: &pair,
        g,
        h,
        refiner: Refiner::new(pair.union()),
        stats: SearchStats::default(),
    };
    let mut state = Partition::from_colors(pair.union().vertex_colors());
    search.refiner.refine(&mut state);
    let witness = search.descend(state);
    let mut stats = search.stats;
    match witness {
        None => IsoResult { isomorphic: false, coset: Coset::empty(n), stats },
        Some(w) => {
            let aut_result = aut(g);
            stats.nodes += aut_result.stats.nodes;
            stats.refinements += aut_result.stats.refinements;
            let group = aut_result.coset.group().expect("aut returns a full coset").clone();
            IsoResult {
                isomorphic: true,
                coset: Coset::new(group, w).expect("witness degree matches"),
                stats,
            }
        }
    }
}

impl<'g> WitnessSearch<'g> {
    /// True if every class holds equally many vertices of both graphs.
    fn balanced(&self, p: &Partition) -> bool {
        let offset = self.pair.offset() as u32;
        let mut diff = alloc::vec![0i64; p.num_classes()];
        for v in 0..p.domain_size() as u32 {
            diff[p.class_of(v) as usize] += if v < offset { 1 } else { -1 };
        }
        diff.iter().all(|&d| d == 0)
    }

    fn descend(&mut self, state: Partition) -> Option<Perm> {
        self.stats.nodes += 1;
        if !self.balanced(&state) {
            return None;
        }
        let offset = self.pair.offset() as u32;
        // pick the smallest class with at least two left-side vertices
        let mut best: Option<(usize, u32)> = None;
        for c in 0..state.num_classes() as u32 {
            let size = state.class_size(c);
            if size > 2 && best.map_or(true, |(bs, _)| size < bs) {
                best = Some((size, c));
            }
        }
        let Some((_, cell)) = best else {
            // balanced and every class has size 2: one vertex per side
            let mut images = alloc::vec![u32::MAX; self.g.n()];
            let mut partner = alloc::vec![u32::MAX; state.num_classes()];
            for v in 0..state.domain_size() as u32 {
                let c = state.class_of(v) as usize;
                if partner[c] == u32::MAX {
                    partner[c] = v;
                } else {
                    let (a, b) = (partner[c].min(v), partner[c].max(v));
                    if b < offset || a >= offset {
                        return None; // same-side pair cannot match
                    }
                    images[a as usize] = b - offset;
                }
            }
            let pi = Perm::from_images(images).ok()?;
            return is_graph_isomorphism(self.g, self.h, &pi).then_some(pi);
        };
        let members: Vec<u32> = state.members(cell).to_vec();
        let u = members.iter().copied().filter(|&v| v < offset).min()?;
        let mut rights: Vec<u32> = members.iter().copied().filter(|&v| v >= offset).collect();
        rights.sort_unstable();
        for w in rights {
            let mut child = state.clone();
            let (old, fresh) = child.individualize_pair(u, w);
            self.refiner.refine_seeded(&mut child, &[old, fresh]);
            self.stats.refinements += 1;
            if let Some(pi) = self.descend(child) {
                return Some(pi);
            }
        }
        None
    }
}
