//! Color Refinement (1-WL) and k-dimensional Weisfeiler-Leman refinement
//! with canonical cross-graph color identifiers.
//!
//! Refinement of graphs that are meant to be compared always runs jointly,
//! so that color ids name the same abstract color in both graphs: each round
//! collects the `(previous color, signature)` keys of every domain element of
//! every graph, sorts them, and assigns dense ids in sorted order. Signatures
//! are hashed to 64-bit fingerprints; fingerprint ties between distinct keys
//! are resolved by comparing the full keys lexicographically.

mod cr;
mod distinguish;
mod fast;
mod hom;
mod wl;

pub use cr::{color_refine, color_refine_default, cr_family};
pub use distinguish::distinguishes;
pub use fast::{stable_partition, Partition, Refiner};
pub use hom::hom_count_tree;
pub use wl::{wl_family, wl_k};

use alloc::vec;
use alloc::vec::Vec;

/// A coloring of the `arity`-tuples of a graph's vertex set, stored densely
/// in row-major tuple order. Color ids are contiguous `0..num_colors`, shared
/// with any graphs refined jointly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    arity: usize,
    num_colors: usize,
    history_round: usize,
    assignment: Vec<u32>,
}

impl Coloring {
    pub fn new(arity: usize, num_colors: usize, history_round: usize, assignment: Vec<u32>) -> Self {
        debug_assert!(assignment.iter().all(|&c| (c as usize) < num_colors));
        Coloring { arity, num_colors, history_round, assignment }
    }

    /// Vertex coloring (arity 1) over `n` vertices, renumbered densely.
    pub fn from_vertex_colors(colors: &[u32]) -> Self {
        let mut distinct: Vec<u32> = colors.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let assignment = colors
            .iter()
            .map(|c| distinct.binary_search(c).unwrap() as u32)
            .collect();
        Coloring { arity: 1, num_colors: distinct.len(), history_round: 0, assignment }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn history_round(&self) -> usize {
        self.history_round
    }

    pub fn color(&self, item: usize) -> u32 {
        self.assignment[item]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn domain_size(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.num_colors == self.assignment.len()
    }

    /// Number of domain elements per color id.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.num_colors];
        for &c in &self.assignment {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Classes as sorted lists of domain elements, ordered by color id.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_colors];
        for (i, &c) in self.assignment.iter().enumerate() {
            out[c as usize].push(i);
        }
        out
    }

    /// The partition as a canonical, id-independent object: sorted classes in
    /// sorted order.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut cls = self.classes();
        cls.sort();
        cls
    }

    /// True if `self` refines `coarser`: equal colors in `self` imply equal
    /// colors in `coarser`.
    pub fn refines(&self, coarser: &Coloring) -> bool {
        if self.assignment.len() != coarser.assignment.len() {
            return false;
        }
        let mut image: Vec<Option<u32>> = vec![None; self.num_colors];
        for (i, &c) in self.assignment.iter().enumerate() {
            match image[c as usize] {
                None => image[c as usize] = Some(coarser.assignment[i]),
                Some(d) => {
                    if d != coarser.assignment[i] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn equivalent(&self, other: &Coloring) -> bool {
        self.refines(other) && other.refines(self)
    }
}

/// The full refinement run: colorings for rounds `0..=stabilized_at + 1`,
/// where the last round confirms the fixpoint.
#[derive(Clone, Debug)]
pub struct RefinementTrace {
    pub rounds: Vec<Coloring>,
    pub stabilized_at: usize,
}

impl RefinementTrace {
    pub fn stable(&self) -> &Coloring {
        &self.rounds[self.stabilized_at]
    }
}

/// Word-wise 64-bit mixer over a stream of u32 words; fixed constants so
/// that color ids are stable across platforms.
pub(crate) fn fingerprint(words: &[u32]) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15 ^ (words.len() as u64);
    for &w in words {
        let x = (w as u64 | 1 << 32).wrapping_mul(0xff51_afd7_ed55_8ccd);
        h = (h ^ x).rotate_left(29).wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    }
    h ^ (h >> 32)
}

/// Assigns dense canonical ids to items keyed by `(prev, signature)`.
///
/// Items are ordered by `(prev, fingerprint)`; within a fingerprint run the
/// full signatures are recomputed and compared, so equal fingerprints never
/// merge distinct keys. Returns the number of colors; ids are written to
/// `out[item]`.
pub(crate) fn assign_canonical_ids(
    prev: &[u32],
    fps: &[u64],
    mut sig_of: impl FnMut(usize, &mut Vec<u32>),
    out: &mut [u32],
) -> usize {
    let n = prev.len();
    let mut idx: Vec<u32> = (0..n as u32).collect();
    idx.sort_unstable_by_key(|&i| (prev[i as usize], fps[i as usize]));

    let mut next = 0u32;
    let mut run_start = 0usize;
    let mut sig_a: Vec<u32> = Vec::new();
    let mut sig_b: Vec<u32> = Vec::new();
    while run_start < n {
        let key = (prev[idx[run_start] as usize], fps[idx[run_start] as usize]);
        let mut run_end = run_start + 1;
        while run_end < n && (prev[idx[run_end] as usize], fps[idx[run_end] as usize]) == key {
            run_end += 1;
        }
        let run = &idx[run_start..run_end];
        // fast path: runs are almost always a single key
        sig_a.clear();
        sig_of(run[0] as usize, &mut sig_a);
        let mut groups: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        let mut first_members = vec![run[0]];
        for &item in &run[1..] {
            sig_b.clear();
            sig_of(item as usize, &mut sig_b);
            if sig_b == sig_a {
                first_members.push(item);
            } else if let Some(g) = groups.iter_mut().find(|g| g.0 == sig_b) {
                g.1.push(item);
            } else {
                groups.push((sig_b.clone(), vec![item]));
            }
        }
        if groups.is_empty() {
            for &item in &first_members {
                out[item as usize] = next;
            }
            next += 1;
        } else {
            groups.push((sig_a.clone(), first_members));
            groups.sort_by(|a, b| a.0.cmp(&b.0));
            for (_, members) in &groups {
                for &item in members {
                    out[item as usize] = next;
                }
                next += 1;
            }
        }
        run_start = run_end;
    }
    next as usize
}
