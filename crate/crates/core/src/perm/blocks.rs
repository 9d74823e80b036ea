//! Block systems of transitive actions.
//!
//! `minimal_block_system` returns a non-trivial system whose induced block
//! action is primitive (the singleton system when the group itself is
//! primitive). Among the candidate systems generated by merging the minimum
//! point of the window with every other point, the one whose block through
//! the minimum point is shortlex-smallest (size first, then lexicographic)
//! is coarsened until the block action is primitive.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{argument, Result};
use crate::perm::group::PermGroup;
use crate::perm::hom::induced_action;

/// An equipartition of an invariant set into blocks permuted by the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    domain: Vec<u32>,
    blocks: Vec<Vec<u32>>,
}

impl BlockSystem {
    /// Builds a system from explicit blocks; blocks and the block list are
    /// brought into sorted order.
    pub fn from_blocks(domain: Vec<u32>, mut blocks: Vec<Vec<u32>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        BlockSystem { domain, blocks }
    }

    pub fn singletons(domain: &[u32]) -> Self {
        let mut domain = domain.to_vec();
        domain.sort_unstable();
        let blocks = domain.iter().map(|&p| vec![p]).collect();
        BlockSystem { domain: domain.clone(), blocks }
    }

    pub fn domain(&self) -> &[u32] {
        &self.domain
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, |b| b.len())
    }

    /// Index of the block containing `point`.
    pub fn block_of(&self, point: u32) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&point).is_ok())
    }

    /// The trivial system of singletons; reported when the action is
    /// primitive.
    pub fn is_singletons(&self) -> bool {
        self.block_size() == 1
    }

    pub fn is_single_block(&self) -> bool {
        self.num_blocks() == 1
    }
}

/// Finest congruence of the transitive action on `w` that merges `a` and
/// `b`; returns blocks over `w`. Classical union-find block algorithm.
fn finest_merging(group: &PermGroup, w: &[u32], a: u32, b: u32) -> BlockSystem {
    let degree = group.degree();
    let mut parent: Vec<u32> = (0..degree as u32).collect();
    fn find(parent: &mut [u32], x: u32) -> u32 {
        let mut root = x;
        while parent[root as usize] != root {
            root = parent[root as usize];
        }
        let mut cur = x;
        while parent[cur as usize] != root {
            let next = parent[cur as usize];
            parent[cur as usize] = root;
            cur = next;
        }
        root
    }
    let mut queue: Vec<(u32, u32)> = Vec::new();
    let (ra, rb) = (a.min(b), a.max(b));
    parent[rb as usize] = ra;
    queue.push((ra, rb));
    while let Some((x, y)) = queue.pop() {
        for g in group.generators() {
            let (gx, gy) = (g.image(x), g.image(y));
            let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
            if rx != ry {
                let (lo, hi) = (rx.min(ry), rx.max(ry));
                parent[hi as usize] = lo;
                queue.push((lo, hi));
            }
        }
    }
    let mut by_root: alloc::collections::BTreeMap<u32, Vec<u32>> = alloc::collections::BTreeMap::new();
    for &p in w {
        by_root.entry(find(&mut parent, p)).or_default().push(p);
    }
    BlockSystem::from_blocks(w.to_vec(), by_root.into_values().collect())
}

fn shortlex_key(block: &[u32]) -> (usize, Vec<u32>) {
    (block.len(), block.to_vec())
}

/// Block system of the action on `w` whose induced block action is
/// primitive; the singleton system when the action is already primitive.
pub fn minimal_block_system(group: &PermGroup, w: &[u32]) -> Result<BlockSystem> {
    let mut w = w.to_vec();
    w.sort_unstable();
    w.dedup();
    if w.len() < 2 {
        return Err(argument("block systems need a window with at least 2 points"));
    }
    if !group.is_transitive_on(&w)? {
        return Err(argument("group is not transitive on the window"));
    }
    let w0 = w[0];
    let mut best: Option<BlockSystem> = None;
    for &alpha in &w[1..] {
        let system = finest_merging(group, &w, w0, alpha);
        if system.is_single_block() {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => {
                let cur = system.block_of(w0).map(|i| shortlex_key(&system.blocks()[i])).unwrap();
                let old = b.block_of(w0).map(|i| shortlex_key(&b.blocks()[i])).unwrap();
                cur < old
            }
        };
        if better {
            best = Some(system);
        }
    }
    let mut system = match best {
        None => return Ok(BlockSystem::singletons(&w)), // primitive
        Some(s) => s,
    };
    // coarsen until the induced block action is primitive
    loop {
        let (_, block_action) = induced_action(group, &system)?;
        let all_blocks: Vec<u32> = (0..system.num_blocks() as u32).collect();
        let coarser = minimal_block_system(&block_action, &all_blocks)?;
        if coarser.is_singletons() {
            return Ok(system);
        }
        let lifted: Vec<Vec<u32>> = coarser
            .blocks()
            .iter()
            .map(|sup| {
                let mut merged = Vec::new();
                for &bi in sup {
                    merged.extend_from_slice(&system.blocks()[bi as usize]);
                }
                merged
            })
            .collect();
        system = BlockSystem::from_blocks(system.domain().to_vec(), lifted);
    }
}
