//! Computational permutation groups: permutations, Schreier-Sims index
//! structures, blocks, homomorphisms, cosets, and composition-factor checks.

mod blocks;
mod coset;
mod gamma;
mod group;
mod hom;

pub use blocks::{minimal_block_system, BlockSystem};
pub use coset::{Coset, CosetUnion};
pub use gamma::{composition_factor_orders, in_gamma_d};
pub use group::PermGroup;
pub use hom::{induced_action, restrict, Hom};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{argument, Result};

/// A permutation of `0..degree`, stored as its image array. Composition is
/// left-to-right: `a.compose(&b)` maps a point through `a` first, then `b`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl core::fmt::Debug for Perm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        // cycle notation is easier to eyeball in test failures
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() as u32 {
            if seen[start as usize] || self.image(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            loop {
                seen[p as usize] = true;
                write!(f, "{p}")?;
                p = self.image(p);
                if p == start {
                    break;
                }
                write!(f, " ")?;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || seen[x as usize] {
                return Err(argument("image array is not a permutation"));
            }
            seen[x as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Permutation from disjoint cycles over `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for w in cycle.windows(2) {
                images[w[0] as usize] = w[1];
            }
            if let (Some(&last), Some(&first)) = (cycle.last(), cycle.first()) {
                if cycle.len() > 1 {
                    images[last as usize] = first;
                }
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    /// Order of the permutation (lcm of its cycle lengths).
    pub fn order(&self) -> u128 {
        let mut seen = vec![false; self.images.len()];
        let mut result: u128 = 1;
        for start in 0..self.images.len() as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut len: u128 = 0;
            let mut p = start;
            loop {
                seen[p as usize] = true;
                len += 1;
                p = self.image(p);
                if p == start {
                    break;
                }
            }
            result = lcm(result, len);
        }
        result
    }

    /// Fixed points of the permutation.
    pub fn moves(&self, point: u32) -> bool {
        self.image(point) != point
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// Checks that two permutations act on the same domain.
pub(crate) fn check_degree(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(argument(format!("degree mismatch: {a} vs {b}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let ab = a.compose(&b);
        // 0 -> 1 under a, 1 -> 2 under b
        assert_eq!(ab.image(0), 2);
        assert_eq!(a.compose(&a.inverse()), Perm::identity(3));
    }

    #[test]
    fn cycle_parsing_and_order() {
        let g = Perm::from_cycles(6, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.image(4), 3);
        assert!(Perm::from_images(alloc::vec![0, 0, 1]).is_err());
    }
}
