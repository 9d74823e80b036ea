//! Homomorphisms between permutation groups, given by generator images.
//!
//! A homomorphism is carried by the combined action on the disjoint union of
//! target and source domains (target points first). Kernels are pointwise
//! stabilizers of the target part, preimages are found by sifting through a
//! BSGS whose base runs through the target part first, and evaluation sifts
//! through a source-first BSGS. Well-definedness is checked exactly: the
//! combined group must have the same order as the source.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::error::{argument, Result};
use crate::perm::group::{Bsgs, PermGroup};
use crate::perm::{check_degree, BlockSystem, Perm};

pub struct Hom {
    source: PermGroup,
    target_degree: usize,
    images: Vec<Perm>,
    combined_gens: Vec<Perm>,
    target_first: OnceBox<Bsgs>,
    source_first: OnceBox<Bsgs>,
}

impl core::fmt::Debug for Hom {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Hom(degree {} -> {})", self.source.degree(), self.target_degree)
    }
}

fn combine(target_degree: usize, image: &Perm, source_gen: &Perm) -> Perm {
    let k = target_degree as u32;
    let mut images: Vec<u32> = Vec::with_capacity(target_degree + source_gen.degree());
    images.extend(image.images().iter().copied());
    images.extend(source_gen.images().iter().map(|&x| x + k));
    Perm::from_images(images).expect("combining two permutations yields a permutation")
}

fn target_part(combined: &Perm, target_degree: usize) -> Perm {
    Perm::from_images(combined.images()[..target_degree].to_vec())
        .expect("target block of a combined permutation is a permutation")
}

fn source_part(combined: &Perm, target_degree: usize) -> Perm {
    let k = target_degree as u32;
    Perm::from_images(combined.images()[target_degree..].iter().map(|&x| x - k).collect())
        .expect("source block of a combined permutation is a permutation")
}

impl Clone for Hom {
    fn clone(&self) -> Self {
        Hom {
            source: self.source.clone(),
            target_degree: self.target_degree,
            images: self.images.clone(),
            combined_gens: self.combined_gens.clone(),
            target_first: OnceBox::new(),
            source_first: OnceBox::new(),
        }
    }
}

impl Hom {
    /// Builds the homomorphism mapping `source.generators()[i]` to
    /// `images[i]`, verifying it is well-defined.
    pub fn new(source: PermGroup, target_degree: usize, images: Vec<Perm>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(argument("need exactly one image per generator"));
        }
        let pairs = source.generators().iter().cloned().zip(images).collect();
        Self::from_pairs(source.degree(), target_degree, pairs)
    }

    /// Builds the homomorphism from explicit `(generator, image)` pairs; the
    /// source group is generated by the pair generators.
    pub fn from_pairs(
        source_degree: usize,
        target_degree: usize,
        pairs: Vec<(Perm, Perm)>,
    ) -> Result<Self> {
        let mut gens = Vec::with_capacity(pairs.len());
        let mut images = Vec::with_capacity(pairs.len());
        let mut seen = alloc::collections::BTreeSet::new();
        for (g, im) in pairs {
            check_degree(g.degree(), source_degree)?;
            check_degree(im.degree(), target_degree)?;
            if g.is_identity() {
                if !im.is_identity() {
                    return Err(argument("identity generator mapped to a non-identity image"));
                }
                continue;
            }
            if seen.insert(g.clone()) {
                gens.push(g);
                images.push(im);
            }
        }
        let source = PermGroup::new_unchecked(source_degree, gens);
        debug_assert_eq!(source.generators().len(), images.len());
        let combined_gens: Vec<Perm> = source
            .generators()
            .iter()
            .zip(&images)
            .map(|(g, im)| combine(target_degree, im, g))
            .collect();
        let hom = Hom {
            source,
            target_degree,
            images,
            combined_gens,
            target_first: OnceBox::new(),
            source_first: OnceBox::new(),
        };
        // the map extends to a homomorphism iff no combined element acts
        // trivially on the source while moving the target
        let combined_order = hom.tf().order();
        if combined_order != hom.source.order() {
            return Err(argument("generator images do not define a homomorphism"));
        }
        Ok(hom)
    }

    fn combined_degree(&self) -> usize {
        self.target_degree + self.source.degree()
    }

    /// BSGS of the combined group with the full target domain as base prefix.
    fn tf(&self) -> &Bsgs {
        self.target_first.get_or_init(|| {
            let prefix: Vec<u32> = (0..self.target_degree as u32).collect();
            let priority: Vec<u32> = (0..self.combined_degree() as u32).collect();
            Box::new(Bsgs::build(self.combined_degree(), &self.combined_gens, &prefix, &priority))
        })
    }

    /// BSGS of the combined group with the full source domain as base prefix.
    fn sf(&self) -> &Bsgs {
        self.source_first.get_or_init(|| {
            let prefix: Vec<u32> =
                (self.target_degree as u32..self.combined_degree() as u32).collect();
            let priority: Vec<u32> = (0..self.combined_degree() as u32).collect();
            Box::new(Bsgs::build(self.combined_degree(), &self.combined_gens, &prefix, &priority))
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target_degree(&self) -> usize {
        self.target_degree
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.images
    }

    /// The image group.
    pub fn image(&self) -> PermGroup {
        PermGroup::new_unchecked(self.target_degree, self.images.clone())
    }

    /// Generating set of the kernel.
    pub fn kernel(&self) -> PermGroup {
        let bsgs = self.tf();
        let gens = bsgs.level_generators(self.target_degree);
        let source_gens: Vec<Perm> = gens
            .iter()
            .map(|g| {
                debug_assert!(target_part(g, self.target_degree).is_identity());
                source_part(g, self.target_degree)
            })
            .collect();
        PermGroup::new_unchecked(self.source.degree(), source_gens)
    }

    /// Evaluates the homomorphism on an arbitrary element of the source.
    pub fn apply(&self, gamma: &Perm) -> Result<Perm> {
        check_degree(gamma.degree(), self.source.degree())?;
        let bsgs = self.sf();
        let k = self.target_degree as u32;
        let mut residual = gamma.clone();
        let mut used: Vec<&Perm> = Vec::new();
        for level in &bsgs.levels {
            if level.point < k {
                break; // past the source prefix
            }
            let alpha = residual.image(level.point - k) + k;
            match &level.transversal[alpha as usize] {
                None => return Err(argument("element is not in the source group")),
                Some(t) => {
                    residual = residual.compose(&source_part(t, self.target_degree).inverse());
                    used.push(t);
                }
            }
        }
        if !residual.is_identity() {
            return Err(argument("element is not in the source group"));
        }
        let mut out = Perm::identity(self.target_degree);
        for t in used.iter().rev() {
            out = out.compose(&target_part(t, self.target_degree));
        }
        Ok(out)
    }

    fn split_combined_pairs(&self, combined: Vec<Perm>) -> Vec<(Perm, Perm)> {
        combined
            .into_iter()
            .map(|c| (source_part(&c, self.target_degree), target_part(&c, self.target_degree)))
            .collect()
    }

    /// Restriction of the homomorphism to the subgroup fixing the given
    /// source points pointwise.
    pub fn source_pointwise_stabilizer(&self, points: &[u32]) -> Hom {
        let k = self.target_degree as u32;
        let prefix: Vec<u32> = points.iter().map(|&p| p + k).collect();
        let priority: Vec<u32> = (0..self.combined_degree() as u32).collect();
        let bsgs = Bsgs::build(self.combined_degree(), &self.combined_gens, &prefix, &priority);
        let pairs = self.split_combined_pairs(bsgs.level_generators(points.len()));
        Hom::from_pairs_unchecked(self.source.degree(), self.target_degree, pairs)
    }

    /// Restriction of the homomorphism to the kernel (whose images are all
    /// trivial, keeping the tracking shape).
    pub fn kernel_hom(&self) -> Hom {
        let kernel = self.kernel();
        let id = Perm::identity(self.target_degree);
        let pairs = kernel.generators().iter().map(|g| (g.clone(), id.clone())).collect();
        Hom::from_pairs_unchecked(self.source.degree(), self.target_degree, pairs)
    }

    /// Builds a hom from pairs that are already known consistent (subgroup
    /// restrictions of an existing hom); skips the order verification.
    pub(crate) fn from_pairs_unchecked(
        source_degree: usize,
        target_degree: usize,
        pairs: Vec<(Perm, Perm)>,
    ) -> Hom {
        let mut gens = Vec::with_capacity(pairs.len());
        let mut images = Vec::with_capacity(pairs.len());
        let mut seen = alloc::collections::BTreeSet::new();
        for (g, im) in pairs {
            if g.is_identity() {
                continue;
            }
            if seen.insert(g.clone()) {
                gens.push(g);
                images.push(im);
            }
        }
        let source = PermGroup::new_unchecked(source_degree, gens);
        let combined_gens: Vec<Perm> = source
            .generators()
            .iter()
            .zip(&images)
            .map(|(g, im)| combine(target_degree, im, g))
            .collect();
        Hom {
            source,
            target_degree,
            images,
            combined_gens,
            target_first: OnceBox::new(),
            source_first: OnceBox::new(),
        }
    }

    /// Finds any source element mapping to `delta`, if one exists.
    pub fn preimage(&self, delta: &Perm) -> Option<Perm> {
        if delta.degree() != self.target_degree {
            return None;
        }
        let bsgs = self.tf();
        let k = self.target_degree as u32;
        let mut residual = delta.clone();
        let mut used: Vec<&Perm> = Vec::new();
        for level in &bsgs.levels {
            if level.point >= k {
                break; // past the target prefix
            }
            let alpha = residual.image(level.point);
            match &level.transversal[alpha as usize] {
                None => return None,
                Some(t) => {
                    residual = residual.compose(&target_part(t, self.target_degree).inverse());
                    used.push(t);
                }
            }
        }
        if !residual.is_identity() {
            return None;
        }
        let mut out = Perm::identity(self.source.degree());
        for t in used.iter().rev() {
            out = out.compose(&source_part(t, self.target_degree));
        }
        Some(out)
    }
}

/// The action of the group on the blocks of a system, as a homomorphism and
/// its image.
pub fn induced_action(group: &PermGroup, system: &BlockSystem) -> Result<(Hom, PermGroup)> {
    let nb = system.num_blocks();
    let mut images = Vec::with_capacity(group.generators().len());
    for g in group.generators() {
        let mut image = vec![u32::MAX; nb];
        for (bi, block) in system.blocks().iter().enumerate() {
            let target = system
                .block_of(g.image(block[0]))
                .ok_or_else(|| argument("block image leaves the system"))?;
            for &p in block {
                if system.block_of(g.image(p)) != Some(target) {
                    return Err(argument("blocks are not permuted setwise"));
                }
            }
            image[bi] = target as u32;
        }
        images.push(Perm::from_images(image)?);
    }
    let hom = Hom::new(group.clone(), nb, images)?;
    let image = hom.image();
    Ok((hom, image))
}

/// Restriction of the group to an invariant set; point `w[i]` becomes `i`.
pub fn restrict(group: &PermGroup, w: &[u32]) -> Result<PermGroup> {
    let mut w = w.to_vec();
    w.sort_unstable();
    w.dedup();
    if !group.is_invariant(&w) {
        return Err(argument("set is not invariant under the group"));
    }
    let local = |p: u32| w.binary_search(&p).unwrap() as u32;
    let gens: Vec<Perm> = group
        .generators()
        .iter()
        .map(|g| Perm::from_images(w.iter().map(|&p| local(g.image(p))).collect()).unwrap())
        .collect();
    PermGroup::new(w.len(), gens)
}
