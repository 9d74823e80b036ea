//! Permutation groups with a base and strong generating set.
//!
//! The BSGS is built by a deterministic incremental Schreier-Sims procedure:
//! base points are chosen as the smallest point (in a configurable priority
//! order) moved by the offending residual, Schreier generators are sifted
//! from the deepest level upwards, and orbits are rebuilt by breadth-first
//! closure in generator order. Construction is lazy and synchronized, so a
//! group shared across threads builds its index at most once per thread
//! winning the race.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use once_cell::race::OnceBox;

use crate::error::{argument, resource, Result};
use crate::perm::{check_degree, Perm};

pub(crate) struct Level {
    pub point: u32,
    pub gen_idx: Vec<usize>,
    /// Orbit of `point` in BFS discovery order.
    pub orbit: Vec<u32>,
    /// Transversal element per point: maps `point` to the indexed point.
    pub transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(degree: usize, point: u32) -> Self {
        let mut transversal = vec![None; degree];
        transversal[point as usize] = Some(Perm::identity(degree));
        Level { point, gen_idx: Vec::new(), orbit: vec![point], transversal }
    }
}

pub(crate) struct Bsgs {
    degree: usize,
    pub base: Vec<u32>,
    pub strong: Vec<Perm>,
    pub levels: Vec<Level>,
    priority: Vec<u32>,
}

impl Bsgs {
    pub fn build(degree: usize, gens: &[Perm], prefix: &[u32], priority: &[u32]) -> Bsgs {
        let mut bsgs = Bsgs {
            degree,
            base: prefix.to_vec(),
            strong: Vec::new(),
            levels: prefix.iter().map(|&p| Level::new(degree, p)).collect(),
            priority: priority.to_vec(),
        };
        for g in gens {
            if !g.is_identity() {
                bsgs.place(g.clone());
            }
        }
        for l in 0..bsgs.levels.len() {
            bsgs.rebuild_orbit(l);
        }
        let mut i = bsgs.levels.len() as isize - 1;
        while i >= 0 {
            match bsgs.check_level(i as usize) {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        bsgs
    }

    /// Adds a non-identity strong generator, extending the base if the
    /// element fixes every current base point.
    fn place(&mut self, g: Perm) -> usize {
        let mut l = 0;
        while l < self.levels.len() && !g.moves(self.levels[l].point) {
            l += 1;
        }
        if l == self.levels.len() {
            let beta = self
                .priority
                .iter()
                .copied()
                .find(|&p| g.moves(p))
                .expect("non-identity permutation moves some point");
            self.base.push(beta);
            self.levels.push(Level::new(self.degree, beta));
        }
        let idx = self.strong.len();
        self.strong.push(g);
        for k in 0..=l {
            self.levels[k].gen_idx.push(idx);
        }
        l
    }

    fn rebuild_orbit(&mut self, l: usize) {
        let point = self.levels[l].point;
        let mut level = Level::new(self.degree, point);
        level.gen_idx = self.levels[l].gen_idx.clone();
        let mut head = 0;
        while head < level.orbit.len() {
            let alpha = level.orbit[head];
            head += 1;
            for &gi in &level.gen_idx {
                let g = &self.strong[gi];
                let beta = g.image(alpha);
                if level.transversal[beta as usize].is_none() {
                    let t = level.transversal[alpha as usize]
                        .as_ref()
                        .expect("orbit point has a transversal element")
                        .compose(g);
                    level.transversal[beta as usize] = Some(t);
                    level.orbit.push(beta);
                }
            }
        }
        self.levels[l] = level;
    }

    /// Verifies the Schreier generators of one level; on failure installs the
    /// residual and reports the level to resume from.
    fn check_level(&mut self, l: usize) -> Option<usize> {
        self.rebuild_orbit(l);
        for oi in 0..self.levels[l].orbit.len() {
            for gi in 0..self.levels[l].gen_idx.len() {
                let alpha = self.levels[l].orbit[oi];
                let g = &self.strong[self.levels[l].gen_idx[gi]];
                let t_alpha = self.levels[l].transversal[alpha as usize].as_ref().unwrap();
                let beta = g.image(alpha);
                let t_beta = self.levels[l].transversal[beta as usize].as_ref().unwrap();
                let schreier = t_alpha.compose(g).compose(&t_beta.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (residual, stuck) = self.sift_from(schreier, l + 1);
                if !residual.is_identity() {
                    let placed = self.place(residual);
                    debug_assert_eq!(placed, stuck);
                    for k in (0..=placed.min(self.levels.len() - 1)).rev() {
                        self.rebuild_orbit(k);
                    }
                    return Some(placed);
                }
            }
        }
        None
    }

    /// Sifts `g` through levels `from..`, returning the residual and the
    /// level at which sifting stopped.
    pub fn sift_from(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let alpha = g.image(self.levels[l].point);
            match &self.levels[l].transversal[alpha as usize] {
                None => return (g, l),
                Some(t) => g = g.compose(&t.inverse()),
            }
        }
        let stuck = self.levels.len();
        (g, stuck)
    }

    pub fn order(&self) -> BigUint {
        let mut o = BigUint::one();
        for level in &self.levels {
            o *= BigUint::from(level.orbit.len());
        }
        o
    }

    /// Strong generators fixing the first `l` base points pointwise.
    pub fn level_generators(&self, l: usize) -> Vec<Perm> {
        if l >= self.levels.len() {
            return Vec::new();
        }
        self.levels[l].gen_idx.iter().map(|&i| self.strong[i].clone()).collect()
    }

    /// Visits every element in lexicographic transversal order (outermost
    /// key: the image of the first base point); the visitor returns `false`
    /// to stop early. Returns `false` on early stop.
    pub fn for_each_element(&self, f: &mut dyn FnMut(&Perm) -> bool) -> bool {
        let id = Perm::identity(self.degree);
        self.enumerate_level(0, &id, f)
    }

    fn enumerate_level(&self, l: usize, right: &Perm, f: &mut dyn FnMut(&Perm) -> bool) -> bool {
        if l == self.levels.len() {
            return f(right);
        }
        let level = &self.levels[l];
        let mut orbit = level.orbit.clone();
        orbit.sort_unstable();
        for alpha in orbit {
            let t = level.transversal[alpha as usize].as_ref().unwrap();
            // deeper levels apply first, so this transversal element goes on
            // the left of everything chosen so far
            let combined = t.compose(right);
            if !self.enumerate_level(l + 1, &combined, f) {
                return false;
            }
        }
        true
    }
}

/// A permutation group given by generators, with a lazily built BSGS.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    index: OnceBox<Bsgs>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup::new_unchecked(self.degree, self.gens.clone())
    }
}

impl core::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "PermGroup(degree {}, {} gens)", self.degree, self.gens.len())
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            check_degree(g.degree(), degree)?;
        }
        Ok(Self::new_unchecked(degree, gens))
    }

    pub(crate) fn new_unchecked(degree: usize, gens: Vec<Perm>) -> Self {
        // drop identities and duplicates, preserving first-occurrence order so
        // that generator lists stay aligned with caller-side data
        let mut seen = alloc::collections::BTreeSet::new();
        let gens: Vec<Perm> = gens
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        PermGroup { degree, gens, index: OnceBox::new() }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new_unchecked(degree, Vec::new())
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Perm::from_cycles(degree, &[&[0, 1]]).unwrap());
        }
        if degree >= 3 {
            let cycle: Vec<u32> = (0..degree as u32).collect();
            gens.push(Perm::from_cycles(degree, &[&cycle]).unwrap());
        }
        Self::new_unchecked(degree, gens)
    }

    pub fn alternating(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 3 {
            gens.push(Perm::from_cycles(degree, &[&[0, 1, 2]]).unwrap());
            if degree > 3 {
                let cycle: Vec<u32> = if degree % 2 == 1 {
                    (0..degree as u32).collect()
                } else {
                    (1..degree as u32).collect()
                };
                gens.push(Perm::from_cycles(degree, &[&cycle]).unwrap());
            }
        }
        Self::new_unchecked(degree, gens)
    }

    pub fn cyclic(degree: usize) -> Self {
        let cycle: Vec<u32> = (0..degree as u32).collect();
        Self::new_unchecked(degree, vec![Perm::from_cycles(degree, &[&cycle]).unwrap()])
    }

    /// Dihedral group of the n-gon on `degree` vertices.
    pub fn dihedral(degree: usize) -> Self {
        let n = degree as u32;
        let cycle: Vec<u32> = (0..n).collect();
        let rot = Perm::from_cycles(degree, &[&cycle]).unwrap();
        let refl = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        Self::new_unchecked(degree, vec![rot, refl])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub(crate) fn bsgs(&self) -> &Bsgs {
        self.index.get_or_init(|| {
            let priority: Vec<u32> = (0..self.degree as u32).collect();
            Box::new(Bsgs::build(self.degree, &self.gens, &[], &priority))
        })
    }

    /// Exact group order.
    pub fn order(&self) -> BigUint {
        self.bsgs().order()
    }

    /// Group order if it does not exceed `limit`.
    pub fn order_le(&self, limit: u128) -> Option<u128> {
        let mut o: u128 = 1;
        for level in &self.bsgs().levels {
            o = o.checked_mul(level.orbit.len() as u128)?;
            if o > limit {
                return None;
            }
        }
        Some(o)
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &Perm) -> Result<bool> {
        check_degree(g.degree(), self.degree)?;
        let (residual, _) = self.bsgs().sift_from(g.clone(), 0);
        Ok(residual.is_identity())
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    /// Orbit partition, classes sorted by minimum element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut parent: Vec<u32> = (0..self.degree as u32).collect();
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
        for g in &self.gens {
            for p in 0..self.degree as u32 {
                let (a, b) = (find(&mut parent, p), find(&mut parent, g.image(p)));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        let mut classes: Vec<Vec<u32>> = vec![Vec::new(); self.degree];
        for p in 0..self.degree as u32 {
            classes[find(&mut parent, p) as usize].push(p);
        }
        classes.retain(|c| !c.is_empty());
        classes
    }

    /// Orbit of a single point, sorted.
    pub fn orbit_of(&self, point: u32) -> Vec<u32> {
        let mut orbit = vec![point];
        let mut seen = vec![false; self.degree];
        seen[point as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let alpha = orbit[head];
            head += 1;
            for g in &self.gens {
                let beta = g.image(alpha);
                if !seen[beta as usize] {
                    seen[beta as usize] = true;
                    orbit.push(beta);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Checks that `set` is a union of orbits.
    pub fn is_invariant(&self, set: &[u32]) -> bool {
        let mut member = vec![false; self.degree];
        for &p in set {
            member[p as usize] = true;
        }
        set.iter().all(|&p| self.gens.iter().all(|g| member[g.image(p) as usize]))
    }

    /// True if the group acts transitively on the invariant set `w`.
    pub fn is_transitive_on(&self, w: &[u32]) -> Result<bool> {
        if !self.is_invariant(w) {
            return Err(argument("set is not invariant under the group"));
        }
        match w.first() {
            None => Ok(true),
            Some(&p) => {
                let orbit = self.orbit_of(p);
                Ok(orbit.len() == w.len())
            }
        }
    }

    /// Generating set for the pointwise stabilizer of `points`, computed from
    /// a BSGS whose base starts with exactly those points.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermGroup {
        let priority: Vec<u32> = (0..self.degree as u32).collect();
        let bsgs = Bsgs::build(self.degree, &self.gens, points, &priority);
        PermGroup::new_unchecked(self.degree, bsgs.level_generators(points.len()))
    }

    /// Stabilizer of a single point.
    pub fn stabilizer(&self, point: u32) -> PermGroup {
        self.pointwise_stabilizer(&[point])
    }

    /// Visits all elements in transversal-lexicographic order while the
    /// visitor returns `true`. Errors out if the order exceeds `limit`.
    pub fn for_each_element_guarded(
        &self,
        limit: u128,
        f: &mut dyn FnMut(&Perm) -> bool,
    ) -> Result<()> {
        if self.order_le(limit).is_none() {
            return Err(resource(format!("group order exceeds enumeration guard {limit}")));
        }
        self.bsgs().for_each_element(f);
        Ok(())
    }

    /// All elements, guarded.
    pub fn elements(&self, limit: u128) -> Result<Vec<Perm>> {
        let mut out = Vec::new();
        self.for_each_element_guarded(limit, &mut |g| {
            out.push(g.clone());
            true
        })?;
        Ok(out)
    }

    /// Sifts and reports whether the element factors through the BSGS,
    /// exposing the residual for diagnostics.
    pub fn sift(&self, g: &Perm) -> Perm {
        self.bsgs().sift_from(g.clone(), 0).0
    }

    /// Number of strong generators currently indexed.
    pub fn strong_generator_count(&self) -> usize {
        self.bsgs().strong.len()
    }

    /// The strong generating set, a generating set of size at most quadratic
    /// in the degree; useful to shrink a bloated generator list.
    pub fn reduced_generators(&self) -> Vec<Perm> {
        self.bsgs().strong.clone()
    }

    pub fn base(&self) -> Vec<u32> {
        self.bsgs().base.clone()
    }
}
