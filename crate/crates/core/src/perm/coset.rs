//! Right cosets `Aut . rep`, the answer shape of string isomorphism.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Result;
use crate::perm::{check_degree, Perm, PermGroup};

/// Either the empty set or a coset `group . rep` of a permutation group.
#[derive(Clone, Debug)]
pub struct Coset {
    degree: usize,
    inner: Option<(PermGroup, Perm)>,
}

impl Coset {
    pub fn empty(degree: usize) -> Self {
        Coset { degree, inner: None }
    }

    pub fn new(group: PermGroup, rep: Perm) -> Result<Self> {
        check_degree(group.degree(), rep.degree())?;
        Ok(Coset { degree: rep.degree(), inner: Some((group, rep)) })
    }

    /// The full group as a coset of itself.
    pub fn full(group: PermGroup) -> Self {
        let id = Perm::identity(group.degree());
        Coset { degree: group.degree(), inner: Some((group, id)) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_none()
    }

    pub fn group(&self) -> Option<&PermGroup> {
        self.inner.as_ref().map(|(g, _)| g)
    }

    pub fn rep(&self) -> Option<&Perm> {
        self.inner.as_ref().map(|(_, r)| r)
    }

    /// Number of elements (zero for the empty coset).
    pub fn order(&self) -> BigUint {
        match &self.inner {
            None => BigUint::zero(),
            Some((g, _)) => g.order(),
        }
    }

    /// Membership: `x` is in `group . rep` iff `x . rep^-1` sifts to the
    /// identity.
    pub fn contains(&self, x: &Perm) -> Result<bool> {
        check_degree(x.degree(), self.degree)?;
        match &self.inner {
            None => Ok(false),
            Some((g, rep)) => g.contains(&x.compose(&rep.inverse())),
        }
    }

    /// Right-multiplies the coset by a fixed permutation.
    pub fn mul_perm(&self, gamma: &Perm) -> Coset {
        match &self.inner {
            None => Coset::empty(self.degree),
            Some((g, rep)) => Coset { degree: self.degree, inner: Some((g.clone(), rep.compose(gamma))) },
        }
    }

    /// All elements, guarded by the enumeration limit.
    pub fn elements(&self, limit: u128) -> Result<Vec<Perm>> {
        match &self.inner {
            None => Ok(Vec::new()),
            Some((g, rep)) => {
                let mut out = Vec::new();
                g.for_each_element_guarded(limit, &mut |e| {
                    out.push(e.compose(rep));
                    true
                })?;
                Ok(out)
            }
        }
    }
}

/// Accumulates a union of cosets that is known to be a coset itself (the
/// situation in Luks's recursion): generators of each part plus the
/// difference products `rep_i . rep_1^-1` generate the union's group.
pub struct CosetUnion {
    degree: usize,
    gens: Vec<Perm>,
    rep: Option<Perm>,
}

impl CosetUnion {
    pub fn new(degree: usize) -> Self {
        CosetUnion { degree, gens: Vec::new(), rep: None }
    }

    pub fn add(&mut self, part: &Coset) {
        let Some((group, rep)) = &part.inner else {
            return;
        };
        self.gens.extend_from_slice(group.generators());
        match &self.rep {
            None => self.rep = Some(rep.clone()),
            Some(base) => self.gens.push(rep.compose(&base.inverse())),
        }
    }

    pub fn finish(self) -> Coset {
        match self.rep {
            None => Coset::empty(self.degree),
            Some(rep) => Coset {
                degree: self.degree,
                inner: Some((PermGroup::new_unchecked(self.degree, self.gens), rep)),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_and_order() {
        let g = PermGroup::cyclic(4);
        let shift = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let coset = Coset::new(g, shift.clone()).unwrap();
        assert_eq!(coset.order(), BigUint::from(4u32));
        assert!(coset.contains(&shift).unwrap());
        // (0 1 2 3)(0 1) is in the coset
        let rot = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert!(coset.contains(&rot.compose(&shift)).unwrap());
        assert!(!coset.contains(&Perm::identity(4)).unwrap());
        assert!(Coset::empty(4).contains(&shift).unwrap() == false);
    }

    #[test]
    fn union_of_cosets_of_a_common_group() {
        // the union of A_3 . id and A_3 . (0 1) inside S_3 is all of S_3
        let a3 = PermGroup::alternating(3);
        let mut union = CosetUnion::new(3);
        union.add(&Coset::full(a3.clone()));
        union.add(&Coset::new(a3, Perm::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap());
        let merged = union.finish();
        assert_eq!(merged.order(), BigUint::from(6u32));
        assert!(merged.contains(&Perm::identity(3)).unwrap());
    }
}
