//! Giant representations, affected points, and the desk-scale local
//! certificates routine.
//!
//! The routine grows a window of affected points while shrinking the group:
//! starting from the full group, each iteration replaces the group by the
//! window-restricted automorphisms (computed coset-by-coset over the kernel
//! of the representation, enumerating the image literally) and the window by
//! the points affected under the shrunken group. It stops when the image
//! drops below the alternating group (a non-fullness certificate) or the
//! window stops growing (fullness: the pointwise stabilizer of the window's
//! complement consists of automorphisms with a giant image).

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{argument, resource, Result};
use crate::perm::{Hom, Perm, PermGroup};
use crate::si::{apply_perm, luks_string_iso, GString, SIInstance};

const IMAGE_ENUMERATION_GUARD: u128 = 1_000_000;
const K_GUARD: usize = 10;

/// True iff the group on `k` points contains the alternating group, decided
/// by the order threshold `|G| >= k!/2` (a subgroup that large is the
/// alternating or symmetric group, since the index-2 subgroup of the
/// symmetric group is unique).
pub fn is_giant(group: &PermGroup) -> bool {
    let k = group.degree();
    let mut factorial = BigUint::from(1u32);
    for i in 1..=k as u64 {
        factorial *= BigUint::from(i);
    }
    group.order() * BigUint::from(2u32) >= factorial
}

/// A homomorphism onto a giant: the image contains the alternating group.
#[derive(Clone, Debug)]
pub struct GiantRep {
    hom: Hom,
}

impl GiantRep {
    pub fn new(hom: Hom) -> Result<Self> {
        if !is_giant(&hom.image()) {
            return Err(argument("image is not a giant"));
        }
        Ok(GiantRep { hom })
    }

    pub fn k(&self) -> usize {
        self.hom.target_degree()
    }

    pub fn hom(&self) -> &Hom {
        &self.hom
    }

    pub fn group(&self) -> &PermGroup {
        self.hom.source()
    }
}

/// Points whose stabilizer image fails to contain the alternating group.
/// Affectedness is orbit-constant, so one stabilizer per orbit is tested.
fn affected_under(hom: &Hom) -> Vec<u32> {
    let mut out = Vec::new();
    for orbit in hom.source().orbits() {
        let stab = hom.source_pointwise_stabilizer(&[orbit[0]]);
        if !is_giant(&stab.image()) {
            out.extend(orbit);
        }
    }
    out.sort_unstable();
    out
}

/// The affected points of a giant representation.
pub fn affected_points(rep: &GiantRep) -> Vec<u32> {
    affected_under(rep.hom())
}

/// Outcome of the local certificates routine.
#[derive(Debug)]
pub enum LocalCertificate {
    /// A non-giant group on the representation's target containing the image
    /// of the full automorphism group.
    NonFull { lambda: PermGroup },
    /// A subgroup of the automorphism group whose image is still a giant.
    Full { delta: PermGroup },
}

impl LocalCertificate {
    pub fn is_full(&self) -> bool {
        matches!(self, LocalCertificate::Full { .. })
    }
}

/// Local certificates for `x` under the giant representation, following the
/// affected-window iteration literally (the image group is enumerated
/// element by element, which is what confines this routine to desk scale).
pub fn local_certificates(x: &GString, rep: &GiantRep) -> Result<LocalCertificate> {
    let n = rep.group().degree();
    let k = rep.k();
    if x.domain_size() != n {
        return Err(argument("string domain does not match the group"));
    }
    let log2n = (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize;
    if k < 8.max(2 + log2n) {
        return Err(argument(format!(
            "local certificates need k >= max(8, 2 + log2 n); got k={k}, n={n}"
        )));
    }
    if k > K_GUARD {
        return Err(resource(format!("local certificates are desk-scale only (k <= {K_GUARD})")));
    }

    let mut current: Hom = rep.hom().clone();
    let mut window: Vec<u32> = Vec::new();
    for _round in 0..=n + 1 {
        let image = current.image();
        if !is_giant(&image) {
            // every automorphism lies in the current group, so its image is
            // confined to this non-giant
            return Ok(LocalCertificate::NonFull { lambda: image });
        }
        let affected = affected_under(&current);
        if affected == window {
            // fullness: fixing everything outside the window leaves genuine
            // automorphisms with a giant image
            let outside: Vec<u32> =
                (0..n as u32).filter(|p| window.binary_search(p).is_err()).collect();
            let stab = current.source_pointwise_stabilizer(&outside);
            let delta = stab.source().clone();
            for d in delta.generators() {
                if apply_perm(x, d)? != *x {
                    return Err(argument(
                        "fullness certificate contains a non-automorphism; \
                         the representation violates the routine's premises",
                    ));
                }
            }
            if !is_giant(&stab.image()) {
                return Err(argument(
                    "fullness certificate has a non-giant image; \
                     the representation violates the routine's premises",
                ));
            }
            return Ok(LocalCertificate::Full { delta });
        }
        window = affected;

        // rebuild the group as the window-restricted automorphisms, one
        // kernel coset per image element
        let kernel = current.kernel_hom();
        if image.order_le(IMAGE_ENUMERATION_GUARD).is_none() {
            return Err(resource(format!(
                "image enumeration exceeds the desk-scale guard {IMAGE_ENUMERATION_GUARD}"
            )));
        }
        let mut image_elements: Vec<Perm> = Vec::new();
        image.for_each_element_guarded(IMAGE_ENUMERATION_GUARD, &mut |b| {
            image_elements.push(b.clone());
            true
        })?;
        let mut pairs: Vec<(Perm, Perm)> = Vec::new();
        for b in &image_elements {
            let lifted = current.preimage(b).expect("image elements lift");
            let inst = SIInstance::new(
                x.clone(),
                x.clone(),
                kernel.source().clone(),
                lifted,
                window.clone(),
            )?;
            let coset = luks_string_iso(&inst)?;
            if let (Some(aut), Some(witness)) = (coset.group(), coset.rep()) {
                // automorphism parts lie in the kernel (image is trivial),
                // the witness maps to the enumerated image element
                for g in aut.generators() {
                    pairs.push((g.clone(), Perm::identity(k)));
                }
                pairs.push((witness.clone(), b.clone()));
            }
        }
        current = Hom::from_pairs_unchecked(n, k, pairs);
    }
    Err(resource("local certificates window failed to stabilize"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    /// Natural representation of S_n on itself.
    fn natural_rep(n: usize) -> GiantRep {
        let g = PermGroup::symmetric(n);
        let images = g.generators().to_vec();
        GiantRep::new(Hom::new(g, n, images).unwrap()).unwrap()
    }

    /// S_k x S_m acting on k + m points, projecting to the first factor.
    fn product_rep(k: usize, m: usize) -> GiantRep {
        let n = k + m;
        let mut pairs = Vec::new();
        for g in PermGroup::symmetric(k).generators() {
            let mut images: Vec<u32> = g.images().to_vec();
            images.extend(k as u32..n as u32);
            pairs.push((Perm::from_images(images).unwrap(), g.clone()));
        }
        for g in PermGroup::symmetric(m).generators() {
            let mut images: Vec<u32> = (0..k as u32).collect();
            images.extend(g.images().iter().map(|&x| x + k as u32));
            pairs.push((Perm::from_images(images).unwrap(), Perm::identity(k)));
        }
        GiantRep::new(Hom::from_pairs(n, k, pairs).unwrap()).unwrap()
    }

    #[test]
    fn giants_by_order_threshold() {
        assert!(is_giant(&PermGroup::symmetric(5)));
        assert!(is_giant(&PermGroup::alternating(5)));
        assert!(!is_giant(&PermGroup::dihedral(5))); // order 10 < 60
        assert!(is_giant(&PermGroup::trivial(2))); // A_2 is trivial
        assert!(!is_giant(&PermGroup::trivial(3)));
    }

    #[test]
    fn natural_action_affects_every_point() {
        let rep = natural_rep(8);
        assert_eq!(affected_points(&rep), (0..8).collect::<Vec<u32>>());
    }

    #[test]
    fn projection_leaves_the_second_factor_unaffected() {
        let rep = product_rep(8, 3);
        assert_eq!(affected_points(&rep), (0..8).collect::<Vec<u32>>());
    }

    #[test]
    fn affectedness_is_orbit_constant() {
        // check the definition point by point against the orbit-level answer
        let rep = product_rep(8, 3);
        let affected = affected_points(&rep);
        for p in 0..11u32 {
            let stab = rep.hom().source_pointwise_stabilizer(&[p]);
            let point_affected = !is_giant(&stab.image());
            assert_eq!(point_affected, affected.binary_search(&p).is_ok(), "point {p}");
        }
    }

    #[test]
    fn constant_string_is_full() {
        let rep = natural_rep(8);
        let x = GString::new(2, alloc::vec![1; 8]).unwrap();
        let cert = local_certificates(&x, &rep).unwrap();
        match cert {
            LocalCertificate::Full { delta } => {
                assert_eq!(delta.order(), PermGroup::symmetric(8).order());
            }
            LocalCertificate::NonFull { .. } => panic!("constant strings are full"),
        }
    }

    #[test]
    fn injective_string_is_non_full() {
        let rep = natural_rep(8);
        let x = GString::new(8, (0..8).collect()).unwrap();
        let cert = local_certificates(&x, &rep).unwrap();
        match cert {
            LocalCertificate::NonFull { lambda } => {
                assert!(!is_giant(&lambda));
                // the trivial automorphism group's image is contained in it
                assert_eq!(lambda.order(), BigUint::one());
            }
            LocalCertificate::Full { .. } => panic!("injective strings admit only the identity"),
        }
    }

    #[test]
    fn precondition_on_k_is_enforced() {
        let rep = natural_rep(5);
        let x = GString::new(2, alloc::vec![0; 5]).unwrap();
        assert!(local_certificates(&x, &rep).is_err());
    }
}
