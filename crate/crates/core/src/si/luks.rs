//! Luks's recursive algorithm for the String Isomorphism Problem.
//!
//! The three mechanisms, straight from the recursion structure:
//! a non-trivial shift is folded into the right-hand string
//! (`Iso_{Gg}^W(x,y) = Iso_G^W(x, y^(g^-1)) . g`); an intransitive window is
//! processed orbit by orbit, threading the shrinking coset through the
//! orbits; a transitive window is decomposed through a minimal block system,
//! recursing on the blockwise stabilizer over every coset of a transversal
//! and merging the sub-answers into one coset.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{argument, resource, Result};
use crate::perm::{induced_action, minimal_block_system, Coset, CosetUnion, Perm, PermGroup};
use crate::si::{apply_perm, GString, SIInstance};

/// Transversal enumerations larger than this indicate a runaway primitive
/// group at desk scale.
const TRANSVERSAL_GUARD: u128 = 5_000_000;

/// Computes the coset of all elements of `group . shift` mapping `x` onto
/// `y` on the window.
pub fn luks_string_iso(inst: &SIInstance) -> Result<Coset> {
    if !inst.group.is_invariant(&inst.window) {
        return Err(argument("window is not invariant under the group"));
    }
    let n = inst.group.degree();
    let depth_guard = 16 + 10 * (usize::BITS - n.leading_zeros()) as usize;
    let mut ctx = Ctx { depth_guard, deepest: 0 };
    rec(&mut ctx, &inst.x, &inst.y, &inst.group, &inst.shift, &inst.window, 0)
}

struct Ctx {
    depth_guard: usize,
    deepest: usize,
}

fn rec(
    ctx: &mut Ctx,
    x: &GString,
    y: &GString,
    group: &PermGroup,
    shift: &Perm,
    window: &[u32],
    depth: usize,
) -> Result<Coset> {
    ctx.deepest = ctx.deepest.max(depth);
    if depth > ctx.depth_guard {
        return Err(resource(format!(
            "string isomorphism recursion exceeded depth {} (window {}, degree {}); \
             this indicates a window-invariance bug",
            ctx.depth_guard,
            window.len(),
            group.degree()
        )));
    }
    let n = group.degree();

    // fold the shift into the right-hand string
    if !shift.is_identity() {
        let aligned = apply_perm(y, &shift.inverse())?;
        let sub = rec(ctx, x, &aligned, group, &Perm::identity(n), window, depth + 1)?;
        return Ok(sub.mul_perm(shift));
    }

    if window.is_empty() {
        return Ok(Coset::full(group.clone()));
    }
    if window.len() == 1 {
        let alpha = window[0];
        return Ok(if x.value(alpha) == y.value(alpha) {
            Coset::full(group.clone())
        } else {
            Coset::empty(n)
        });
    }

    let orbits = orbits_on(group, window);
    if orbits.len() > 1 {
        // orbit-by-orbit processing: thread the shrinking coset
        let mut current = Coset::full(group.clone());
        for orbit in &orbits {
            let (g, r) = match (current.group(), current.rep()) {
                (Some(g), Some(r)) => (g.clone(), r.clone()),
                _ => return Ok(Coset::empty(n)),
            };
            current = rec(ctx, x, y, &g, &r, orbit, depth + 1)?;
            if current.is_empty() {
                return Ok(Coset::empty(n));
            }
        }
        return Ok(current);
    }

    // transitive on the window: standard Luks reduction
    let system = minimal_block_system(group, window)?;
    let (hom, block_image) = induced_action(group, &system)?;
    let blockwise = hom.kernel();
    if block_image.order_le(TRANSVERSAL_GUARD).is_none() {
        return Err(resource(format!(
            "transversal of size {} exceeds the desk-scale guard",
            block_image.order()
        )));
    }
    let mut transversal: Vec<Perm> = Vec::new();
    block_image.for_each_element_guarded(TRANSVERSAL_GUARD, &mut |b| {
        transversal.push(hom.preimage(b).expect("image elements lift through the action"));
        true
    })?;
    let mut union = CosetUnion::new(n);
    for delta in &transversal {
        let sub = rec(ctx, x, y, &blockwise, delta, window, depth + 1)?;
        union.add(&sub);
    }
    Ok(union.finish())
}

/// Orbits of the group on an invariant subset, sorted by minimum element.
fn orbits_on(group: &PermGroup, window: &[u32]) -> Vec<Vec<u32>> {
    let mut remaining: alloc::collections::BTreeSet<u32> = window.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        let orbit = group.orbit_of(start);
        for p in &orbit {
            remaining.remove(p);
        }
        out.push(orbit);
    }
    out
}
