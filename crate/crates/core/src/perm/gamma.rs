//! Desk-scale composition factors and membership in the class of groups
//! whose composition factors all embed in S_d.
//!
//! Factors are found by repeatedly splitting off a minimal normal subgroup
//! (the smallest normal closure of a prime-order class representative) and
//! recursing into the subgroup and the quotient, everything by explicit
//! enumeration. Simple factors are recognized by order, with the one
//! order-ambiguous case (20160) separated by element orders.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{argument, resource, Result};
use crate::perm::{Perm, PermGroup};

const ORDER_GUARD: u128 = 200_000;
const DEGREE_GUARD: usize = 30;

/// Order and largest element order of one composition factor; enough to
/// identify the desk-scale simple groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorEvidence {
    pub order: u128,
    pub max_element_order: u128,
}

fn enumerate(group: &PermGroup) -> Result<Vec<Perm>> {
    group.elements(ORDER_GUARD)
}

/// Normal closure of `g` inside the group generated by `gens`, as an element
/// set: conjugates of `g` closed under multiplication.
fn normal_closure(degree: usize, gens: &[Perm], g: &Perm) -> BTreeSet<Perm> {
    let mut conj: BTreeSet<Perm> = BTreeSet::new();
    let mut queue = vec![g.clone()];
    conj.insert(g.clone());
    while let Some(x) = queue.pop() {
        for h in gens {
            let y = h.inverse().compose(&x).compose(h);
            if conj.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    // close the conjugate set under multiplication
    let mut set: BTreeSet<Perm> = conj.clone();
    set.insert(Perm::identity(degree));
    let mut frontier: Vec<Perm> = set.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for c in &conj {
            let y = x.compose(c);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// A minimal normal subgroup as an element set, or `None` for the trivial
/// group. Every minimal normal subgroup is the normal closure of any of its
/// prime-order elements, so prime-order class representatives are the only
/// candidates that need closing.
fn minimal_normal_subgroup(group: &PermGroup, elements: &[Perm]) -> Option<BTreeSet<Perm>> {
    if elements.len() <= 1 {
        return None;
    }
    let gens = group.generators();
    // one representative per conjugacy class, by conjugation orbits
    let mut classified: BTreeSet<Perm> = BTreeSet::new();
    let mut reps: Vec<Perm> = Vec::new();
    for e in elements {
        if classified.contains(e) {
            continue;
        }
        reps.push(e.clone());
        let mut queue = vec![e.clone()];
        classified.insert(e.clone());
        while let Some(x) = queue.pop() {
            for h in gens {
                let y = h.inverse().compose(&x).compose(h);
                if classified.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
    }
    let mut best: Option<BTreeSet<Perm>> = None;
    for rep in &reps {
        if rep.is_identity() {
            continue;
        }
        let order = rep.order();
        // reduce to a prime-order power of the representative
        let prime = smallest_prime_factor(order);
        let power = order / prime;
        let mut prime_power = rep.clone();
        for _ in 1..power {
            prime_power = prime_power.compose(rep);
        }
        if prime_power.is_identity() {
            continue;
        }
        let closure = normal_closure(group.degree(), gens, &prime_power);
        if best.as_ref().map_or(true, |b| closure.len() < b.len()) {
            best = Some(closure);
        }
    }
    best
}

fn smallest_prime_factor(n: u128) -> u128 {
    if n % 2 == 0 {
        return 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 2;
    }
    n
}

/// Quotient of the group by a normal subgroup given as an element set, as a
/// permutation group acting on the right cosets.
fn quotient_group(group: &PermGroup, normal: &BTreeSet<Perm>) -> Result<PermGroup> {
    let coset_rep = |x: &Perm| -> Perm {
        normal.iter().map(|n| n.compose(x)).min().expect("normal subgroup is non-empty")
    };
    let id_rep = coset_rep(&Perm::identity(group.degree()));
    let mut reps: Vec<Perm> = vec![id_rep.clone()];
    let mut index: BTreeMap<Perm, u32> = BTreeMap::new();
    index.insert(id_rep, 0);
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        head += 1;
        for g in group.generators() {
            let s = coset_rep(&r.compose(g));
            if !index.contains_key(&s) {
                index.insert(s.clone(), reps.len() as u32);
                reps.push(s);
            }
        }
    }
    let images: Vec<Perm> = group
        .generators()
        .iter()
        .map(|g| {
            let image: Vec<u32> = reps.iter().map(|r| index[&coset_rep(&r.compose(g))]).collect();
            Perm::from_images(image).expect("coset action is a permutation")
        })
        .collect();
    PermGroup::new(reps.len(), images)
}

fn factors_rec(group: &PermGroup, out: &mut Vec<FactorEvidence>) -> Result<()> {
    let elements = enumerate(group)?;
    if elements.len() == 1 {
        return Ok(());
    }
    let normal = minimal_normal_subgroup(group, &elements).expect("non-trivial group");
    if normal.len() == elements.len() {
        // simple
        let max_order = elements.iter().map(|e| e.order()).max().unwrap();
        out.push(FactorEvidence { order: elements.len() as u128, max_element_order: max_order });
        return Ok(());
    }
    // recurse into the subgroup, generated by its reduced strong generators
    let sub = PermGroup::new_unchecked(group.degree(), normal.iter().cloned().collect());
    let sub = PermGroup::new_unchecked(group.degree(), sub.reduced_generators());
    factors_rec(&sub, out)?;
    let quot = quotient_group(group, &normal)?;
    factors_rec(&quot, out)
}

/// Multiset of composition factor orders (with element-order evidence),
/// sorted by order.
pub fn composition_factors(group: &PermGroup) -> Result<Vec<FactorEvidence>> {
    if group.degree() > DEGREE_GUARD {
        return Err(resource(format!(
            "composition factors are desk-scale only (degree {} > {DEGREE_GUARD})",
            group.degree()
        )));
    }
    if group.order_le(ORDER_GUARD).is_none() {
        return Err(resource(format!("group order exceeds the enumeration guard {ORDER_GUARD}")));
    }
    let mut out = Vec::new();
    factors_rec(group, &mut out)?;
    out.sort_by_key(|f| f.order);
    Ok(out)
}

/// Composition factor orders only.
pub fn composition_factor_orders(group: &PermGroup) -> Result<Vec<u128>> {
    Ok(composition_factors(group)?.into_iter().map(|f| f.order).collect())
}

/// Minimal faithful permutation degree of the desk-scale simple groups,
/// keyed by order. 20160 is resolved by the presence of order-15 elements
/// (the alternating group has them, the linear group does not).
fn min_faithful_degree(f: &FactorEvidence) -> Result<u128> {
    if is_prime(f.order) {
        return Ok(f.order);
    }
    let degree = match f.order {
        60 => 5,       // A_5
        168 => 7,      // PSL(2,7)
        360 => 6,      // A_6
        504 => 9,      // PSL(2,8)
        660 => 11,     // PSL(2,11)
        1092 => 14,    // PSL(2,13)
        2448 => 18,    // PSL(2,17)
        2520 => 7,     // A_7
        3420 => 20,    // PSL(2,19)
        4080 => 17,    // PSL(2,16)
        5616 => 13,    // PSL(3,3)
        6048 => 28,    // PSU(3,3)
        6072 => 24,    // PSL(2,23)
        7800 => 26,    // PSL(2,25)
        7920 => 11,    // M_11
        9828 => 28,    // PSL(2,27)
        12180 => 30,   // PSL(2,29)
        14880 => 32,   // PSL(2,31)
        20160 => {
            if f.max_element_order % 15 == 0 {
                8 // A_8
            } else {
                21 // PSL(3,4)
            }
        }
        other => {
            return Err(resource(format!(
                "composition factor of order {other} is outside the desk-scale catalog"
            )))
        }
    };
    Ok(degree)
}

fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u128;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// True iff every composition factor embeds in the symmetric group S_d.
pub fn in_gamma_d(group: &PermGroup, d: usize) -> Result<bool> {
    if d < 1 {
        return Err(argument("gamma_d needs d >= 1"));
    }
    let factors = composition_factors(group)?;
    let mut factorial: u128 = 1;
    for i in 1..=d.min(30) as u128 {
        factorial = factorial.saturating_mul(i);
    }
    for f in &factors {
        // cheap order argument first
        if f.order > factorial {
            return Ok(false);
        }
        if min_faithful_degree(f)? > d as u128 {
            return Ok(false);
        }
    }
    Ok(true)
}
