//! Hypergraphs, sets of strings, the translations between them, and an
//! exhaustive set-of-strings isomorphism solver used as the desk-scale
//! oracle by the closure pipeline.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{argument, resource, Result};
use crate::perm::{Coset, Perm, PermGroup};
use crate::si::{apply_perm, GString};

const ENUMERATION_GUARD: u128 = 10_000_000;

/// A hypergraph: distinct vertex subsets over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<u32>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        let mut normalized: Vec<Vec<u32>> = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.iter().any(|&v| v as usize >= n) {
                return Err(argument("hyperedge vertex out of range"));
            }
            normalized.push(e);
        }
        normalized.sort();
        let before = normalized.len();
        normalized.dedup();
        if normalized.len() != before {
            return Err(argument("duplicate hyperedge"));
        }
        Ok(Hypergraph { n, edges: normalized })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }
}

/// A set of strings over one shared domain and alphabet; duplicates removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetOfStrings {
    domain_size: usize,
    alphabet_size: usize,
    strings: Vec<GString>,
}

impl SetOfStrings {
    pub fn new(domain_size: usize, alphabet_size: usize, strings: Vec<GString>) -> Result<Self> {
        for s in &strings {
            if s.domain_size() != domain_size || s.alphabet_size() != alphabet_size {
                return Err(argument("strings must share a domain and alphabet"));
            }
        }
        let mut strings = strings;
        strings.sort();
        strings.dedup();
        Ok(SetOfStrings { domain_size, alphabet_size, strings })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn strings(&self) -> &[GString] {
        &self.strings
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// The set acted on elementwise, re-sorted.
    pub fn apply(&self, g: &Perm) -> Result<SetOfStrings> {
        let strings: Result<Vec<GString>> = self.strings.iter().map(|s| apply_perm(s, g)).collect();
        SetOfStrings::new(self.domain_size, self.alphabet_size, strings?)
    }
}

/// Hyperedges become their characteristic 0/1 strings over the vertex set.
pub fn hyper_to_sets(h: &Hypergraph) -> SetOfStrings {
    let strings: Vec<GString> = h
        .edges()
        .iter()
        .map(|e| {
            let mut values = vec![0u32; h.n()];
            for &v in e {
                values[v as usize] = 1;
            }
            GString::new(2, values).expect("characteristic string is binary")
        })
        .collect();
    SetOfStrings::new(h.n(), 2, strings).expect("characteristic strings share the domain")
}

/// Strings become hyperedges over the vertex set `domain x alphabet` (vertex
/// `(p, a)` has index `p * alphabet + a`); the group lifts by acting
/// trivially on the alphabet coordinate.
pub fn sets_to_hyper(s: &SetOfStrings, group: &PermGroup) -> Result<(Hypergraph, PermGroup)> {
    if group.degree() != s.domain_size() {
        return Err(argument("group degree does not match the string domain"));
    }
    let a = s.alphabet_size();
    let n = s.domain_size() * a;
    let edges: Vec<Vec<u32>> = s
        .strings()
        .iter()
        .map(|x| (0..s.domain_size() as u32).map(|p| p * a as u32 + x.value(p)).collect())
        .collect();
    let hyper = Hypergraph::new(n, edges)?;
    let lifted_gens: Vec<Perm> = group
        .generators()
        .iter()
        .map(|g| {
            let images: Vec<u32> = (0..n as u32)
                .map(|v| {
                    let (p, sym) = (v / a as u32, v % a as u32);
                    g.image(p) * a as u32 + sym
                })
                .collect();
            Perm::from_images(images).expect("lifted action is a permutation")
        })
        .collect();
    Ok((hyper, PermGroup::new_unchecked(n, lifted_gens)))
}

/// Exhaustive set-of-strings isomorphism: enumerates the group and returns
/// the full coset of elements carrying `xs` onto `ys`.
pub fn set_of_strings_iso_bruteforce(
    xs: &SetOfStrings,
    ys: &SetOfStrings,
    group: &PermGroup,
) -> Result<Coset> {
    let n = group.degree();
    if xs.domain_size() != n || ys.domain_size() != n {
        return Err(argument("string domains do not match the group degree"));
    }
    if group.order_le(ENUMERATION_GUARD).is_none() {
        return Err(resource(format!(
            "set-of-strings brute force needs group order at most {ENUMERATION_GUARD}"
        )));
    }
    if xs.len() != ys.len() || xs.alphabet_size() != ys.alphabet_size() {
        return Ok(Coset::empty(n));
    }
    let target: BTreeSet<&GString> = ys.strings().iter().collect();
    let mut auts: Vec<Perm> = Vec::new();
    let mut witness: Option<Perm> = None;
    let source: BTreeSet<&GString> = xs.strings().iter().collect();
    group.for_each_element_guarded(ENUMERATION_GUARD, &mut |g| {
        let mut maps_to_y = true;
        let mut maps_to_x = true;
        for s in xs.strings() {
            let moved = apply_perm(s, g).expect("degrees match");
            if maps_to_y && !target.contains(&moved) {
                maps_to_y = false;
            }
            if maps_to_x && !source.contains(&moved) {
                maps_to_x = false;
            }
            if !maps_to_x && !maps_to_y {
                break;
            }
        }
        if maps_to_x {
            auts.push(g.clone());
        }
        if maps_to_y && witness.is_none() {
            witness = Some(g.clone());
        }
        true
    })?;
    match witness {
        None => Ok(Coset::empty(n)),
        Some(w) => Coset::new(PermGroup::new_unchecked(n, auts), w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn triangle_becomes_three_weight_two_strings() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let s = hyper_to_sets(&h);
        assert_eq!(s.len(), 3);
        for x in s.strings() {
            assert_eq!(x.values().iter().sum::<u32>(), 2);
        }
    }

    #[test]
    fn empty_edge_set_translates_to_no_strings() {
        let h = Hypergraph::new(4, vec![]).unwrap();
        assert!(hyper_to_sets(&h).is_empty());
    }

    #[test]
    fn constant_string_set_has_the_full_group() {
        let x = GString::new(2, vec![1, 1, 1, 1]).unwrap();
        let s = SetOfStrings::new(4, 2, vec![x]).unwrap();
        let group = PermGroup::symmetric(4);
        let coset = set_of_strings_iso_bruteforce(&s, &s, &group).unwrap();
        assert_eq!(coset.order(), BigUint::from(24u32));
    }

    #[test]
    fn size_mismatch_is_empty() {
        let a = GString::new(2, vec![0, 1]).unwrap();
        let b = GString::new(2, vec![1, 0]).unwrap();
        let xs = SetOfStrings::new(2, 2, vec![a.clone(), b]).unwrap();
        let ys = SetOfStrings::new(2, 2, vec![a]).unwrap();
        let group = PermGroup::symmetric(2);
        assert!(set_of_strings_iso_bruteforce(&xs, &ys, &group).unwrap().is_empty());
    }

    /// Oracle on the hypergraph side: enumerate the group and compare edge
    /// sets directly.
    fn hypergraph_iso_bruteforce(
        h1: &Hypergraph,
        h2: &Hypergraph,
        group: &PermGroup,
    ) -> Vec<Perm> {
        let target: BTreeSet<&Vec<u32>> = h2.edges().iter().collect();
        let mut found = Vec::new();
        group
            .for_each_element_guarded(1 << 24, &mut |g| {
                let ok = h1.edges().iter().all(|e| {
                    let mut moved: Vec<u32> = e.iter().map(|&v| g.image(v)).collect();
                    moved.sort_unstable();
                    target.contains(&moved)
                });
                if ok && h1.edges().len() == h2.edges().len() {
                    found.push(g.clone());
                }
                true
            })
            .unwrap();
        found
    }

    #[test]
    fn translations_preserve_isomorphism_verdicts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for round in 0..20 {
            let n = 8;
            let group = if round % 2 == 0 { PermGroup::dihedral(n) } else { PermGroup::cyclic(n) };
            let random_hyper = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut edges: BTreeSet<Vec<u32>> = BTreeSet::new();
                for _ in 0..4 {
                    let mut e: Vec<u32> =
                        (0..n as u32).filter(|_| rng.gen_bool(0.4)).collect();
                    if e.is_empty() {
                        e.push(rng.gen_range(0..n as u32));
                    }
                    edges.insert(e);
                }
                Hypergraph::new(n, edges.into_iter().collect()).unwrap()
            };
            let h1 = random_hyper(&mut rng);
            let h2 = if rng.gen_bool(0.5) {
                // a genuinely permuted copy
                let g = group.elements(100).unwrap()[rng.gen_range(0..group.order_le(100).unwrap() as usize)].clone();
                let edges: Vec<Vec<u32>> =
                    h1.edges().iter().map(|e| e.iter().map(|&v| g.image(v)).collect()).collect();
                Hypergraph::new(n, edges).unwrap()
            } else {
                random_hyper(&mut rng)
            };

            let hyper_found = hypergraph_iso_bruteforce(&h1, &h2, &group);

            let (s1, s2) = (hyper_to_sets(&h1), hyper_to_sets(&h2));
            let coset = set_of_strings_iso_bruteforce(&s1, &s2, &group).unwrap();
            assert_eq!(
                hyper_found.is_empty(),
                coset.is_empty(),
                "verdicts diverge on round {round}"
            );
            if !coset.is_empty() {
                assert_eq!(coset.order(), BigUint::from(hyper_found.len()));
            }

            // and through the reverse translation as well
            let (h1_back, lifted) = sets_to_hyper(&s1, &group).unwrap();
            let (h2_back, _) = sets_to_hyper(&s2, &group).unwrap();
            let back_found = hypergraph_iso_bruteforce(&h1_back, &h2_back, &lifted);
            assert_eq!(back_found.is_empty(), coset.is_empty(), "reverse translation diverges");
        }
    }
}
