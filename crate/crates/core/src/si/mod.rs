//! The String Isomorphism Problem: strings acted on by permutation groups,
//! Luks's recursive algorithm, the reduction from graph isomorphism,
//! hypergraph and set-of-strings translations, and the desk-scale local
//! certificates routine.

mod cert;
mod hyper;
mod luks;
mod reduce;

pub use cert::{affected_points, is_giant, local_certificates, GiantRep, LocalCertificate};
pub use hyper::{hyper_to_sets, set_of_strings_iso_bruteforce, sets_to_hyper, Hypergraph, SetOfStrings};
pub use luks::luks_string_iso;
pub use reduce::{gi_to_si, pair_action_group, pair_action_perm, pair_rank};

use alloc::format;
use alloc::vec::Vec;

use crate::error::{argument, Result};
use crate::perm::{Perm, PermGroup};

/// A string: a total map from positions `0..domain_size` into a dense
/// alphabet `0..alphabet_size`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GString {
    alphabet_size: usize,
    values: Vec<u32>,
}

impl GString {
    pub fn new(alphabet_size: usize, values: Vec<u32>) -> Result<Self> {
        if let Some(&v) = values.iter().find(|&&v| v as usize >= alphabet_size) {
            return Err(argument(format!("symbol {v} outside alphabet of size {alphabet_size}")));
        }
        Ok(GString { alphabet_size, values })
    }

    /// Infers the alphabet as `0..=max(values)`.
    pub fn from_values(values: Vec<u32>) -> Self {
        let alphabet_size = values.iter().max().map_or(1, |&m| m as usize + 1);
        GString { alphabet_size, values }
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn value(&self, position: u32) -> u32 {
        self.values[position as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

/// String action: `(x^g)(p) = x(p^(g^-1))`, so the symbol at `p` travels to
/// `p^g`.
pub fn apply_perm(x: &GString, g: &Perm) -> Result<GString> {
    if x.domain_size() != g.degree() {
        return Err(argument("permutation degree does not match the string domain"));
    }
    let mut values = alloc::vec![0u32; x.domain_size()];
    for p in 0..x.domain_size() as u32 {
        values[g.image(p) as usize] = x.value(p);
    }
    Ok(GString { alphabet_size: x.alphabet_size, values })
}

/// One instance of the String Isomorphism Problem: find all elements of the
/// coset `group . shift` mapping `x` onto `y` on the window.
#[derive(Clone, Debug)]
pub struct SIInstance {
    pub x: GString,
    pub y: GString,
    pub group: PermGroup,
    pub shift: Perm,
    pub window: Vec<u32>,
}

impl SIInstance {
    pub fn new(x: GString, y: GString, group: PermGroup, shift: Perm, window: Vec<u32>) -> Result<Self> {
        let n = group.degree();
        if x.domain_size() != n || y.domain_size() != n || shift.degree() != n {
            return Err(argument("strings, group and shift must share one domain"));
        }
        if x.alphabet_size() != y.alphabet_size() {
            return Err(argument("strings must share an alphabet"));
        }
        let mut window = window;
        window.sort_unstable();
        window.dedup();
        if window.iter().any(|&p| p as usize >= n) {
            return Err(argument("window position out of range"));
        }
        Ok(SIInstance { x, y, group, shift, window })
    }

    /// Instance over the full window with no shift.
    pub fn plain(x: GString, y: GString, group: PermGroup) -> Result<Self> {
        let n = group.degree();
        let window = (0..n as u32).collect();
        let id = Perm::identity(n);
        Self::new(x, y, group, id, window)
    }
}
