//! Automorphism-group bound along the t-CR alternation.
//!
//! Following the coloring sequence, the pipeline maintains a permutation
//! group on the current color classes that contains the induced action of
//! the automorphism group. A refinement round is handled by the set-of-
//! strings automorphism of the per-vertex class-adjacency strings; a split
//! round extends the group by a wreath-style generator set on the classes it
//! splits. When the coloring becomes discrete the classes are vertices and
//! the group bounds the automorphism group itself.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{argument, resource, Result};
use crate::graph::ColoredGraph;
use crate::perm::{Perm, PermGroup};
use crate::si::{luks_string_iso, set_of_strings_iso_bruteforce, GString, SIInstance, SetOfStrings};

const ORDER_GUARD: u128 = 10_000_000;

struct PipelineState {
    /// current color classes, each a sorted vertex set
    cells: Vec<Vec<u32>>,
    /// group on the cell indices containing the induced automorphism action
    group: PermGroup,
}

fn guard(group: &PermGroup) -> Result<()> {
    if group.order_le(ORDER_GUARD).is_none() {
        return Err(resource(alloc::format!(
            "pipeline group order exceeds the desk-scale guard {ORDER_GUARD}"
        )));
    }
    Ok(())
}

/// One Color Refinement iteration: split cells by the per-vertex strings
/// `x_v(P) = (v in P, |N(v) and P|)` and carry the group through the
/// set-of-strings automorphisms. Returns false at the CR fixpoint.
fn cr_step(g: &ColoredGraph, state: &mut PipelineState) -> Result<bool> {
    let num_cells = state.cells.len();
    let alphabet = 2 * (g.max_degree() + 2);
    let mut cell_of = vec![0u32; g.n()];
    for (i, cell) in state.cells.iter().enumerate() {
        for &v in cell {
            cell_of[v as usize] = i as u32;
        }
    }
    let string_of = |v: u32| -> GString {
        let mut values = vec![0u32; num_cells];
        for &w in g.neighbors(v) {
            values[cell_of[w as usize] as usize] += 1;
        }
        for (i, val) in values.iter_mut().enumerate() {
            let in_flag = (cell_of[v as usize] as usize == i) as u32;
            *val += in_flag * (g.max_degree() + 2) as u32;
        }
        GString::new(alphabet, values).expect("class-adjacency string fits the alphabet")
    };

    // group vertices by their string; sorted strings name the new cells
    let mut keyed: Vec<(GString, u32)> = (0..g.n() as u32).map(|v| (string_of(v), v)).collect();
    keyed.sort();
    let mut new_cells: Vec<Vec<u32>> = Vec::new();
    let mut distinct: Vec<GString> = Vec::new();
    for (s, v) in keyed {
        if distinct.last() != Some(&s) {
            distinct.push(s);
            new_cells.push(Vec::new());
        }
        new_cells.last_mut().unwrap().push(v);
    }
    if new_cells.len() == num_cells {
        return Ok(false);
    }

    guard(&state.group)?;
    let family = SetOfStrings::new(num_cells, alphabet, distinct.clone())?;
    let coset = set_of_strings_iso_bruteforce(&family, &family, &state.group)?;
    let auts = coset.group().expect("identity preserves the family").clone();

    // induced action: a cell named by string s maps to the cell named s^gamma
    let images: Vec<Perm> = auts
        .generators()
        .iter()
        .map(|gamma| {
            let image: Vec<u32> = distinct
                .iter()
                .map(|s| {
                    let moved = crate::si::apply_perm(s, gamma).expect("degrees match");
                    distinct.binary_search(&moved).expect("family is closed") as u32
                })
                .collect();
            Perm::from_images(image).expect("string action permutes the family")
        })
        .collect();
    for cell in &mut new_cells {
        cell.sort_unstable();
    }
    state.cells = new_cells;
    state.group = PermGroup::new_unchecked(state.cells.len(), images);
    Ok(true)
}

/// One split round: cells of size at most t become singletons; the group is
/// first cut down to the stabilizer of the size labeling, then lifted with
/// wreath-style generators (block permutations plus full symmetric groups
/// inside each split cell). Returns false when nothing splits.
fn split_step(t: usize, state: &mut PipelineState) -> Result<bool> {
    let sizes: Vec<u32> = state.cells.iter().map(|c| c.len() as u32).collect();
    if !state.cells.iter().any(|c| c.len() >= 2 && c.len() <= t) {
        return Ok(false);
    }
    guard(&state.group)?;
    // stabilizer of the size labeling
    let size_string = GString::from_values(sizes.clone());
    let inst = SIInstance::plain(size_string.clone(), size_string, state.group.clone())?;
    let stab = luks_string_iso(&inst)?.group().expect("identity fixes sizes").clone();

    // new cell layout: split cells expand into their members (ascending)
    let mut offsets = vec![0u32; state.cells.len() + 1];
    let mut new_cells: Vec<Vec<u32>> = Vec::new();
    for (i, cell) in state.cells.iter().enumerate() {
        offsets[i] = new_cells.len() as u32;
        if cell.len() >= 2 && cell.len() <= t {
            for &v in cell {
                new_cells.push(vec![v]);
            }
        } else {
            new_cells.push(cell.clone());
        }
    }
    offsets[state.cells.len()] = new_cells.len() as u32;
    let width = |i: usize| (offsets[i + 1] - offsets[i]) as usize;

    let mut gens: Vec<Perm> = Vec::new();
    // lift of every stabilizer generator: position-wise between split cells
    for gamma in stab.generators() {
        let mut image = vec![0u32; new_cells.len()];
        for i in 0..state.cells.len() {
            let j = gamma.image(i as u32) as usize;
            debug_assert_eq!(width(i), width(j));
            for p in 0..width(i) {
                image[(offsets[i] as usize) + p] = offsets[j] + p as u32;
            }
        }
        gens.push(Perm::from_images(image).expect("lifted generator is a permutation"));
    }
    // base generators: the symmetric group inside each split cell
    for i in 0..state.cells.len() {
        let p = width(i);
        if p < 2 {
            continue;
        }
        let base = offsets[i];
        gens.push(Perm::from_cycles(new_cells.len(), &[&[base, base + 1]]).unwrap());
        if p > 2 {
            let cycle: Vec<u32> = (0..p as u32).map(|q| base + q).collect();
            gens.push(Perm::from_cycles(new_cells.len(), &[&cycle]).unwrap());
        }
    }
    state.cells = new_cells;
    state.group = PermGroup::new_unchecked(state.cells.len(), gens);
    Ok(true)
}

/// A permutation group on the vertices containing the automorphism group,
/// built along the t-CR alternation. The graph must be t-CR-bounded.
pub fn tcr_aut_pipeline(g: &ColoredGraph, t: usize) -> Result<PermGroup> {
    if t < 1 {
        return Err(argument("the split threshold t must be at least 1"));
    }
    // initial cells: the classes of the input coloring, in color order
    let initial = crate::refine::Coloring::from_vertex_colors(g.vertex_colors());
    let cells: Vec<Vec<u32>> = initial
        .classes()
        .into_iter()
        .map(|c| c.into_iter().map(|v| v as u32).collect())
        .collect();
    let group = PermGroup::trivial(cells.len());
    let mut state = PipelineState { cells, group };

    loop {
        let mut progressed = false;
        while cr_step(g, &mut state)? {
            progressed = true;
        }
        if split_step(t, &mut state)? {
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    if state.cells.iter().any(|c| c.len() != 1) {
        return Err(argument("graph is not t-CR-bounded for the requested t"));
    }
    guard(&state.group)?;

    // identify singleton cells with their vertices
    let mut vertex_of = vec![0u32; state.cells.len()];
    for (i, cell) in state.cells.iter().enumerate() {
        vertex_of[i] = cell[0];
    }
    let gens: Vec<Perm> = state
        .group
        .generators()
        .iter()
        .map(|gamma| {
            let mut image = vec![0u32; g.n()];
            for i in 0..state.cells.len() {
                image[vertex_of[i] as usize] = vertex_of[gamma.image(i as u32) as usize];
            }
            Perm::from_images(image).expect("cell action transfers to vertices")
        })
        .collect();
    Ok(PermGroup::new_unchecked(g.n(), gens))
}
