//! The k-dimensional Weisfeiler-Leman algorithm, implemented literally: the
//! initial coloring is the atomic type of each k-tuple, and a round appends
//! the multiset, over all vertices v, of the atomic type of the extended
//! (k+1)-tuple together with the colors of the k substituted tuples.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{argument, resource, Result};
use crate::graph::ColoredGraph;
use crate::refine::{assign_canonical_ids, fingerprint, Coloring, RefinementTrace};

const TUPLE_GUARD: u128 = 100_000_000;

/// Atomic type of the tuple `verts`: vertex colors on the diagonal, and for
/// every ordered position pair the equality bit and both arc colors (shifted
/// by one so that "no edge" is 0).
fn atp_key(g: &ColoredGraph, verts: &[u32], buf: &mut Vec<u32>) {
    for &v in verts {
        buf.push(g.vertex_color(v));
    }
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let (v, w) = (verts[i], verts[j]);
            buf.push((v == w) as u32);
            buf.push(g.arc_color(v, w).map_or(0, |c| c + 1));
            buf.push(g.arc_color(w, v).map_or(0, |c| c + 1));
        }
    }
}

fn digits(mut idx: usize, n: usize, k: usize, out: &mut [u32]) {
    for j in (0..k).rev() {
        out[j] = (idx % n) as u32;
        idx /= n;
    }
}

/// Jointly runs k-WL on a family of graphs with shared color ids. Supports
/// k = 1 for the consistency check against Color Refinement.
pub fn wl_family(graphs: &[&ColoredGraph], k: usize) -> Result<(Vec<Vec<Coloring>>, usize)> {
    if k < 1 {
        return Err(argument("k-WL needs k >= 1"));
    }
    let mut tuple_counts = Vec::new();
    for g in graphs {
        let count = (g.n() as u128).pow(k as u32);
        if count > TUPLE_GUARD {
            return Err(resource(format!(
                "k-WL needs {count} tuples for n={}, k={k}; guard is {TUPLE_GUARD}",
                g.n()
            )));
        }
        if g.n() == 0 {
            return Err(argument("k-WL needs a non-empty graph"));
        }
        tuple_counts.push(count as usize);
    }
    let total: usize = tuple_counts.iter().sum();
    let mut offsets = vec![0usize; graphs.len() + 1];
    for (i, &c) in tuple_counts.iter().enumerate() {
        offsets[i + 1] = offsets[i] + c;
    }
    let graph_of = |item: usize| -> (usize, usize) {
        let gi = offsets.iter().rposition(|&o| o <= item).unwrap();
        (gi, item - offsets[gi])
    };

    // round 0: atomic types
    let mut colors = vec![0u32; total];
    let zero_prev = vec![0u32; total];
    let mut scratch = vec![0u32; k];
    let mut key_buf: Vec<u32> = Vec::new();
    let mut fps = vec![0u64; total];
    for item in 0..total {
        let (gi, t) = graph_of(item);
        digits(t, graphs[gi].n(), k, &mut scratch);
        key_buf.clear();
        atp_key(graphs[gi], &scratch, &mut key_buf);
        fps[item] = fingerprint(&key_buf);
    }
    let mut num_colors = {
        let mut tmp = vec![0u32; k];
        assign_canonical_ids(
            &zero_prev,
            &fps,
            |item, buf| {
                let (gi, t) = graph_of(item);
                digits(t, graphs[gi].n(), k, &mut tmp);
                atp_key(graphs[gi], &tmp, buf);
            },
            &mut colors,
        )
    };

    let snapshot = |colors: &[u32], num: usize, round: usize| -> Vec<Coloring> {
        graphs
            .iter()
            .enumerate()
            .map(|(gi, _)| Coloring::new(k, num, round, colors[offsets[gi]..offsets[gi + 1]].to_vec()))
            .collect()
    };
    let mut per_round = vec![snapshot(&colors, num_colors, 0)];

    // signature of one tuple: sorted (k+1)-extension records
    let compute_sig = |item: usize, buf: &mut Vec<u32>, colors: &[u32]| {
        let (gi, t) = graph_of(item);
        let g = graphs[gi];
        let n = g.n();
        let mut tuple = vec![0u32; k + 1];
        digits(t, n, k, &mut tuple[..k]);
        // powers for substitution reindexing
        let mut pow = vec![1usize; k];
        for j in (0..k.saturating_sub(1)).rev() {
            pow[j] = pow[j + 1] * n;
        }
        let elem_len = (k + 1) + 3 * (k + 1) * k / 2 + k;
        let mut flat: Vec<u32> = Vec::with_capacity(n * elem_len);
        for v in 0..n as u32 {
            tuple[k] = v;
            atp_key(g, &tuple, &mut flat);
            for j in 0..k {
                let sub = t + (v as usize) * pow[j] - (tuple[j] as usize) * pow[j];
                flat.push(colors[offsets[gi] + sub]);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by(|&a, &b| {
            flat[a * elem_len..(a + 1) * elem_len].cmp(&flat[b * elem_len..(b + 1) * elem_len])
        });
        for &i in &order {
            buf.extend_from_slice(&flat[i * elem_len..(i + 1) * elem_len]);
        }
    };

    let mut round = 0usize;
    loop {
        round += 1;
        let mut sig_buf: Vec<u32> = Vec::new();
        for item in 0..total {
            sig_buf.clear();
            compute_sig(item, &mut sig_buf, &colors);
            fps[item] = fingerprint(&sig_buf);
        }
        let mut new_colors = vec![0u32; total];
        let new_num = assign_canonical_ids(
            &colors,
            &fps,
            |item, buf| compute_sig(item, buf, &colors),
            &mut new_colors,
        );
        per_round.push(snapshot(&new_colors, new_num, round));
        let stabilized = new_num == num_colors;
        colors = new_colors;
        num_colors = new_num;
        if stabilized {
            break;
        }
    }
    Ok((per_round, round - 1))
}

/// k-WL refinement of a single graph, k >= 2.
pub fn wl_k(g: &ColoredGraph, k: usize) -> Result<RefinementTrace> {
    if k < 2 {
        return Err(argument("wl_k needs k >= 2; use color_refine for k = 1"));
    }
    let (rounds, stabilized_at) = wl_family(&[g], k)?;
    let rounds = rounds.into_iter().map(|mut per_graph| per_graph.remove(0)).collect();
    Ok(RefinementTrace { rounds, stabilized_at })
}
