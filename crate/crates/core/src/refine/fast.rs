//! Worklist-based partition refinement (splitting by all but the largest
//! part), the engine behind the stable-coloring fast path. It computes the
//! same fixpoint partition as the round-by-round engine without
//! materializing rounds.
//!
//! Class ids are assigned deterministically: initial classes in ascending
//! order of the initial color value, split parts in ascending order of the
//! splitter count. Two refinement runs started from states that differ only
//! by an automorphism therefore evolve identical class ids, which is what
//! the backtracking engine's pruning relies on.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::ColoredGraph;
use crate::refine::Coloring;

/// A partition of `0..n` with contiguous per-class storage.
#[derive(Clone, Debug)]
pub struct Partition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    class_of: Vec<u32>,
    start: Vec<u32>,
    len: Vec<u32>,
    /// per-vertex flag, packed: the vertex sits in a singleton class
    single: Vec<u64>,
    singles: usize,
}

impl Partition {
    /// Classes ordered by ascending initial color value.
    pub fn from_colors(colors: &[u32]) -> Self {
        let n = colors.len();
        let mut elems: Vec<u32> = (0..n as u32).collect();
        if colors.windows(2).any(|w| w[0] != w[1]) {
            let mut keyed: Vec<(u32, u32)> = colors.iter().copied().zip(0..n as u32).collect();
            keyed.sort_unstable();
            for (i, &(_, v)) in keyed.iter().enumerate() {
                elems[i] = v;
            }
        }
        let mut pos = vec![0u32; n];
        let mut class_of = vec![0u32; n];
        let mut start = Vec::new();
        let mut len = Vec::new();
        let mut single = vec![0u64; n.div_ceil(64)];
        let mut i = 0;
        while i < n {
            let c = colors[elems[i] as usize];
            let s = i;
            while i < n && colors[elems[i] as usize] == c {
                i += 1;
            }
            let id = start.len() as u32;
            start.push(s as u32);
            len.push((i - s) as u32);
            if i - s == 1 {
                let v = elems[s] as usize;
                single[v / 64] |= 1 << (v % 64);
            }
            for j in s..i {
                pos[elems[j] as usize] = j as u32;
                class_of[elems[j] as usize] = id;
            }
        }
        let singles = len.iter().filter(|&&l| l == 1).count();
        Partition { elems, pos, class_of, start, len, single, singles }
    }

    pub fn num_classes(&self) -> usize {
        self.start.len()
    }

    pub fn domain_size(&self) -> usize {
        self.elems.len()
    }

    pub fn class_of(&self, v: u32) -> u32 {
        self.class_of[v as usize]
    }

    pub fn class_size(&self, c: u32) -> usize {
        self.len[c as usize] as usize
    }

    pub fn members(&self, c: u32) -> &[u32] {
        let s = self.start[c as usize] as usize;
        &self.elems[s..s + self.len[c as usize] as usize]
    }

    pub fn is_discrete(&self) -> bool {
        self.num_classes() == self.elems.len()
    }

    /// True if the vertex is alone in its class.
    #[inline]
    pub fn is_singleton(&self, v: u32) -> bool {
        self.single[v as usize / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn mark_single(&mut self, v: u32) {
        let (word, bit) = (v as usize / 64, v % 64);
        if self.single[word] >> bit & 1 == 0 {
            self.single[word] |= 1 << bit;
            self.singles += 1;
        }
    }

    /// Number of vertices sitting in singleton classes.
    pub fn singleton_count(&self) -> usize {
        self.singles
    }

    /// Rebuilds the partition from a dense coloring whose ids must already
    /// follow the canonical order (used by the bulk refinement rounds).
    fn rebuild(&mut self, colors: &[u32], num_classes: usize) {
        let n = colors.len();
        let mut counts = vec![0u32; num_classes];
        for &c in colors {
            counts[c as usize] += 1;
        }
        self.start.clear();
        self.len.clear();
        let mut acc = 0u32;
        for &c in &counts {
            self.start.push(acc);
            self.len.push(c);
            acc += c;
        }
        let mut cursor: Vec<u32> = self.start.clone();
        for v in 0..n as u32 {
            let c = colors[v as usize] as usize;
            let slot = cursor[c];
            cursor[c] += 1;
            self.elems[slot as usize] = v;
            self.pos[v as usize] = slot;
            self.class_of[v as usize] = colors[v as usize];
        }
        self.single.iter_mut().for_each(|w| *w = 0);
        self.singles = 0;
        for (c, &l) in self.len.iter().enumerate() {
            if l == 1 {
                let v = self.elems[self.start[c] as usize];
                self.single[v as usize / 64] |= 1 << (v % 64);
                self.singles += 1;
            }
        }
    }

    /// Class sizes indexed by class id.
    pub fn sizes(&self) -> &[u32] {
        &self.len
    }

    pub fn to_coloring(&self, history_round: usize) -> Coloring {
        Coloring::new(1, self.num_classes(), history_round, self.class_of.clone())
    }

    /// Moves `v` into a fresh singleton class and returns `(old, new)` ids.
    pub fn individualize(&mut self, v: u32) -> (u32, u32) {
        let c = self.class_of[v as usize] as usize;
        let s = self.start[c] as usize;
        let l = self.len[c] as usize;
        debug_assert!(l > 1, "individualizing a singleton is a no-op");
        // swap v to the end of its class slice and carve it off
        let last = s + l - 1;
        let pv = self.pos[v as usize] as usize;
        let moved = self.elems[last];
        self.elems.swap(pv, last);
        self.pos[moved as usize] = pv as u32;
        self.pos[v as usize] = last as u32;
        self.len[c] -= 1;
        let id = self.start.len() as u32;
        self.start.push(last as u32);
        self.len.push(1);
        self.class_of[v as usize] = id;
        self.mark_single(v);
        if self.len[c] == 1 {
            self.mark_single(self.elems[s]);
        }
        (c as u32, id)
    }

    /// Moves two members of one class into a fresh shared class (the
    /// cross-graph individualization step of the isomorphism search).
    pub fn individualize_pair(&mut self, u: u32, w: u32) -> (u32, u32) {
        debug_assert_eq!(self.class_of[u as usize], self.class_of[w as usize]);
        let c = self.class_of[u as usize] as usize;
        let s = self.start[c] as usize;
        let l = self.len[c] as usize;
        debug_assert!(l > 2, "pair individualization needs a class of size > 2");
        for (slot, v) in [(s + l - 2, u), (s + l - 1, w)] {
            let pv = self.pos[v as usize] as usize;
            let moved = self.elems[slot];
            self.elems.swap(pv, slot);
            self.pos[moved as usize] = pv as u32;
            self.pos[v as usize] = slot as u32;
        }
        self.len[c] -= 2;
        let id = self.start.len() as u32;
        self.start.push((s + l - 2) as u32);
        self.len.push(2);
        self.class_of[u as usize] = id;
        self.class_of[w as usize] = id;
        if self.len[c] == 1 {
            self.mark_single(self.elems[s]);
        }
        (c as u32, id)
    }

    /// Splits class `c` given its touched members in ascending count order
    /// (counts are all positive; untouched members count as zero). Only the
    /// touched members are moved: they are swapped to the tail of the class
    /// slice, so the cost is linear in the touched count, not the class
    /// size. Parts are ordered by ascending count, the first part keeps id
    /// `c`; returns `(id, size)` per part, empty when nothing splits.
    fn split_touched(&mut self, c: u32, touched: &[(u32, u32)]) -> Vec<(u32, u32)> {
        let s = self.start[c as usize] as usize;
        let l = self.len[c as usize] as usize;
        let t = touched.len();
        debug_assert!(t >= 1 && t <= l);
        let all_touched = t == l;
        if all_touched && touched[0].0 == touched[t - 1].0 {
            return Vec::new(); // uniform count over the whole class
        }
        // place touched members on the tail, in count order
        let tail = s + l - t;
        for (i, &(_, v)) in touched.iter().enumerate() {
            let slot = tail + i;
            let pv = self.pos[v as usize] as usize;
            if pv == slot {
                continue;
            }
            let occupant = self.elems[slot];
            self.elems.swap(pv, slot);
            self.pos[occupant as usize] = pv as u32;
            self.pos[v as usize] = slot as u32;
        }
        let mut parts: Vec<(u32, u32)> = Vec::new();
        if !all_touched {
            parts.push((c, (l - t) as u32)); // untouched prefix keeps the id
        }
        let mut i = 0usize;
        while i < t {
            let count = touched[i].0;
            let ps = i;
            while i < t && touched[i].0 == count {
                i += 1;
            }
            let id = if parts.is_empty() {
                c
            } else {
                let id = self.start.len() as u32;
                self.start.push((tail + ps) as u32);
                self.len.push(0);
                id
            };
            self.len[id as usize] = (i - ps) as u32;
            for j in ps..i {
                self.class_of[self.elems[tail + j] as usize] = id;
            }
            if i - ps == 1 {
                self.mark_single(self.elems[tail + ps]);
            }
            parts.push((id, (i - ps) as u32));
        }
        if !all_touched {
            self.len[c as usize] = (l - t) as u32;
            if l - t == 1 {
                self.mark_single(self.elems[s]);
            }
        }
        parts
    }
}

/// Reusable refinement state for one graph.
pub struct Refiner<'g> {
    g: &'g ColoredGraph,
    // narrow counters keep the hot array inside L2; the wide fallback covers
    // degrees beyond u16
    cnt: Vec<u16>,
    cnt_wide: Vec<u32>,
    wide: bool,
    touched: Vec<u32>,
    queue: Vec<u32>,
    queue_head: usize,
    in_queue: Vec<bool>,
    arc_buf: Vec<(u32, u32, u32)>, // arcs into the splitter as (c_in, c_out, v)
    // per-class touched buckets, recycled across splitters
    bucket_of: Vec<u32>,
    buckets: Vec<Vec<(u32, u32)>>,
    free_buckets: Vec<u32>,
    dirty: Vec<u32>,
    pub stat_pops: u64,
    pub stat_arcs: u64,
    pub stat_touched: u64,
    pub stat_bulk_rounds: u64,
    pub stat_bulk_ms: f64,
}

impl<'g> Refiner<'g> {
    pub fn new(g: &'g ColoredGraph) -> Self {
        let wide = g.max_degree() >= u16::MAX as usize;
        Refiner {
            g,
            cnt: if wide { Vec::new() } else { vec![0; g.n()] },
            cnt_wide: if wide { vec![0; g.n()] } else { Vec::new() },
            wide,
            touched: Vec::new(),
            queue: Vec::new(),
            in_queue: Vec::new(),
            queue_head: 0,
            arc_buf: Vec::new(),
            bucket_of: Vec::new(),
            buckets: Vec::new(),
            free_buckets: Vec::new(),
            dirty: Vec::new(),
            stat_pops: 0,
            stat_arcs: 0,
            stat_touched: 0,
            stat_bulk_rounds: 0,
            stat_bulk_ms: 0.0,
        }
    }

    /// Runs bulk rounds until the partition is stable (returns true) or a
    /// round is no longer productive enough to justify full passes.
    fn bulk_phase(&mut self, p: &mut Partition) -> bool {
        // round 1 rekeys everything; afterwards only classes adjacent to a
        // split class need rekeying
        let mut dirty = vec![true; p.num_classes()];
        for _ in 0..32 {
            self.stat_bulk_rounds += 1;
            let (changed, stable, next_dirty) = self.bulk_round(p, &dirty);
            if stable {
                return true;
            }
            dirty = next_dirty;
            let alive = p.domain_size() - p.singleton_count();
            if changed * 8 < alive.max(64) {
                return false;
            }
        }
        false
    }

    /// One vertex-centric refinement round: every non-singleton vertex of a
    /// dirty class is keyed by its class and the sorted class ids of its
    /// neighbors, and the partition is rebuilt with canonical ids (classes
    /// ordered by old id, split parts by signature). Signatures are
    /// materialized once, and vertices are visited in vertex order so the
    /// adjacency lists are streamed forward.
    fn bulk_round(&mut self, p: &mut Partition, dirty: &[bool]) -> (usize, bool, Vec<bool>) {
        let n = p.domain_size();
        let old_classes = p.num_classes();
        let mut items: Vec<u32> = Vec::new();
        let mut sig_offsets: Vec<u32> = Vec::new();
        let mut sigs: Vec<u32> = Vec::new();
        let mut keys: Vec<(u32, u64, u32)> = Vec::new(); // (old class, fp, item)
        // with few classes the signature comes out of a small counting array
        // in class order, skipping the per-vertex sort
        let mut local: Vec<u32> = if old_classes <= 64 { vec![0; old_classes] } else { Vec::new() };
        for v in 0..n as u32 {
            if p.is_singleton(v) || !dirty[p.class_of(v) as usize] {
                continue;
            }
            let item = items.len() as u32;
            items.push(v);
            sig_offsets.push(sigs.len() as u32);
            self.stat_arcs += self.g.neighbors(v).len() as u64;
            let from = sigs.len();
            if old_classes == 1 {
                sigs.push(self.g.degree(v) as u32);
            } else if old_classes <= 64 {
                for &w in self.g.neighbors(v) {
                    local[p.class_of(w) as usize] += 1;
                }
                for (c, slot) in local.iter_mut().enumerate() {
                    if *slot > 0 {
                        sigs.push(c as u32);
                        sigs.push(*slot);
                        *slot = 0;
                    }
                }
            } else {
                for &w in self.g.neighbors(v) {
                    sigs.push(p.class_of(w));
                }
                sigs[from..].sort_unstable();
            }
            keys.push((p.class_of(v), crate::refine::fingerprint(&sigs[from..]), item));
        }
        sig_offsets.push(sigs.len() as u32);
        if items.is_empty() {
            return (0, true, Vec::new());
        }
        keys.sort_unstable();

        // dense new ids for the non-singleton vertices, in (old id, signature)
        // order; equal fingerprints are verified against the stored
        // signatures so collisions cannot merge distinct keys
        let sig_of = |item: u32| -> &[u32] {
            &sigs[sig_offsets[item as usize] as usize..sig_offsets[item as usize + 1] as usize]
        };
        let mut sub_of_item: Vec<u32> = vec![0; items.len()];
        let mut subs_of_class: Vec<u32> = vec![0; old_classes];
        let mut i = 0;
        while i < keys.len() {
            let (old, fp, first) = keys[i];
            let mut j = i;
            let mut rare: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
            let mut first_members: Vec<u32> = Vec::new();
            while j < keys.len() && keys[j].0 == old && keys[j].1 == fp {
                let item = keys[j].2;
                if sig_of(item) == sig_of(first) {
                    first_members.push(item);
                } else if let Some(g) = rare.iter_mut().find(|g| g.0 == sig_of(item)) {
                    g.1.push(item);
                } else {
                    rare.push((sig_of(item).to_vec(), vec![item]));
                }
                j += 1;
            }
            if rare.is_empty() {
                let sub = subs_of_class[old as usize];
                subs_of_class[old as usize] += 1;
                for &item in &first_members {
                    sub_of_item[item as usize] = sub;
                }
            } else {
                rare.push((sig_of(first).to_vec(), first_members));
                rare.sort_by(|a, b| a.0.cmp(&b.0));
                for (_, members) in &rare {
                    let sub = subs_of_class[old as usize];
                    subs_of_class[old as usize] += 1;
                    for &item in members {
                        sub_of_item[item as usize] = sub;
                    }
                }
            }
            i = j;
        }

        // renumber: every old class contributes its sub-classes in order;
        // clean and singleton old classes pass through unchanged
        let mut base_of_class: Vec<u32> = vec![0; old_classes];
        let mut next = 0u32;
        let mut changed = 0usize;
        for c in 0..old_classes {
            base_of_class[c] = next;
            next += subs_of_class[c].max(1);
        }
        let new_num = next as usize;
        if new_num == old_classes {
            return (0, true, Vec::new());
        }
        let mut colors: Vec<u32> = vec![0; n];
        for v in 0..n as u32 {
            colors[v as usize] = base_of_class[p.class_of(v) as usize];
        }
        for (idx, &v) in items.iter().enumerate() {
            colors[v as usize] += sub_of_item[idx];
        }
        for &v in &items {
            if subs_of_class[p.class_of(v) as usize] > 1 {
                changed += 1;
            }
        }
        // next round only needs to rekey classes adjacent to a split; when
        // most of the domain changed, marking them individually costs more
        // than treating everything as dirty
        let alive = p.domain_size() - p.singleton_count();
        let next_dirty = if changed * 4 >= alive {
            vec![true; new_num]
        } else {
            let mut next_dirty = vec![false; new_num];
            for &v in &items {
                if subs_of_class[p.class_of(v) as usize] > 1 {
                    for &w in self.g.neighbors(v) {
                        next_dirty[colors[w as usize] as usize] = true;
                    }
                }
            }
            next_dirty
        };
        p.rebuild(&colors, new_num);
        (changed, false, next_dirty)
    }

    #[inline]
    fn get_cnt(&self, v: u32) -> u32 {
        if self.wide {
            self.cnt_wide[v as usize]
        } else {
            self.cnt[v as usize] as u32
        }
    }

    #[inline]
    fn set_cnt(&mut self, v: u32, value: u32) {
        if self.wide {
            self.cnt_wide[v as usize] = value;
        } else {
            self.cnt[v as usize] = value as u16;
        }
    }

    /// Refines to the coarsest stable partition, using every class as an
    /// initial splitter.
    pub fn refine(&mut self, p: &mut Partition) {
        let all: Vec<u32> = (0..p.num_classes() as u32).collect();
        self.refine_seeded(p, &all);
    }

    /// Refines with an explicit initial splitter set; used after
    /// individualization where only two classes changed.
    ///
    /// When the seeds cover most of the domain, refinement starts with
    /// vertex-centric bulk rounds (sequential adjacency scans); once a round
    /// stops splitting a meaningful fraction of the live vertices, the
    /// remaining work is handed to the targeted worklist.
    pub fn refine_seeded(&mut self, p: &mut Partition, seeds: &[u32]) {
        let mut seeds = seeds;
        let all: Vec<u32>;
        if self.g.uniform_arc_colors() {
            let covered: usize = seeds.iter().map(|&c| p.class_size(c)).sum();
            if 2 * covered >= p.domain_size() {
                if self.bulk_phase(p) {
                    return; // reached the fixpoint
                }
                all = (0..p.num_classes() as u32).collect();
                seeds = &all;
            }
        }
        self.queue.clear();
        self.queue_head = 0;
        self.in_queue.clear();
        self.in_queue.resize(p.num_classes(), false);
        for &s in seeds {
            if !self.in_queue[s as usize] {
                self.in_queue[s as usize] = true;
                self.queue.push(s);
            }
        }
        let mut snapshot: Vec<u32> = Vec::new();
        // FIFO order: coarse splitters go first, which keeps the number of
        // re-traversals of the arc lists down
        while self.queue_head < self.queue.len() {
            if p.is_discrete() {
                break; // nothing left to split
            }
            let s = self.queue[self.queue_head];
            self.queue_head += 1;
            self.stat_pops += 1;
            self.in_queue[s as usize] = false;
            snapshot.clear();
            snapshot.extend_from_slice(p.members(s));
            if self.g.uniform_arc_colors() {
                self.count_and_split(p, &snapshot, None);
            } else {
                // group the arcs into the splitter by arc color pair and
                // split once per key, in ascending key order
                self.arc_buf.clear();
                for &w in &snapshot {
                    for (v, c_out, c_in) in self.g.arcs(w) {
                        // key for v is (color(v,w), color(w,v)) = (c_in, c_out)
                        self.arc_buf.push((c_in, c_out, v));
                    }
                }
                let mut buf = core::mem::take(&mut self.arc_buf);
                buf.sort_unstable();
                let mut i = 0;
                while i < buf.len() {
                    let key = (buf[i].0, buf[i].1);
                    let run_start = i;
                    while i < buf.len() && (buf[i].0, buf[i].1) == key {
                        i += 1;
                    }
                    let vs: Vec<u32> = buf[run_start..i].iter().map(|t| t.2).collect();
                    self.count_and_split(p, &[], Some(&vs));
                }
                self.arc_buf = buf;
            }
        }
    }

    /// Counts hits into the splitter (either all arcs of `snapshot`, or an
    /// explicit arc-endpoint list) and splits every touched class by count.
    fn count_and_split(&mut self, p: &mut Partition, snapshot: &[u32], endpoints: Option<&[u32]>) {
        self.touched.clear();
        match endpoints {
            None if snapshot.len() == p.domain_size() => {
                // the splitter is the whole domain: counts are the degrees
                self.stat_arcs += 2 * self.g.m() as u64;
                for v in 0..p.domain_size() as u32 {
                    let deg = self.g.degree(v) as u32;
                    if deg > 0 && !p.is_singleton(v) {
                        self.touched.push(v);
                        self.set_cnt(v, deg);
                    }
                }
            }
            None => {
                for &w in snapshot {
                    self.stat_arcs += self.g.neighbors(w).len() as u64;
                    if self.wide {
                        for &v in self.g.neighbors(w) {
                            if p.is_singleton(v) {
                                continue; // can never split again
                            }
                            if self.cnt_wide[v as usize] == 0 {
                                self.touched.push(v);
                            }
                            self.cnt_wide[v as usize] += 1;
                        }
                    } else {
                        for &v in self.g.neighbors(w) {
                            if p.is_singleton(v) {
                                continue;
                            }
                            if self.cnt[v as usize] == 0 {
                                self.touched.push(v);
                            }
                            self.cnt[v as usize] += 1;
                        }
                    }
                }
            }
            Some(vs) => {
                for &v in vs {
                    if p.is_singleton(v) {
                        continue;
                    }
                    if self.get_cnt(v) == 0 {
                        self.touched.push(v);
                    }
                    self.set_cnt(v, self.get_cnt(v) + 1);
                }
            }
        }
        self.stat_touched += self.touched.len() as u64;
        // touched members bucketed per class, each bucket sorted by count
        for &v in &self.touched {
            if p.is_singleton(v) {
                continue; // the class may have shrunk to one since counting
            }
            let c = p.class_of(v);
            if self.bucket_of.len() < p.num_classes() {
                self.bucket_of.resize(p.num_classes(), u32::MAX);
            }
            if self.bucket_of[c as usize] == u32::MAX {
                let slot = self.free_buckets.pop().unwrap_or_else(|| {
                    self.buckets.push(Vec::new());
                    (self.buckets.len() - 1) as u32
                });
                self.bucket_of[c as usize] = slot;
                self.dirty.push(c);
            }
            let count = self.get_cnt(v);
            self.buckets[self.bucket_of[c as usize] as usize].push((count, v));
        }
        let dirty = core::mem::take(&mut self.dirty);
        for &c in &dirty {
            let slot = self.bucket_of[c as usize];
            self.bucket_of[c as usize] = u32::MAX;
            let mut touched = core::mem::take(&mut self.buckets[slot as usize]);
            self.free_buckets.push(slot);
            touched.sort_unstable();
            let parts = p.split_touched(c, &touched);
            touched.clear();
            self.buckets[slot as usize] = touched;
            if parts.is_empty() {
                continue;
            }
            self.in_queue.resize(p.num_classes(), false);
            if self.in_queue[c as usize] {
                // the split class was still pending: all parts must be used
                for &(id, _) in &parts {
                    if !self.in_queue[id as usize] {
                        self.in_queue[id as usize] = true;
                        self.queue.push(id);
                    }
                }
            } else {
                // all but the largest part; first maximum wins on ties
                let largest = parts
                    .iter()
                    .enumerate()
                    .max_by_key(|(i, (_, sz))| (*sz, usize::MAX - i))
                    .map(|(i, _)| i)
                    .unwrap();
                for (i, &(id, _)) in parts.iter().enumerate() {
                    if i != largest && !self.in_queue[id as usize] {
                        self.in_queue[id as usize] = true;
                        self.queue.push(id);
                    }
                }
            }
        }
        if self.wide {
            for &v in &self.touched {
                self.cnt_wide[v as usize] = 0;
            }
        } else {
            for &v in &self.touched {
                self.cnt[v as usize] = 0;
            }
        }
        self.dirty = dirty;
        self.dirty.clear();
    }
}

/// Coarsest stable refinement of `initial`, via the worklist engine.
pub fn stable_partition(g: &ColoredGraph, initial: &[u32]) -> Partition {
    let mut p = Partition::from_colors(initial);
    let mut r = Refiner::new(g);
    r.refine(&mut p);
    p
}
