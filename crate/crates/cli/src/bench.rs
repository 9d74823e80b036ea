//! Benchmark suites: seeded instance ladders with per-size medians and
//! fitted growth exponents.

use std::time::Instant;

use isokit_core::gen;
use isokit_core::perm::{Perm, PermGroup};
use isokit_core::refine::stable_partition;
use isokit_core::si::{luks_string_iso, GString, SIInstance};
use isokit_core::tcr::{is_graph_isomorphism, iso};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub struct BenchConfig {
    pub suite: String,
    pub seed: u64,
    pub repeats: usize,
    pub threads: usize,
}

pub fn worker_cap() -> usize {
    std::env::var("ISO_ENGINE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
}

fn median_ms(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    samples[samples.len() / 2]
}

fn time_ms<R>(f: impl FnOnce() -> R) -> (f64, R) {
    let start = Instant::now();
    let out = f();
    (start.elapsed().as_secs_f64() * 1000.0, out)
}

/// Least-squares slope of log2(time) against log2(n).
fn fitted_exponent(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.log2(), y.log2());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Color refinement wall times over a ladder of random graphs with m = 10n.
pub fn cr_scaling(seed: u64, repeats: usize) -> Vec<Value> {
    let mut results = Vec::new();
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut medians: Vec<f64> = Vec::new();
    for (i, exp) in (14..=17).enumerate() {
        let n = 1usize << exp;
        let g = gen::random_gnm(n, 10 * n, seed.wrapping_add(i as u64)).expect("gnm fits");
        // warm-up run, then timed repeats
        let _ = stable_partition(&g, g.vertex_colors());
        let mut samples = Vec::new();
        let mut classes = 0;
        for _ in 0..repeats {
            let (ms, p) = time_ms(|| stable_partition(&g, g.vertex_colors()));
            classes = p.num_classes();
            samples.push(ms);
        }
        let med = median_ms(samples);
        points.push((n as f64, med.max(1e-6)));
        medians.push(med);
        results.push(json!({
            "instance": format!("cr-n-{n}"),
            "n": n,
            "m": g.m(),
            "wall_ms_median": med,
            "stable_classes": classes,
        }));
    }
    let ratios: Vec<f64> = medians.windows(2).map(|w| w[1] / w[0]).collect();
    results.push(json!({
        "instance": "cr-scaling-summary",
        "doubling_ratios": ratios,
        "fitted_exponent": fitted_exponent(&points),
    }));
    results
}

/// Doubling ratios of the cr-scaling ladder (used by the acceptance suite).
pub fn cr_scaling_ratios(seed: u64, repeats: usize) -> Vec<f64> {
    let results = cr_scaling(seed, repeats);
    let summary = results.last().unwrap();
    summary["doubling_ratios"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect()
}

/// Iterated wreath product of S_2 along a complete binary tree with 2^h
/// leaves: one generator per internal node swapping its two subtrees. Every
/// composition factor is C_2.
pub fn binary_tree_group(height: u32) -> PermGroup {
    let n = 1usize << height;
    let mut gens = Vec::new();
    for level in 0..height {
        let block = 1usize << (level + 1);
        for start in (0..n).step_by(block) {
            let images: Vec<u32> = (0..n as u32)
                .map(|p| {
                    if (p as usize) < start || (p as usize) >= start + block {
                        p
                    } else {
                        let off = p as usize - start;
                        (start + (off + block / 2) % block) as u32
                    }
                })
                .collect();
            gens.push(Perm::from_images(images).expect("subtree swap is a permutation"));
        }
    }
    PermGroup::new(n, gens).expect("generators share the degree")
}

/// Luks wall times on tower-group string instances of growing degree.
pub fn luks_scaling(seed: u64, repeats: usize) -> Vec<Value> {
    let mut results = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for height in 2..=6u32 {
        let group = binary_tree_group(height);
        let n = group.degree();
        let x = GString::new(2, (0..n).map(|_| rng.gen_range(0..2u32)).collect()).unwrap();
        // half the instances are genuinely isomorphic images
        let isomorphic = height % 2 == 0;
        let y = if isomorphic {
            let elems = group_element(&group, &mut rng);
            isokit_core::si::apply_perm(&x, &elems).unwrap()
        } else {
            GString::new(2, (0..n).map(|_| rng.gen_range(0..2u32)).collect()).unwrap()
        };
        let inst = SIInstance::plain(x, y, group.clone()).unwrap();
        let mut samples = Vec::new();
        let mut verdict = false;
        for _ in 0..repeats {
            let (ms, coset) = time_ms(|| luks_string_iso(&inst).expect("valid instance"));
            verdict = !coset.is_empty();
            samples.push(ms);
        }
        // cross-check against enumeration at the smallest size
        let mut oracle_checked = false;
        if n <= 8 {
            let mut oracle = false;
            group
                .for_each_element_guarded(1 << 20, &mut |g| {
                    if isokit_core::si::apply_perm(&inst.x, g).unwrap() == inst.y {
                        oracle = true;
                        false
                    } else {
                        true
                    }
                })
                .unwrap();
            assert_eq!(oracle, verdict, "luks disagrees with enumeration at degree {n}");
            oracle_checked = true;
        }
        results.push(json!({
            "instance": format!("luks-tower-{n}"),
            "degree": n,
            "group_order_log2": (n - 1),
            "wall_ms_median": median_ms(samples),
            "verdict": if verdict { "isomorphic" } else { "non-isomorphic" },
            "expected_isomorphic": isomorphic,
            "oracle_checked": oracle_checked,
        }));
        if isomorphic {
            assert!(verdict, "isomorphic tower instance must be found at degree {n}");
        }
    }
    results
}

fn group_element(group: &PermGroup, rng: &mut ChaCha8Rng) -> Perm {
    // a random-ish word in the generators
    let gens = group.generators();
    let mut out = Perm::identity(group.degree());
    for _ in 0..8 {
        out = out.compose(&gens[rng.gen_range(0..gens.len())]);
    }
    out
}

/// Isomorphism-engine wall times on seeded graph pairs, half of them
/// relabelings.
pub fn iso_corpus(seed: u64, repeats: usize, threads: usize) -> Vec<Value> {
    let sizes = [16usize, 24, 32, 48];
    let instances: Vec<(usize, u64, bool)> = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| {
            (0..4u64).map(move |j| (n, seed.wrapping_add((i as u64) * 16 + j), j % 2 == 0))
        })
        .collect();
    let workers = threads.max(1).min(instances.len());
    let chunk = instances.len().div_ceil(workers);
    let mut results: Vec<(usize, Value)> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (w, slice) in instances.chunks(chunk).enumerate() {
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for (idx, &(n, inst_seed, relabeled)) in slice.iter().enumerate() {
                    let g = gen::random_connected_bounded_degree(n, 4, inst_seed).unwrap();
                    let h = if relabeled {
                        let mut rng = ChaCha8Rng::seed_from_u64(inst_seed ^ 0x5eed);
                        let mut order: Vec<u32> = (0..n as u32).collect();
                        use rand::seq::SliceRandom;
                        order.shuffle(&mut rng);
                        g.relabel(&order).unwrap()
                    } else {
                        gen::random_connected_bounded_degree(n, 4, inst_seed ^ 0xbeef).unwrap()
                    };
                    let mut samples = Vec::new();
                    let mut verdict = false;
                    let mut nodes = 0;
                    for _ in 0..repeats {
                        let (ms, r) = time_ms(|| iso(&g, &h));
                        if let Some(wit) = r.witness() {
                            assert!(is_graph_isomorphism(&g, &h, wit));
                        }
                        verdict = r.isomorphic;
                        nodes = r.stats.nodes;
                        samples.push(ms);
                    }
                    if relabeled {
                        assert!(verdict, "relabeled pair must be isomorphic");
                    }
                    out.push((
                        w * chunk + idx,
                        json!({
                            "instance": format!("iso-n-{n}-seed-{inst_seed}"),
                            "n": n,
                            "relabeled": relabeled,
                            "verdict": if verdict { "isomorphic" } else { "non-isomorphic" },
                            "nodes": nodes,
                            "wall_ms_median": median_ms(samples),
                        }),
                    ));
                }
                out
            }));
        }
        handles.into_iter().flat_map(|h| h.join().expect("bench worker")).collect()
    });
    results.sort_by_key(|(i, _)| *i);
    results.into_iter().map(|(_, v)| v).collect()
}

pub fn run_suite(cfg: &BenchConfig) -> Result<Vec<Value>, String> {
    match cfg.suite.as_str() {
        "cr-scaling" => Ok(cr_scaling(cfg.seed, cfg.repeats)),
        "luks-scaling" => Ok(luks_scaling(cfg.seed, cfg.repeats)),
        "iso-corpus" => Ok(iso_corpus(cfg.seed, cfg.repeats, cfg.threads)),
        other => Err(format!(
            "unknown suite {other:?}; available: cr-scaling, luks-scaling, iso-corpus"
        )),
    }
}
