use std::time::Instant;
fn main() {
    for exp in [16usize, 17] {
        let n = 1usize << exp;
        let g = isokit_core::gen::random_gnm(n, 10 * n, 42).unwrap();
        // phase A: initial partition + first (whole-domain) split only
        for reps in 0..3 {
            let t = Instant::now();
            let p = isokit_core::refine::stable_partition(&g, g.vertex_colors());
            let full = t.elapsed().as_secs_f64()*1000.0;
            // degree histogram pass cost (sequential baseline)
            let t = Instant::now();
            let mut acc = 0u64;
            for v in 0..n as u32 { acc += g.degree(v) as u64; }
            let seq = t.elapsed().as_secs_f64()*1000.0;
            // random-access baseline over class-sized array with arc targets
            let t = Instant::now();
            let mut cnt = vec![0u16; n];
            for v in 0..n as u32 { for &w in g.neighbors(v) { cnt[w as usize] += 1; } }
            let rand_pass = t.elapsed().as_secs_f64()*1000.0;
            std::hint::black_box((acc, cnt[0], p.num_classes()));
            if reps == 2 { println!("n=2^{exp} full={full:.1}ms seq={seq:.2}ms one_rand_pass={rand_pass:.1}ms"); }
        }
    }
}
