fn main() {
    for exp in 13..=18 {
        let n = 1usize << exp;
        let g = isokit_core::gen::random_gnm(n, 10 * n, 42).unwrap();
        let _ = isokit_core::refine::stable_partition(&g, g.vertex_colors());
        let mut times = Vec::new();
        for _ in 0..5 {
            let t = std::time::Instant::now();
            let p = isokit_core::refine::stable_partition(&g, g.vertex_colors());
            times.push(t.elapsed().as_secs_f64() * 1000.0);
            std::hint::black_box(p.num_classes());
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        println!("n=2^{exp} {:?}", times);
    }
}
