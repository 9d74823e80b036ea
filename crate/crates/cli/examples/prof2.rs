use std::time::Instant;
// replicate the bulk round with phase timing to find the hot part
fn main() {
    let n = 1usize << 17;
    let g = isokit_core::gen::random_gnm(n, 10 * n, 42).unwrap();
    // fake "round 2" state: classes = degrees
    let colors: Vec<u32> = (0..n as u32).map(|v| g.degree(v) as u32).collect();
    let distinct = { let mut d = colors.clone(); d.sort_unstable(); d.dedup(); d.len() };
    println!("distinct degree classes: {distinct}");
    let class_of: Vec<u32> = colors.clone();
    for _ in 0..3 {
        let t = Instant::now();
        let mut sigs: Vec<u32> = Vec::new();
        let mut keys: Vec<(u32, u64, u32)> = Vec::new();
        let mut local = vec![0u32; 64];
        let mut sig_offsets: Vec<u32> = Vec::new();
        for v in 0..n as u32 {
            sig_offsets.push(sigs.len() as u32);
            for &w in g.neighbors(v) {
                local[class_of[w as usize] as usize % 64] += 1;
            }
            let from = sigs.len();
            for (c, slot) in local.iter_mut().enumerate() {
                if *slot > 0 { sigs.push(c as u32); sigs.push(*slot); *slot = 0; }
            }
            keys.push((class_of[v as usize], fp(&sigs[from..]), v));
        }
        let t_sig = t.elapsed().as_secs_f64()*1000.0;
        let t2 = Instant::now();
        keys.sort_unstable();
        let t_sort = t2.elapsed().as_secs_f64()*1000.0;
        println!("sig_pass={t_sig:.1}ms key_sort={t_sort:.1}ms sig_words={}", sigs.len());
        std::hint::black_box(&keys);
    }
}
fn fp(words: &[u32]) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15 ^ (words.len() as u64);
    for &w in words {
        let x = (w as u64 | 1 << 32).wrapping_mul(0xff51_afd7_ed55_8ccd);
        h = (h ^ x).rotate_left(29).wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    }
    h ^ (h >> 32)
}
