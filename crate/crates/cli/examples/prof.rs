use std::time::Instant;
use isokit_core::refine::{Partition, Refiner};
fn main() {
    for exp in [16usize, 17] {
        let n = 1usize << exp;
        let g = isokit_core::gen::random_gnm(n, 10 * n, 42).unwrap();
        let t0 = Instant::now();
        let mut p = Partition::from_colors(g.vertex_colors());
        let built = t0.elapsed().as_secs_f64()*1000.0;
        let mut r = Refiner::new(&g);
        let t1 = Instant::now();
        r.refine(&mut p);
        let refined = t1.elapsed().as_secs_f64()*1000.0;
        println!("n=2^{exp} from_colors={built:.1}ms refine={refined:.1}ms bulk_rounds={} bulk_ms={:.1} worklist_ms={:.1} pops={} arcs={}",
                 r.stat_bulk_rounds, r.stat_bulk_ms, refined - r.stat_bulk_ms, r.stat_pops, r.stat_arcs);
    }
}
