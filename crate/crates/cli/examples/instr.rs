use isokit_core::refine::{Partition, Refiner};
fn main() {
    for exp in [14usize, 15, 16, 17] {
        let n = 1usize << exp;
        let g = isokit_core::gen::random_gnm(n, 10 * n, 42).unwrap();
        let mut p = Partition::from_colors(g.vertex_colors());
        let mut r = Refiner::new(&g);
        r.refine(&mut p);
        println!("n=2^{exp} pops={} arcs={} touched={} classes={}", r.stat_pops, r.stat_arcs, r.stat_touched, p.num_classes());
    }
}
