//! Max-degree walk on an Eulerian multigraph with one loop per vertex: the
//! path bounds against d n^2 log(1/eps) and the true mixing time.

use mixpaths::{bound_paths_holding, build_bfs_paths, empirical_mixing_time, eulerian_walk, Multigraph};

fn main() -> mixpaths::Result<()> {
    let eps: f64 = 0.5;
    println!("n\td\tbound1\tbound2\tdn^2log\ttau");
    for n in 3..=8 {
        let mut g = Multigraph::new(n);
        for v in 0..n {
            g.add_arc(v, v, 1);
            g.add_arc(v, (v + 1) % n, 1);
            g.add_arc(v, (v + 2) % n, 1);
        }
        let d = g.max_degree();
        let chain = eulerian_walk(&g, d)?;
        let family = build_bfs_paths(&chain)?;
        let b = bound_paths_holding(&chain, 0, eps, &family)?;
        let crude = (d as f64 * (n * n) as f64 * (1.0 / eps).ln()).ceil();
        let tau = empirical_mixing_time(&chain, 0, eps, 100_000)?;
        println!("{n}\t{d}\t{}\t{}\t{crude}\t{tau}", b.bound1, b.bound2);
    }
    Ok(())
}
