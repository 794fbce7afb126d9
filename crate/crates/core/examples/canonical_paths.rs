//! Shortest-path and alternating path families, their congestion, and the
//! per-vertex load table.

use mixpaths::{
    alt_vertex_congestion, build_alternating_paths, build_bfs_paths, congestion, cycle_walk,
    derive_alternating_from_plain, paths::congestion_tsv,
};

fn main() -> mixpaths::Result<()> {
    let chain = cycle_walk(7, 0.25)?;
    let family = build_bfs_paths(&chain)?;
    let c = congestion(&chain, &family)?;
    println!("rho_v = {}  rho_e = {}  P0 = {}", c.rho_v, c.rho_e, c.p0);
    println!("longest path {}, mean length {:.4}", c.stats.max_len, c.stats.avg_len);
    println!("gamma_06 = {:?}", family.path(0, 6));
    println!("\n{}", congestion_tsv(&chain, &family));

    let built = build_alternating_paths(&chain)?;
    let derived = derive_alternating_from_plain(&chain, &family)?;
    for (name, fam) in [("built", &built), ("derived", &derived)] {
        let ac = alt_vertex_congestion(&chain, fam)?;
        println!("{name:8} alternating: rho_v = {:.4}  P0* = {}", ac.rho_v, ac.p0_star);
    }
    println!("gamma*_03 = {:?}", built.path(0, 3));

    match build_alternating_paths(&mixpaths::flip()) {
        Ok(_) => println!("flip: unexpected alternating family"),
        Err(e) => println!("flip: {e}"),
    }
    Ok(())
}
