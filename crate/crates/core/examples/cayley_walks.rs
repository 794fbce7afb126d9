//! Word paths on Cayley graphs of Z_n and S_3: diameters, generator counts
//! and the resulting congestion bounds.

use mixpaths::{
    cayley_alternating_diameter, cayley_walk, cayley_word_paths, edge_congestion, vertex_congestion,
    GroupPresentation,
};

fn main() -> mixpaths::Result<()> {
    let cases = [
        ("z7", "id,+1", vec![0.5, 0.5]),
        ("z7", "+1,+3", vec![0.5, 0.5]),
        ("s3", "id,(12),(123)", vec![1.0 / 3.0; 3]),
    ];
    for (name, gens, probs) in cases {
        let group = GroupPresentation::parse(name, gens, &probs)?;
        let chain = cayley_walk(&group)?;
        let cp = cayley_word_paths(&group, &chain)?;
        println!("{name} <{gens}>");
        println!(
            "  Delta = {}  rho_v = {:.4}",
            cp.diameter,
            vertex_congestion(&chain, &cp.family)
        );
        println!(
            "  rho_e = {:.4} <= max N(g,s)/p(s) = {:.4}",
            edge_congestion(&chain, &cp.family)?,
            cp.edge_bound()
        );
        match cayley_alternating_diameter(&group, &chain) {
            Ok(alt) => println!("  Delta* = {}", alt.diameter),
            Err(e) => println!("  no alternating words: {e}"),
        }
    }
    Ok(())
}
