//! r-conductance, modified conductance and classical conductance profiles of
//! a lazy cycle, set by set and as step functions.

use mixpaths::{
    build_profile, conductance_classic, cycle_walk, delta0, r_conductance, r_modified_conductance, ProfileKind,
    SubsetMask,
};

fn main() -> mixpaths::Result<()> {
    let chain = cycle_walk(6, 0.25)?;
    let r = 0.25;

    println!("A\tpi(A)\tPhi\tPhi_r\tphi^r");
    for states in [vec![0], vec![0, 1], vec![0, 3], vec![0, 1, 2]] {
        let a = SubsetMask::from_states(&states, chain.pi())?;
        println!(
            "{a}\t{:.3}\t{:.4}\t{:.4}\t{:.4}",
            a.measure(),
            conductance_classic(&chain, &a)?,
            r_conductance(&chain, &a, r)?,
            r_modified_conductance(&chain, &a, r)?,
        );
    }

    for kind in [ProfileKind::Conductance, ProfileKind::RConductance, ProfileKind::RModifiedConductance] {
        let profile = build_profile(&chain, kind, kind.uses_r().then_some(r))?;
        println!("\n{} (r = {r})\n{}", kind.name(), profile.to_tsv());
    }
    println!("delta0 = {}", delta0(&chain)?);
    Ok(())
}
