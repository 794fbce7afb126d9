//! Threshold sets A_u and the root profile of one subset, plus the whole
//! root-profile curve.

use mixpaths::{cycle_walk, root_profile_curve, root_profile_set, threshold_curve, threshold_set, SubsetMask};

fn main() -> mixpaths::Result<()> {
    let chain = cycle_walk(5, 0.5)?;
    let a = SubsetMask::from_states(&[0, 1], chain.pi())?;

    for u in [0.1, 0.5, 0.9] {
        println!("A_{u} = {}", threshold_set(&chain, &a, u)?);
    }
    let curve = threshold_curve(&chain, &a);
    println!("\n{}", curve.to_tsv());
    println!("int pi(A_u) du = {} (pi(A) = {})", curve.integrate(|m| m), a.measure());
    println!("psi(A) = {:.6}", root_profile_set(&chain, &a)?);
    println!("psi(A^c) = {:.6}", root_profile_set(&chain, &a.complement(chain.pi()))?);

    println!("\n{}", root_profile_curve(&chain)?.to_tsv());
    Ok(())
}
