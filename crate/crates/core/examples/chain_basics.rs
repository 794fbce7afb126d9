//! Stationary distribution, time reversal and the L2 mixing time of a small
//! non-reversible chain.

use mixpaths::{empirical_mixing_time, time_reversal, Distribution, MarkovChain};

fn main() -> mixpaths::Result<()> {
    let chain = MarkovChain::new(vec![
        vec![0.0, 0.5, 0.5],
        vec![0.5, 0.0, 0.5],
        vec![0.3, 0.7, 0.0],
    ])?;
    println!("pi    = {:?}", chain.pi());
    println!("alpha = {}", chain.alpha());

    let rev = time_reversal(&chain);
    for x in 0..chain.n() {
        println!("P*({x},.) = {:?}", rev.row(x));
    }

    let mut sigma = Distribution::point_mass(chain.n(), 0);
    for t in 0..6 {
        println!("t={t}  chi distance {:.6}", mixpaths::chi_square_distance(&sigma, &chain));
        sigma = sigma.step(&chain);
    }
    for eps in [0.5, 0.25, 0.01] {
        println!("tau_0({eps}) = {}", empirical_mixing_time(&chain, 0, eps, 10_000)?);
    }
    Ok(())
}
