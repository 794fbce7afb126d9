//! Every mixing-time bound for one chain next to the true mixing time.

use mixpaths::{build_alternating_paths, build_bfs_paths, BoundReport, MarkovChain, ReportOptions};

fn main() -> mixpaths::Result<()> {
    // A walk with holding probability 0.2 whose reversal differs from it.
    let chain = MarkovChain::new(vec![
        vec![0.2, 0.6, 0.0, 0.2],
        vec![0.0, 0.2, 0.8, 0.0],
        vec![0.3, 0.0, 0.2, 0.5],
        vec![0.8, 0.0, 0.0, 0.2],
    ])?;
    let plain = build_bfs_paths(&chain);
    let alt = build_alternating_paths(&chain);
    let options = ReportOptions {
        sharper_evolving: true,
        ..Default::default()
    };
    for eps in [0.5, 0.1] {
        let report = BoundReport::build(&chain, "four-state", 0, eps, &plain, &alt, &options)?;
        println!("{}", report.to_text());
    }
    Ok(())
}
