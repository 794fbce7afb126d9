//! Exact analysis of small finite Markov chains that need not be lazy or
//! reversible: r-conductance and evolving-set profiles, canonical path
//! congestion (including alternating `P`/`P*` paths and Cayley word paths),
//! the mixing-time bounds built from them, and a brute-force auditor that
//! checks every bound against the true mixing time.
//!
//! ```
//! use mixpaths::{build_bfs_paths, cycle_walk, vertex_congestion};
//!
//! let chain = cycle_walk(5, 0.5).unwrap();
//! let paths = build_bfs_paths(&chain).unwrap();
//! assert!((vertex_congestion(&chain, &paths) - 2.0).abs() < 1e-12);
//! ```

pub mod audit;
pub mod bounds;
pub mod cayley;
pub mod chain;
pub mod commands;
pub mod error;
pub mod evolving;
pub mod flow;
pub mod generators;
pub mod group;
pub mod io;
pub mod paths;
pub mod profile;
pub mod subset;

pub use audit::{audit_chain, audit_fleet, inequality_lemma_grid, AuditOptions, AuditReport, Violation};
pub use bounds::{
    baseline_poincare, bound_evolving, bound_no_holding, bound_paths_holding, bound_paths_noholding,
    bound_small_holding, integrate_reciprocal, Baseline, BoundReport, BoundValue, ReportOptions, Weight,
};
pub use cayley::{cayley_alternating_diameter, cayley_word_paths, CayleyAlternatingPaths, CayleyPaths};
pub use chain::{
    chi_square_distance, empirical_mixing_time, ergodic_flow, stationary_distribution, time_reversal,
    Distribution, MarkovChain, MixingTime,
};
pub use error::{Error, Result};
pub use evolving::{root_profile_curve, root_profile_set, threshold_curve, threshold_set, ThresholdCurve};
pub use flow::{
    build_profile, conductance_classic, delta0, r_conductance, r_ergodic_flow, r_flow_min,
    r_modified_conductance, r_modified_flow,
};
pub use generators::{
    builtin_examples, cayley_walk, complete_graph_walk, cycle_walk, eulerian_walk, flip, random_chain,
    random_fleet, rotation, rows_equal_pi, FleetChain, Multigraph, RandomChainParams,
};
pub use group::GroupPresentation;
pub use paths::{
    alt_vertex_congestion, boundary_prob, build_alternating_paths, build_bfs_paths, congestion,
    derive_alternating_from_plain, edge_congestion, path_stats, remove_cycles, vertex_congestion,
    AlternatingPathFamily, PathFamily,
};
pub use profile::{ProfileKind, Step, StepProfile};
pub use subset::SubsetMask;
