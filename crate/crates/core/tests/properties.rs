mod common;

use mixpaths::{
    bound_evolving, build_profile, chi_square_distance, empirical_mixing_time, ergodic_flow, r_ergodic_flow,
    r_modified_conductance, root_profile_set, time_reversal, Distribution, MarkovChain, ProfileKind, SubsetMask,
};
use proptest::prelude::*;

/// Ergodic chains on 2..=5 states: a spanning cycle with weight at least
/// 0.1 plus random extra arcs.
fn chain_strategy() -> impl Strategy<Value = MarkovChain> {
    (2usize..=5)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(0.0f64..1.0, n * n),
                prop::collection::vec(any::<bool>(), n * n),
                prop::collection::vec(0.1f64..1.0, n),
            )
        })
        .prop_map(|(n, weights, keep, cycle)| {
            let mut rows = vec![vec![0.0; n]; n];
            for x in 0..n {
                for y in 0..n {
                    if keep[x * n + y] {
                        rows[x][y] = weights[x * n + y];
                    }
                }
                rows[x][(x + 1) % n] += cycle[x];
                let total: f64 = rows[x].iter().sum();
                rows[x].iter_mut().for_each(|v| *v /= total);
            }
            MarkovChain::new(rows).unwrap()
        })
}

fn chain_and_masks() -> impl Strategy<Value = (MarkovChain, u64, u64)> {
    chain_strategy().prop_flat_map(|c| {
        let full = (1u64 << c.n()) - 1;
        (Just(c), 0..=full, 0..=full)
    })
}

fn chain_and_proper_mask() -> impl Strategy<Value = (MarkovChain, u64)> {
    chain_strategy().prop_flat_map(|c| {
        let full = (1u64 << c.n()) - 1;
        (Just(c), 1..full)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn stationary_is_fixed(c in chain_strategy()) {
        let pi = c.pi();
        for y in 0..c.n() {
            let flow: f64 = (0..c.n()).map(|x| pi[x] * c.p(x, y)).sum();
            prop_assert!((flow - pi[y]).abs() < 1e-12);
        }
        prop_assert!((pi.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reversal_is_an_involution(c in chain_strategy()) {
        let back = time_reversal(&time_reversal(&c));
        for x in 0..c.n() {
            for y in 0..c.n() {
                prop_assert!((back.p(x, y) - c.p(x, y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reversal_swaps_flows((c, a, b) in chain_and_masks()) {
        let rev = time_reversal(&c);
        let sa = SubsetMask::from_bits(a, c.pi()).unwrap();
        let sb = SubsetMask::from_bits(b, c.pi()).unwrap();
        let ra = SubsetMask::from_bits(a, rev.pi()).unwrap();
        let rb = SubsetMask::from_bits(b, rev.pi()).unwrap();
        prop_assert!((ergodic_flow(&rev, &ra, &rb) - ergodic_flow(&c, &sb, &sa)).abs() < 1e-12);
    }

    #[test]
    fn capped_flow_bounds((c, a, b) in chain_and_masks(), r in 0.01f64..=1.0) {
        let sa = SubsetMask::from_bits(a, c.pi()).unwrap();
        let sb = SubsetMask::from_bits(b, c.pi()).unwrap();
        let q = ergodic_flow(&c, &sa, &sb);
        let qr = r_ergodic_flow(&c, &sa, &sb, r).unwrap();
        prop_assert!(qr <= q + 1e-12);
        prop_assert!(qr <= r * sb.measure() + 1e-12);
        prop_assert!(qr >= -1e-15);
        prop_assert!((r_ergodic_flow(&c, &sa, &sb, 1.0).unwrap() - q).abs() < 1e-12);
    }

    #[test]
    fn complement_symmetry((c, a) in chain_and_proper_mask(), r in 0.01f64..=1.0) {
        let pi = c.pi();
        let sa = SubsetMask::from_bits(a, pi).unwrap();
        let sc = sa.complement(pi);
        let psi = root_profile_set(&c, &sa).unwrap();
        prop_assert!((psi - root_profile_set(&c, &sc).unwrap()).abs() < 1e-12);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&psi));
        prop_assert_eq!(
            r_modified_conductance(&c, &sa, r).unwrap(),
            r_modified_conductance(&c, &sc, r).unwrap()
        );
    }

    #[test]
    fn distance_never_increases(c in chain_strategy(), x in 0usize..5) {
        let x = x % c.n();
        let mut sigma = Distribution::point_mass(c.n(), x);
        let mut last = chi_square_distance(&sigma, &c);
        for _ in 0..40 {
            sigma = sigma.step(&c);
            let d = chi_square_distance(&sigma, &c);
            prop_assert!(d <= last + 1e-12);
            last = d;
        }
    }

    #[test]
    fn mixing_time_monotone_in_epsilon(c in chain_strategy(), x in 0usize..5, e1 in 0.05f64..1.5, e2 in 0.05f64..1.5) {
        let x = x % c.n();
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let t_lo = empirical_mixing_time(&c, x, lo, 20_000).unwrap().steps();
        let t_hi = empirical_mixing_time(&c, x, hi, 20_000).unwrap().steps();
        match (t_lo, t_hi) {
            (Some(a), Some(b)) => prop_assert!(b <= a),
            (None, _) => {}
            (Some(_), None) => prop_assert!(false, "larger epsilon not reached"),
        }
    }

    #[test]
    fn mixing_time_matches_oracle(c in chain_strategy(), x in 0usize..5, eps in 0.05f64..1.0) {
        let x = x % c.n();
        let lib = empirical_mixing_time(&c, x, eps, 5_000).unwrap().steps().map(|t| t as usize);
        prop_assert_eq!(lib, common::oracle_mixing_time(&c, x, eps, 5_000));
    }

    #[test]
    fn profiles_are_non_increasing(c in chain_strategy(), r in 0.05f64..=1.0) {
        for kind in [ProfileKind::RConductance, ProfileKind::RModifiedConductance, ProfileKind::Conductance, ProfileKind::Root] {
            let p = build_profile(&c, kind, kind.uses_r().then_some(r)).unwrap();
            prop_assert!(p.is_non_increasing());
        }
    }

    #[test]
    fn evolving_bound_is_sound(c in chain_strategy(), x in 0usize..5) {
        let x = x % c.n();
        for eps in [0.5, 0.25] {
            if let Some(b) = bound_evolving(&c, x, eps, false).unwrap().finite() {
                let tau = common::oracle_mixing_time(&c, x, eps, 100_000);
                prop_assert!(tau.is_some_and(|t| t as f64 <= b), "bound {} tau {:?}", b, tau);
            }
        }
    }
}
