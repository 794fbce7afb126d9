mod common;

use approx::assert_relative_eq;
use mixpaths::{
    build_alternating_paths, build_bfs_paths, cycle_walk, delta0, edge_congestion, integrate_reciprocal,
    r_conductance, root_profile_set, stationary_distribution, subset::proper_masks, vertex_congestion, Error,
    MarkovChain, ProfileKind, Step, StepProfile, SubsetMask, Weight,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_chains(seed: u64, count: usize) -> Vec<MarkovChain> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| common::small_random_chain(&mut rng, 2 + k % 5, k % 3 == 0))
        .collect()
}

/// Composite Simpson rule with `m` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / m as f64;
    let mut sum = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

#[test]
fn integral_matches_quadrature() {
    let profile = StepProfile::new(
        ProfileKind::RConductance,
        Some(0.3),
        vec![Step { s_hi: 0.2, value: 0.8 }, Step { s_hi: 0.5, value: 0.35 }],
    )
    .unwrap();
    let g = |v: f64, w: Weight| match w {
        Weight::Plain => v,
        Weight::Square => v * v,
        Weight::ModifiedMin { r } => (v * v).min(r * v),
    };
    // Pieces as the test knows them: (0, 0.2] -> 0.8, (0.2, inf) -> 0.35.
    let value_at = |s: f64| if s <= 0.2 { 0.8 } else { 0.35 };
    for weight in [Weight::Plain, Weight::Square, Weight::ModifiedMin { r: 0.3 }] {
        for (lo, hi) in [(0.01, 0.15), (0.05, 0.5), (0.04, 16.0), (0.3, 4.0)] {
            let mut cuts = vec![lo];
            if lo < 0.2 && 0.2 < hi {
                cuts.push(0.2);
            }
            cuts.push(hi);
            let oracle: f64 = cuts
                .windows(2)
                .map(|w| {
                    let mid = 0.5 * (w[0] + w[1]);
                    let v = g(value_at(mid), weight);
                    simpson(|s| 1.0 / (s * v), w[0], w[1], 20_000)
                })
                .sum();
            let lib = integrate_reciprocal(&profile, weight, lo, hi).unwrap();
            assert!((lib - oracle).abs() < 1e-9, "{weight:?} [{lo},{hi}]: {lib} vs {oracle}");
        }
    }
}

#[test]
fn integral_of_vanishing_profile_is_infinite() {
    let profile = StepProfile::new(
        ProfileKind::Root,
        None,
        vec![Step { s_hi: 0.25, value: 0.5 }, Step { s_hi: 0.5, value: 0.0 }],
    )
    .unwrap();
    assert!(integrate_reciprocal(&profile, Weight::Plain, 0.1, 2.0).unwrap().is_infinite());
    assert!(integrate_reciprocal(&profile, Weight::Plain, 0.1, 0.2).unwrap().is_finite());
}

#[test]
fn stationary_matches_power_iteration() {
    for c in random_chains(11, 40) {
        // Cesaro average handles periodic chains.
        let n = c.n();
        let mut v = vec![1.0 / n as f64; n];
        let mut avg = vec![0.0; n];
        let steps = 20_000;
        for _ in 0..steps {
            let mut next = vec![0.0; n];
            for a in 0..n {
                for b in 0..n {
                    next[b] += v[a] * c.p(a, b);
                }
            }
            v = next;
            avg.iter_mut().zip(&v).for_each(|(s, x)| *s += x / steps as f64);
        }
        let solved = stationary_distribution(&c.rows()).unwrap();
        for (a, b) in solved.weights().iter().zip(&avg) {
            assert!((a - b).abs() < 1e-3, "{a} vs {b}");
        }
    }
}

/// All-pairs shortest path lengths by Floyd-Warshall.
fn distances(c: &MarkovChain) -> Vec<Vec<usize>> {
    let n = c.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for x in 0..n {
        d[x][x] = 0;
        for y in 0..n {
            if x != y && c.p(x, y) > 0.0 {
                d[x][y] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

#[test]
fn bfs_paths_are_shortest() {
    for c in random_chains(12, 40) {
        let family = build_bfs_paths(&c).unwrap();
        let d = distances(&c);
        for (x, y) in family.pairs() {
            assert_eq!(family.len_of(x, y), d[x][y]);
        }
    }
}

/// Congestions straight from the definitions.
fn oracle_congestion(c: &MarkovChain, paths: &dyn Fn(usize, usize) -> Vec<usize>) -> (f64, f64) {
    let n = c.n();
    let pi = c.pi();
    let mut rho_e: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            if a == b || c.p(a, b) == 0.0 {
                continue;
            }
            let mut load = 0.0;
            for x in 0..n {
                for y in (0..n).filter(|&y| y != x) {
                    let p = paths(x, y);
                    if p.windows(2).any(|w| w[0] == a && w[1] == b) {
                        load += pi[x] * pi[y];
                    }
                }
            }
            rho_e = rho_e.max(load / (pi[a] * c.p(a, b)));
        }
    }
    let mut rho_v: f64 = 0.0;
    for v in 0..n {
        let mut load = 0.0;
        for x in 0..n {
            for y in (0..n).filter(|&y| y != x) {
                let fwd = paths(x, y).contains(&v);
                let back = paths(y, x).contains(&v);
                if fwd {
                    load += if back { 0.5 } else { 1.0 } * pi[x] * pi[y];
                }
            }
        }
        rho_v = rho_v.max(load / pi[v]);
    }
    (rho_e, rho_v)
}

#[test]
fn congestion_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for c in random_chains(14, 40) {
        for family in [build_bfs_paths(&c).unwrap(), common::random_family(&c, &mut rng)] {
            let (rho_e, rho_v) = oracle_congestion(&c, &|x, y| family.path(x, y).to_vec());
            assert_relative_eq!(edge_congestion(&c, &family).unwrap(), rho_e, max_relative = 1e-12);
            assert_relative_eq!(vertex_congestion(&c, &family), rho_v, max_relative = 1e-12);
        }
    }
}

#[test]
fn worked_congestion_values() {
    // Two-state walk with P(0,1) = P(1,0) = 1/4: each edge carries
    // pi(0) pi(1) = 1/4 against capacity 1/8.
    let c = mixpaths::complete_graph_walk(2).unwrap();
    let family = build_bfs_paths(&c).unwrap();
    assert_relative_eq!(edge_congestion(&c, &family).unwrap(), 2.0, max_relative = 1e-15);
}

/// Shortest odd alternating length from `x` to every `y`, by expanding
/// layers `L_{k+1} = P`-successors (k even) or `P*`-successors (k odd).
fn layered_alternating_lengths(c: &MarkovChain, x: usize) -> Vec<Option<usize>> {
    let n = c.n();
    let mut best = vec![None; n];
    let mut layer = vec![false; n];
    layer[x] = true;
    for k in 0..(4 * n + 2) {
        let mut next = vec![false; n];
        for a in (0..n).filter(|&a| layer[a]) {
            for b in 0..n {
                let step = if k % 2 == 0 { c.p(a, b) } else { c.pi()[b] * c.p(b, a) };
                if step > 0.0 {
                    next[b] = true;
                }
            }
        }
        layer = next;
        if k % 2 == 0 {
            for y in 0..n {
                if layer[y] && best[y].is_none() {
                    best[y] = Some(k + 1);
                }
            }
        }
    }
    best
}

#[test]
fn alternating_paths_match_layered_search() {
    let mut chains = random_chains(15, 60);
    chains.push(mixpaths::flip());
    chains.push(mixpaths::rotation(4).unwrap());
    chains.push(mixpaths::rotation(5).unwrap());
    for c in chains {
        let oracle: Vec<Vec<Option<usize>>> = (0..c.n()).map(|x| layered_alternating_lengths(&c, x)).collect();
        let any_missing = oracle.iter().flatten().any(Option::is_none);
        match build_alternating_paths(&c) {
            Ok(fam) => {
                assert!(!any_missing);
                for x in 0..c.n() {
                    for y in 0..c.n() {
                        assert_eq!(Some(fam.path(x, y).len() - 1), oracle[x][y]);
                    }
                }
            }
            Err(Error::AlternatingPaths { failed, .. }) => {
                let expected: Vec<(usize, usize)> = (0..c.n())
                    .flat_map(|x| (0..c.n()).map(move |y| (x, y)))
                    .filter(|&(x, y)| oracle[x][y].is_none())
                    .collect();
                assert_eq!(failed, expected);
            }
            Err(e) => panic!("{e}"),
        }
    }
}

/// `psi(A) = 1 - int_0^1 sqrt(pi(A_u)(1 - pi(A_u))) du / sqrt(pi(A) pi(A^c))`
/// with `A_u = {y : Q(A, y) >= u pi(y)}`, integrated exactly between the
/// sorted ratios `Q(A,y)/pi(y)`.
fn oracle_root_profile(c: &MarkovChain, a: &SubsetMask) -> f64 {
    let n = c.n();
    let pi = c.pi();
    let ratio: Vec<f64> = (0..n)
        .map(|y| a.states().map(|x| pi[x] * c.p(x, y)).sum::<f64>() / pi[y])
        .collect();
    let mut cuts: Vec<f64> = ratio.iter().map(|r| r.clamp(0.0, 1.0)).collect();
    cuts.push(0.0);
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    let mut integral = 0.0;
    for w in cuts.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let u = 0.5 * (w[0] + w[1]);
        // Both sides summed directly: 1 - m loses everything when m rounds
        // to just below 1.
        let m: f64 = (0..n).filter(|&y| ratio[y] >= u).map(|y| pi[y]).sum();
        let out: f64 = (0..n).filter(|&y| ratio[y] < u).map(|y| pi[y]).sum();
        integral += (w[1] - w[0]) * (m * out).sqrt();
    }
    let inside: f64 = a.states().map(|v| pi[v]).sum();
    let outside: f64 = (0..n).filter(|&v| !a.contains(v)).map(|v| pi[v]).sum();
    1.0 - integral / (inside * outside).sqrt()
}

#[test]
fn root_profile_matches_oracle() {
    for c in random_chains(16, 40) {
        for bits in proper_masks(c.n()) {
            let a = SubsetMask::from_bits(bits, c.pi()).unwrap();
            let lib = root_profile_set(&c, &a).unwrap();
            let oracle = oracle_root_profile(&c, &a);
            assert!((lib - oracle).abs() < 1e-12, "{bits:b}: {lib} vs {oracle}");
        }
    }
}

#[test]
fn r_conductance_matches_definition() {
    for c in random_chains(17, 30) {
        let pi = c.pi();
        for bits in proper_masks(c.n()) {
            let a = SubsetMask::from_bits(bits, pi).unwrap();
            for r in [0.1, 0.35, 0.5, 1.0] {
                let capped = |from: &SubsetMask, into: &SubsetMask| -> f64 {
                    into.states()
                        .map(|y| {
                            let q: f64 = from.states().map(|x| pi[x] * c.p(x, y)).sum();
                            q.min(r * pi[y])
                        })
                        .sum()
                };
                let ac = a.complement(pi);
                let q_r = capped(&a, &ac).min(capped(&ac, &a));
                let expected = q_r / (a.measure() * (1.0 - a.measure()));
                assert_relative_eq!(r_conductance(&c, &a, r).unwrap(), expected, max_relative = 1e-12);
            }
        }
    }
}

#[test]
fn delta0_matches_brute_force() {
    for c in random_chains(18, 30) {
        let n = c.n();
        let mut measures: Vec<f64> = (0..(1u64 << n))
            .map(|bits| (0..n).filter(|&v| bits >> v & 1 == 1).map(|v| c.pi()[v]).sum())
            .collect();
        measures.sort_by(f64::total_cmp);
        let gap = measures
            .windows(2)
            .map(|w| w[1] - w[0])
            .filter(|&g| g > 1e-12)
            .fold(f64::INFINITY, f64::min);
        assert_relative_eq!(delta0(&c).unwrap(), gap, max_relative = 1e-9);
    }
    assert_relative_eq!(delta0(&cycle_walk(4, 0.5).unwrap()).unwrap(), 0.25, max_relative = 1e-12);
}
