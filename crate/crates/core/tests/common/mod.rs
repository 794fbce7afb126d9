//! Helpers shared by the integration tests. Everything here is written
//! independently of the library's own routines so it can serve as an oracle.

#![allow(dead_code)]

use mixpaths::{MarkovChain, PathFamily};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Dense `P^t` row for start `x`, by repeated vector-matrix products.
pub fn distribution_after(chain: &MarkovChain, x: usize, t: usize) -> Vec<f64> {
    let n = chain.n();
    let mut v = vec![0.0; n];
    v[x] = 1.0;
    for _ in 0..t {
        let mut next = vec![0.0; n];
        for (a, &mass) in v.iter().enumerate() {
            for (b, cell) in next.iter_mut().enumerate() {
                *cell += mass * chain.p(a, b);
            }
        }
        v = next;
    }
    v
}

/// `sqrt(sum_y pi(y) (k(y)/pi(y) - 1)^2)`.
pub fn chi_distance(chain: &MarkovChain, dist: &[f64]) -> f64 {
    dist.iter()
        .zip(chain.pi())
        .map(|(&k, &w)| w * (k / w - 1.0).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// First `t` with chi distance at most `eps`, by brute-force iteration.
pub fn oracle_mixing_time(chain: &MarkovChain, x: usize, eps: f64, cap: usize) -> Option<usize> {
    let n = chain.n();
    let mut v = vec![0.0; n];
    v[x] = 1.0;
    for t in 0..=cap {
        if chi_distance(chain, &v) <= eps {
            return Some(t);
        }
        let mut next = vec![0.0; n];
        for (a, &mass) in v.iter().enumerate() {
            for (b, cell) in next.iter_mut().enumerate() {
                *cell += mass * chain.p(a, b);
            }
        }
        v = next;
    }
    None
}

/// Random simple path from `x` to `y` along positive transitions, found by
/// depth-first search with shuffled successor order.
pub fn random_simple_path(chain: &MarkovChain, x: usize, y: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    fn dfs(
        chain: &MarkovChain,
        cur: usize,
        y: usize,
        seen: &mut Vec<bool>,
        path: &mut Vec<usize>,
        rng: &mut ChaCha8Rng,
    ) -> bool {
        if cur == y {
            return true;
        }
        let mut next: Vec<usize> = (0..chain.n())
            .filter(|&w| w != cur && chain.p(cur, w) > 0.0 && !seen[w])
            .collect();
        next.shuffle(rng);
        for w in next {
            seen[w] = true;
            path.push(w);
            if dfs(chain, w, y, seen, path, rng) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut seen = vec![false; chain.n()];
    seen[x] = true;
    let mut path = vec![x];
    assert!(dfs(chain, x, y, &mut seen, &mut path, rng), "chain is not strongly connected");
    path
}

/// A random family of simple paths for every ordered pair `x != y`.
pub fn random_family(chain: &MarkovChain, rng: &mut ChaCha8Rng) -> PathFamily {
    let n = chain.n();
    let mut paths = vec![Vec::new(); n * n];
    for x in 0..n {
        for y in 0..n {
            if x != y {
                paths[x * n + y] = random_simple_path(chain, x, y, rng);
            }
        }
    }
    PathFamily::new(chain, paths).expect("random family is valid")
}

/// Random ergodic chain with strictly positive entries on a random support
/// containing a Hamiltonian cycle; rows are normalised uniform draws.
pub fn small_random_chain(rng: &mut ChaCha8Rng, n: usize, lazy: bool) -> MarkovChain {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        rows[order[i]][order[(i + 1) % n]] = rng.random_range(0.1..1.0);
    }
    for row in rows.iter_mut() {
        for cell in row.iter_mut() {
            if *cell == 0.0 && rng.random_bool(0.35) {
                *cell = rng.random_range(0.05..1.0);
            }
        }
    }
    for (x, row) in rows.iter_mut().enumerate() {
        if lazy {
            row[x] += rng.random_range(0.1..1.0);
        }
        let total: f64 = row.iter().sum();
        row.iter_mut().for_each(|v| *v /= total);
    }
    MarkovChain::new(rows).expect("random chain is ergodic")
}
