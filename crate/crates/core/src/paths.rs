//! Canonical path families, alternating P/P* families, and their congestion
//! statistics.

use std::collections::VecDeque;

use crate::chain::MarkovChain;
use crate::error::{Error, Result};

/// A path `gamma_xy` for every ordered pair `x != y`, stored as vertex
/// sequences `x = v_0, .., v_k = y` along positive transitions of `P`.
/// `gamma_xx` is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct PathFamily {
    n: usize,
    paths: Vec<Vec<usize>>,
}

impl PathFamily {
    /// Validates `paths[x * n + y]` against `chain`. Diagonal entries must be
    /// empty.
    pub fn new(chain: &MarkovChain, paths: Vec<Vec<usize>>) -> Result<Self> {
        let n = chain.n();
        if paths.len() != n * n {
            return Err(Error::PathFamily(format!(
                "expected {} path slots, got {}",
                n * n,
                paths.len()
            )));
        }
        for x in 0..n {
            for y in 0..n {
                let path = &paths[x * n + y];
                if x == y {
                    if !path.is_empty() {
                        return Err(Error::PathFamily(format!("gamma_{x}{x} must be empty")));
                    }
                    continue;
                }
                if path.len() < 2 || path[0] != x || *path.last().unwrap() != y {
                    return Err(Error::PathFamily(format!("missing or malformed path for ({x},{y})")));
                }
                for w in path.windows(2) {
                    if w[0] >= n || w[1] >= n || chain.p(w[0], w[1]) <= 0.0 {
                        return Err(Error::PathFamily(format!(
                            "path ({x},{y}) uses edge ({},{}) with zero probability",
                            w[0], w[1]
                        )));
                    }
                }
            }
        }
        Ok(Self { n, paths })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn path(&self, x: usize, y: usize) -> &[usize] {
        &self.paths[x * self.n + y]
    }

    /// Number of edges in `gamma_xy`.
    pub fn len_of(&self, x: usize, y: usize) -> usize {
        self.path(x, y).len().saturating_sub(1)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
    }

    pub fn is_cycle_free(&self) -> bool {
        self.paths.iter().all(|p| {
            let mut seen = vec![false; self.n];
            p.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }

    /// Distinct edges used by `gamma_xy`.
    fn edges_of(&self, x: usize, y: usize) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self.path(x, y).windows(2).map(|w| (w[0], w[1])).collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    fn membership(&self, x: usize, y: usize) -> Vec<bool> {
        let mut on = vec![false; self.n];
        for &v in self.path(x, y) {
            on[v] = true;
        }
        on
    }
}

/// Shortest paths by breadth-first search, scanning successors in ascending
/// index order so ties go to the lowest index.
pub fn build_bfs_paths(chain: &MarkovChain) -> Result<PathFamily> {
    let n = chain.n();
    let mut paths = vec![Vec::new(); n * n];
    for x in 0..n {
        let mut parent = vec![usize::MAX; n];
        parent[x] = x;
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            for w in chain.successors(v) {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        for y in (0..n).filter(|&y| y != x) {
            if parent[y] == usize::MAX {
                return Err(Error::NotErgodic { from: x, to: y });
            }
            let mut path = vec![y];
            let mut v = y;
            while v != x {
                v = parent[v];
                path.push(v);
            }
            path.reverse();
            paths[x * n + y] = path;
        }
    }
    Ok(PathFamily { n, paths })
}

/// Loop-erases a vertex sequence: whenever a vertex repeats, the detour since
/// its first visit is cut out.
pub fn erase_loops(path: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(path.len());
    for &v in path {
        if let Some(pos) = out.iter().position(|&u| u == v) {
            out.truncate(pos + 1);
        } else {
            out.push(v);
        }
    }
    out
}

/// Removes all cycles from every path; endpoints are kept.
pub fn remove_cycles(family: &PathFamily) -> PathFamily {
    PathFamily {
        n: family.n,
        paths: family.paths.iter().map(|p| erase_loops(p)).collect(),
    }
}

/// Per-edge path load `sum_{gamma_xy ∋ (a,b)} pi(x) pi(y)`, dense `n x n`.
pub fn edge_loads(chain: &MarkovChain, family: &PathFamily) -> Vec<f64> {
    let n = family.n;
    let pi = chain.pi();
    let mut load = vec![0.0; n * n];
    for (x, y) in family.pairs() {
        for (a, b) in family.edges_of(x, y) {
            load[a * n + b] += pi[x] * pi[y];
        }
    }
    load
}

/// `rho_e = max_{(a,b)} load(a,b) / (pi(a) P(a,b))` over edges used by paths.
pub fn edge_congestion(chain: &MarkovChain, family: &PathFamily) -> Result<f64> {
    check_compatible(chain, family.n)?;
    let n = family.n;
    let load = edge_loads(chain, family);
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let l = load[a * n + b];
            if l == 0.0 {
                continue;
            }
            let cap = chain.pi()[a] * chain.p(a, b);
            if cap <= 0.0 {
                return Err(Error::PathFamily(format!(
                    "edge ({a},{b}) is used but has zero probability"
                )));
            }
            worst = worst.max(l / cap);
        }
    }
    Ok(worst)
}

/// Per-vertex loads entering `rho_v`: pairs with `v` in `gamma_xy` but not in
/// `gamma_yx` count fully, pairs with `v` in both count half. Sums run over
/// ordered pairs `x != y`; membership includes endpoints.
pub fn vertex_loads(chain: &MarkovChain, family: &PathFamily) -> Vec<f64> {
    let n = family.n;
    let pi = chain.pi();
    let mut load = vec![0.0; n];
    for (x, y) in family.pairs() {
        let forward = family.membership(x, y);
        let back = family.membership(y, x);
        let w = pi[x] * pi[y];
        for v in 0..n {
            if forward[v] {
                load[v] += if back[v] { 0.5 * w } else { w };
            }
        }
    }
    load
}

/// `rho_v = max_v vertex_load(v) / pi(v)`.
pub fn vertex_congestion(chain: &MarkovChain, family: &PathFamily) -> f64 {
    vertex_loads(chain, family)
        .iter()
        .zip(chain.pi())
        .map(|(l, w)| l / w)
        .fold(0.0, f64::max)
}

/// Loads `sum_{gamma_xy ∋ v, v != x} pi(x) pi(y)` (interior and terminal
/// visits, not the source).
pub fn through_loads(chain: &MarkovChain, family: &PathFamily) -> Vec<f64> {
    let n = family.n;
    let pi = chain.pi();
    let mut load = vec![0.0; n];
    for (x, y) in family.pairs() {
        for (v, on) in family.membership(x, y).into_iter().enumerate() {
            if on && v != x {
                load[v] += pi[x] * pi[y];
            }
        }
    }
    load
}

/// `max_v (1/pi(v)) sum_{gamma_xy ∋ v != x} pi(x) pi(y)`, an upper bound on
/// `rho_v`.
pub fn directed_vertex_bound(chain: &MarkovChain, family: &PathFamily) -> f64 {
    through_loads(chain, family)
        .iter()
        .zip(chain.pi())
        .map(|(l, w)| l / w)
        .fold(0.0, f64::max)
}

/// `(1/2) max_v (1/pi(v)) sum_{gamma_xy ∋ v} pi(x) pi(y)`; equals `rho_v`
/// when every `gamma_yx` is `gamma_xy` reversed.
pub fn undirected_vertex_congestion(chain: &MarkovChain, family: &PathFamily) -> f64 {
    let pi = chain.pi();
    let mut load = vec![0.0; family.n];
    for (x, y) in family.pairs() {
        for (v, on) in family.membership(x, y).into_iter().enumerate() {
            if on {
                load[v] += pi[x] * pi[y];
            }
        }
    }
    0.5 * load.iter().zip(pi).map(|(l, w)| l / w).fold(0.0, f64::max)
}

/// Path length statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathStats {
    /// Maximum path length `l`.
    pub max_len: usize,
    /// `pi x pi`-weighted mean path length over pairs `x != y`.
    pub avg_len: f64,
    /// Average vertex congestion `sum_v sum_{gamma_xy ∋ v != x} pi(x) pi(y)`.
    pub avg_vertex_congestion: f64,
}

pub fn path_stats(chain: &MarkovChain, family: &PathFamily) -> PathStats {
    let pi = chain.pi();
    let mut max_len = 0;
    let mut weighted = 0.0;
    let mut mass = 0.0;
    for (x, y) in family.pairs() {
        let len = family.len_of(x, y);
        max_len = max_len.max(len);
        weighted += pi[x] * pi[y] * len as f64;
        mass += pi[x] * pi[y];
    }
    let avg_vertex_congestion = through_loads(chain, family).iter().sum();
    PathStats {
        max_len,
        avg_len: weighted / mass,
        avg_vertex_congestion,
    }
}

/// `P_0 = min P(a,b)` over edges used by some path.
pub fn boundary_prob(chain: &MarkovChain, family: &PathFamily) -> f64 {
    family
        .pairs()
        .flat_map(|(x, y)| family.edges_of(x, y))
        .map(|(a, b)| chain.p(a, b))
        .fold(f64::INFINITY, f64::min)
}

/// Summary of a plain family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Congestion {
    pub rho_e: f64,
    pub rho_v: f64,
    pub p0: f64,
    pub stats: PathStats,
}

pub fn congestion(chain: &MarkovChain, family: &PathFamily) -> Result<Congestion> {
    Ok(Congestion {
        rho_e: edge_congestion(chain, family)?,
        rho_v: vertex_congestion(chain, family),
        p0: boundary_prob(chain, family),
        stats: path_stats(chain, family),
    })
}

fn check_compatible(chain: &MarkovChain, n: usize) -> Result<()> {
    if chain.n() != n {
        return Err(Error::PathFamily(format!(
            "family has {n} states but chain has {}",
            chain.n()
        )));
    }
    Ok(())
}

/// Odd-length paths `x_0 ->P x_1 ->P* x_2 ->P .. ->P x_{2k+1}` for every
/// ordered pair, including `x = y`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingPathFamily {
    n: usize,
    paths: Vec<Vec<usize>>,
}

impl AlternatingPathFamily {
    /// Validates `paths[x * n + y]`: odd number of steps, even-indexed steps
    /// along `P`, odd-indexed steps along `P*`.
    pub fn new(chain: &MarkovChain, paths: Vec<Vec<usize>>) -> Result<Self> {
        let n = chain.n();
        if paths.len() != n * n {
            return Err(Error::PathFamily(format!(
                "expected {} alternating paths, got {}",
                n * n,
                paths.len()
            )));
        }
        for x in 0..n {
            for y in 0..n {
                validate_alternating(chain, x, y, &paths[x * n + y])?;
            }
        }
        Ok(Self { n, paths })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn path(&self, x: usize, y: usize) -> &[usize] {
        &self.paths[x * self.n + y]
    }

    /// Vertices at odd positions `x_1, x_3, ..`.
    pub fn odd_vertices(&self, x: usize, y: usize) -> Vec<bool> {
        let mut on = vec![false; self.n];
        for v in self.path(x, y).iter().skip(1).step_by(2) {
            on[*v] = true;
        }
        on
    }

    /// The `P` edges `(a,b)` used, whether traversed forward by a `P` step or
    /// backward by a `P*` step.
    pub fn p_edges(&self, x: usize, y: usize) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .path(x, y)
            .windows(2)
            .enumerate()
            .map(|(i, w)| if i % 2 == 0 { (w[0], w[1]) } else { (w[1], w[0]) })
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }
}

fn validate_alternating(chain: &MarkovChain, x: usize, y: usize, path: &[usize]) -> Result<()> {
    let n = chain.n();
    if path.len() < 2 || path.len() % 2 != 0 || path[0] != x || *path.last().unwrap() != y {
        return Err(Error::PathFamily(format!(
            "alternating path ({x},{y}) must have odd length and the right endpoints"
        )));
    }
    for (i, w) in path.windows(2).enumerate() {
        if w[0] >= n || w[1] >= n {
            return Err(Error::PathFamily(format!("alternating path ({x},{y}) leaves the state space")));
        }
        // P* (u,v) > 0 exactly when P(v,u) > 0.
        let ok = if i % 2 == 0 { chain.p(w[0], w[1]) > 0.0 } else { chain.p(w[1], w[0]) > 0.0 };
        if !ok {
            let kind = if i % 2 == 0 { "P" } else { "P*" };
            return Err(Error::PathFamily(format!(
                "alternating path ({x},{y}) step {i} ({},{}) is not a {kind} edge",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Shortest odd alternating paths by breadth-first search over
/// `(state, next step kind)`, ascending index tie-breaking. Fails naming the
/// first pair (in row-major order) with no such path.
pub fn build_alternating_paths(chain: &MarkovChain) -> Result<AlternatingPathFamily> {
    let n = chain.n();
    let mut paths = vec![Vec::new(); n * n];
    let mut failed = Vec::new();
    for x in 0..n {
        // Node (v, 0): next step is along P. Node (v, 1): next step along P*.
        let node = |v: usize, parity: usize| v * 2 + parity;
        let mut parent = vec![usize::MAX; 2 * n];
        parent[node(x, 0)] = node(x, 0);
        let mut queue = VecDeque::from([node(x, 0)]);
        while let Some(cur) = queue.pop_front() {
            let (v, parity) = (cur / 2, cur % 2);
            let next: Vec<usize> = if parity == 0 {
                chain.successors(v).collect()
            } else {
                chain.reversal_successors(v).collect()
            };
            for w in next {
                let nn = node(w, 1 - parity);
                if parent[nn] == usize::MAX {
                    parent[nn] = cur;
                    queue.push_back(nn);
                }
            }
        }
        for y in 0..n {
            let target = node(y, 1);
            if parent[target] == usize::MAX {
                failed.push((x, y));
                continue;
            }
            let mut path = vec![y];
            let mut cur = target;
            while cur != node(x, 0) {
                cur = parent[cur];
                path.push(cur / 2);
            }
            path.reverse();
            paths[x * n + y] = path;
        }
    }
    if let Some(&(x, y)) = failed.first() {
        return Err(Error::AlternatingPaths {
            x,
            y,
            count: failed.len(),
            failed,
        });
    }
    Ok(AlternatingPathFamily { n, paths })
}

/// Alternating family from a plain one: `P` steps are self-loops and `P*`
/// steps walk `gamma_yx` backwards; `gamma_xx` becomes a single self-loop.
pub fn derive_alternating_from_plain(
    chain: &MarkovChain,
    family: &PathFamily,
) -> Result<AlternatingPathFamily> {
    if !(chain.alpha() > 0.0) {
        return Err(Error::InvalidParameter(
            "deriving alternating paths needs a self-loop at every state (alpha > 0)".into(),
        ));
    }
    check_compatible(chain, family.n)?;
    let n = family.n;
    let mut paths = vec![Vec::new(); n * n];
    for x in 0..n {
        for y in 0..n {
            let mut path = vec![x, x];
            if x != y {
                let back = family.path(y, x);
                for &w in back.iter().rev().skip(1) {
                    path.push(w);
                    path.push(w);
                }
            }
            paths[x * n + y] = path;
        }
    }
    AlternatingPathFamily::new(chain, paths)
}

/// Congestion of an alternating family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AltCongestion {
    /// `max_v (1/pi(v)) sum_{v at an odd position of gamma_xy} pi(x) pi(y)`.
    pub rho_v: f64,
    /// `min P*(b,a)` over `P` edges `(a,b)` used.
    pub p0_star: f64,
}

pub fn alt_vertex_loads(chain: &MarkovChain, family: &AlternatingPathFamily) -> Vec<f64> {
    let n = family.n;
    let pi = chain.pi();
    let mut load = vec![0.0; n];
    for x in 0..n {
        for y in 0..n {
            for (v, on) in family.odd_vertices(x, y).into_iter().enumerate() {
                if on {
                    load[v] += pi[x] * pi[y];
                }
            }
        }
    }
    load
}

pub fn alt_vertex_congestion(chain: &MarkovChain, family: &AlternatingPathFamily) -> Result<AltCongestion> {
    check_compatible(chain, family.n)?;
    let n = family.n;
    let rho_v = alt_vertex_loads(chain, family)
        .iter()
        .zip(chain.pi())
        .map(|(l, w)| l / w)
        .fold(0.0, f64::max);
    let mut p0_star = f64::INFINITY;
    for x in 0..n {
        for y in 0..n {
            for (a, b) in family.p_edges(x, y) {
                p0_star = p0_star.min(chain.reversal_p(b, a));
            }
        }
    }
    Ok(AltCongestion { rho_v, p0_star })
}

/// Per-vertex and per-edge load tables as TSV.
pub fn congestion_tsv(chain: &MarkovChain, family: &PathFamily) -> String {
    let n = family.n;
    let pi = chain.pi();
    let vload = vertex_loads(chain, family);
    let tload = through_loads(chain, family);
    let mut out = String::from("vertex\tpi\tload\tcongestion\tthrough_load\n");
    for v in 0..n {
        out.push_str(&format!(
            "{v}\t{}\t{}\t{}\t{}\n",
            pi[v],
            vload[v],
            vload[v] / pi[v],
            tload[v]
        ));
    }
    out.push_str("\nedge_from\tedge_to\tp\tload\tcongestion\n");
    let eload = edge_loads(chain, family);
    for a in 0..n {
        for b in 0..n {
            let l = eload[a * n + b];
            if l > 0.0 {
                out.push_str(&format!(
                    "{a}\t{b}\t{}\t{l}\t{}\n",
                    chain.p(a, b),
                    l / (pi[a] * chain.p(a, b))
                ));
            }
        }
    }
    out
}

/// Per-vertex odd-position loads as TSV.
pub fn alt_congestion_tsv(chain: &MarkovChain, family: &AlternatingPathFamily) -> String {
    let pi = chain.pi();
    let load = alt_vertex_loads(chain, family);
    let mut out = String::from("vertex\tpi\todd_load\tcongestion\n");
    for v in 0..family.n {
        out.push_str(&format!("{v}\t{}\t{}\t{}\n", pi[v], load[v], load[v] / pi[v]));
    }
    out
}
