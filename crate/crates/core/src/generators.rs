//! Example chains: cycle walks, complete-graph walks, Eulerian max-degree
//! walks, Cayley walks, and seeded random chains.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::MarkovChain;
use crate::error::{Error, Result};
use crate::group::GroupPresentation;

fn uniform(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// Walk on `Z_n` with `P(i,i) = alpha` and `P(i,i+1) = 1 - alpha`.
pub fn cycle_walk(n: usize, alpha: f64) -> Result<MarkovChain> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle walk needs n >= 3, got {n}")));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha must lie in [0,1), got {alpha}")));
    }
    let mut rows = vec![vec![0.0; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] += alpha;
        row[(i + 1) % n] += 1.0 - alpha;
    }
    MarkovChain::with_stationary(rows, uniform(n))
}

/// Pure rotation `P(i, i+1) = 1` on `n >= 2` states (periodic).
pub fn rotation(n: usize) -> Result<MarkovChain> {
    if n < 2 {
        return Err(Error::InvalidParameter("rotation needs n >= 2".into()));
    }
    let rows = (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            row[(i + 1) % n] = 1.0;
            row
        })
        .collect();
    MarkovChain::with_stationary(rows, uniform(n))
}

/// The two-state flip chain `[[0,1],[1,0]]`.
pub fn flip() -> MarkovChain {
    rotation(2).expect("two-state rotation is valid")
}

/// Lazy walk on `K_n` with loops: `P(i,j) = 1/2n` for `i != j`,
/// `P(i,i) = 1/2 + 1/2n`.
pub fn complete_graph_walk(n: usize) -> Result<MarkovChain> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("complete graph needs n >= 2, got {n}")));
    }
    let off = 1.0 / (2.0 * n as f64);
    let rows = (0..n)
        .map(|i| {
            let mut row = vec![off; n];
            row[i] = 0.5 + off;
            row
        })
        .collect();
    MarkovChain::with_stationary(rows, uniform(n))
}

/// Every row equal to `pi`; mixes exactly in one step.
pub fn rows_equal_pi(pi: &[f64]) -> Result<MarkovChain> {
    MarkovChain::with_stationary(vec![pi.to_vec(); pi.len()], pi.to_vec())
}

/// Directed multigraph as arc multiplicities `arcs[x][y] = d(x,y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multigraph {
    pub arcs: Vec<Vec<u32>>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Self {
            arcs: vec![vec![0; n]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn add_arc(&mut self, x: usize, y: usize, count: u32) {
        self.arcs[x][y] += count;
    }

    pub fn out_degree(&self, x: usize) -> u32 {
        self.arcs[x].iter().sum()
    }

    pub fn in_degree(&self, y: usize) -> u32 {
        self.arcs.iter().map(|row| row[y]).sum()
    }

    pub fn max_degree(&self) -> u32 {
        (0..self.n()).map(|x| self.out_degree(x)).max().unwrap_or(0)
    }
}

/// Max-degree walk on an Eulerian multigraph: `P(x,y) = d(x,y)/d` for
/// `y != x` and `P(x,x) = 1 - (d(x) - d(x,x))/d`.
pub fn eulerian_walk(graph: &Multigraph, d: u32) -> Result<MarkovChain> {
    let n = graph.n();
    for v in 0..n {
        let (out, inn) = (graph.out_degree(v), graph.in_degree(v));
        if out != inn {
            return Err(Error::Validation(format!(
                "vertex {v} has out-degree {out} but in-degree {inn}"
            )));
        }
    }
    if d == 0 || d < graph.max_degree() {
        return Err(Error::InvalidParameter(format!(
            "d = {d} is below the maximum degree {}",
            graph.max_degree()
        )));
    }
    let df = d as f64;
    let rows = (0..n)
        .map(|x| {
            let mut row: Vec<f64> = graph.arcs[x].iter().map(|&c| c as f64 / df).collect();
            let moving = graph.out_degree(x) - graph.arcs[x][x];
            row[x] = 1.0 - moving as f64 / df;
            row
        })
        .collect();
    MarkovChain::with_stationary(rows, uniform(n))
}

/// `P(g, g s) = p(s)`, summed when several generators give the same product.
pub fn cayley_walk(group: &GroupPresentation) -> Result<MarkovChain> {
    let n = group.order();
    let mut rows = vec![vec![0.0; n]; n];
    for (g, row) in rows.iter_mut().enumerate() {
        for (&s, &p) in group.generators().iter().zip(group.gen_probs()) {
            row[group.mul(g, s)] += p;
        }
    }
    MarkovChain::with_stationary(rows, uniform(n))
}

/// Shape parameters for random chains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomChainParams {
    /// Probability of each extra arc beyond the spanning cycle.
    pub edge_prob: f64,
    /// Probability of mixing in a holding term `beta I`.
    pub lazy_prob: f64,
    /// Range for `beta` when laziness is injected.
    pub beta_range: (f64, f64),
}

impl Default for RandomChainParams {
    fn default() -> Self {
        Self {
            edge_prob: 0.4,
            lazy_prob: 0.5,
            beta_range: (0.05, 0.6),
        }
    }
}

/// Random ergodic chain on `n` states.
///
/// Support is a random Hamiltonian cycle (for strong connectivity) plus
/// independent extra arcs, loops included. Row weights are uniform draws
/// normalized per row; laziness `P <- beta I + (1 - beta) P` is injected with
/// probability `lazy_prob`. Randomness comes from the caller's ChaCha8 stream.
pub fn random_chain(rng: &mut ChaCha8Rng, n: usize, params: &RandomChainParams) -> Result<MarkovChain> {
    if n < 2 {
        return Err(Error::InvalidParameter("random chain needs n >= 2".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let mut support = vec![vec![false; n]; n];
    for i in 0..n {
        support[order[i]][order[(i + 1) % n]] = true;
    }
    for row in support.iter_mut() {
        for cell in row.iter_mut() {
            if rng.random_bool(params.edge_prob) {
                *cell = true;
            }
        }
    }
    let mut rows: Vec<Vec<f64>> = support
        .iter()
        .map(|row| {
            let mut w: Vec<f64> = row
                .iter()
                .map(|&on| if on { rng.random_range(0.01..1.0) } else { 0.0 })
                .collect();
            let total: f64 = w.iter().sum();
            w.iter_mut().for_each(|v| *v /= total);
            w
        })
        .collect();
    if rng.random_bool(params.lazy_prob) {
        let beta = rng.random_range(params.beta_range.0..params.beta_range.1);
        for (x, row) in rows.iter_mut().enumerate() {
            row.iter_mut().for_each(|v| *v *= 1.0 - beta);
            row[x] += beta;
        }
    }
    MarkovChain::new(rows)
}

/// A labelled chain in a test fleet.
#[derive(Debug, Clone)]
pub struct FleetChain {
    pub label: String,
    pub chain: MarkovChain,
}

/// `count` seeded random chains with `n` uniform in `[2, max_n]`.
pub fn random_fleet(seed: u64, count: usize, max_n: usize) -> Result<Vec<FleetChain>> {
    if max_n < 2 {
        return Err(Error::InvalidParameter("max-n must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomChainParams::default();
    (0..count)
        .map(|i| {
            let n = rng.random_range(2..=max_n);
            Ok(FleetChain {
                label: format!("random[seed={seed},#{i},n={n}]"),
                chain: random_chain(&mut rng, n, &params)?,
            })
        })
        .collect()
}

/// Small named chains used by the examples, tests, and `verify`.
pub fn builtin_examples() -> Vec<FleetChain> {
    let mut out = Vec::new();
    let mut push = |label: String, chain: Result<MarkovChain>| {
        out.push(FleetChain {
            label,
            chain: chain.expect("built-in example is valid"),
        })
    };
    push("flip".into(), Ok(flip()));
    for n in [3, 4] {
        push(format!("rotation({n})"), rotation(n));
    }
    for n in [3, 5] {
        for a in [0.25, 0.5] {
            push(format!("cycle({n},{a})"), cycle_walk(n, a));
        }
    }
    for n in [2, 4, 6] {
        push(format!("complete({n})"), complete_graph_walk(n));
    }
    push("rows-equal-pi(1/2,1/3,1/6)".into(), rows_equal_pi(&[0.5, 1.0 / 3.0, 1.0 / 6.0]));
    push(
        "two-state(1/4,1/2)".into(),
        MarkovChain::new(vec![vec![0.75, 0.25], vec![0.5, 0.5]]),
    );
    let mut tri = Multigraph::new(3);
    for x in 0..3 {
        for y in 0..3 {
            tri.add_arc(x, y, 1);
        }
    }
    push("eulerian-triangle-loops(d=3)".into(), eulerian_walk(&tri, 3));
    let mut dir = Multigraph::new(4);
    for x in 0..4 {
        dir.add_arc(x, (x + 1) % 4, 1);
        dir.add_arc(x, (x + 2) % 4, 1);
    }
    push("eulerian-circulant4(d=2)".into(), eulerian_walk(&dir, 2));
    let cay = |g: &str, s: &str, p: &[f64]| {
        GroupPresentation::parse(g, s, p).and_then(|grp| cayley_walk(&grp))
    };
    push("cayley(z5;id,+1)".into(), cay("z5", "id,+1", &[0.5, 0.5]));
    push("cayley(z5;+1,+2)".into(), cay("z5", "+1,+2", &[0.5, 0.5]));
    push(
        "cayley(s3;id,(12),(123))".into(),
        cay("s3", "id,(12),(123)", &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]),
    );
    push("cayley(s3;(12),(123))".into(), cay("s3", "(12),(123)", &[0.5, 0.5]));
    out
}
