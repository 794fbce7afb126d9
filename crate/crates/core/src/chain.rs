//! Finite ergodic Markov chains and their basic quantities.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::subset::SubsetMask;

/// Largest state count accepted by the chain constructors.
pub const MAX_STATES: usize = 256;

pub const ROW_SUM_TOL: f64 = 1e-9;
pub const PI_SUM_TOL: f64 = 1e-12;
pub const PI_FIXED_POINT_TOL: f64 = 1e-10;

/// A row-stochastic kernel on `{0, .., n-1}` whose positive transitions form a
/// strongly connected digraph, together with its stationary distribution.
///
/// Aperiodicity is not required. Values are immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain {
    n: usize,
    p: Vec<f64>,
    pi: Vec<f64>,
    alpha: f64,
}

impl MarkovChain {
    /// Validates `rows` and solves for the stationary distribution.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let (n, p) = flatten_rows(rows)?;
        validate_kernel(n, &p)?;
        let pi = solve_stationary(n, &p)?;
        Ok(Self::assemble(n, p, pi))
    }

    /// Validates `rows` against a caller-supplied stationary distribution.
    pub fn with_stationary(rows: Vec<Vec<f64>>, pi: Vec<f64>) -> Result<Self> {
        let (n, p) = flatten_rows(rows)?;
        validate_kernel(n, &p)?;
        validate_stationary(n, &p, &pi)?;
        Ok(Self::assemble(n, p, pi))
    }

    fn assemble(n: usize, p: Vec<f64>, pi: Vec<f64>) -> Self {
        let alpha = (0..n).map(|v| p[v * n + v]).fold(f64::INFINITY, f64::min);
        Self { n, p, pi, alpha }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `P(x, y)`.
    #[inline]
    pub fn p(&self, x: usize, y: usize) -> f64 {
        self.p[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.p[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn pi(&self) -> &[f64] {
        &self.pi
    }

    /// Minimal holding probability `min_v P(v, v)`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `min_v pi(v)`.
    pub fn pi_min(&self) -> f64 {
        self.pi.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_uniform(&self) -> bool {
        self.pi.iter().all(|&w| w == self.pi[0])
    }

    /// Time-reversal entry `P*(x, y) = pi(y) P(y, x) / pi(x)`.
    #[inline]
    pub fn reversal_p(&self, x: usize, y: usize) -> f64 {
        self.pi[y] * self.p(y, x) / self.pi[x]
    }

    /// Positive-probability successors of `x` in ascending order.
    pub fn successors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&y| self.p(x, y) > 0.0)
    }

    /// States `w` with `P*(x, w) > 0`, i.e. `P(w, x) > 0`, ascending.
    pub fn reversal_successors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.p(w, x) > 0.0)
    }

    /// Inflow `Q(A, y)` from the set given by `bits` into every state `y`.
    pub fn inflow(&self, bits: u64) -> Vec<f64> {
        let mut q = vec![0.0; self.n];
        let mut rest = bits;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let w = self.pi[x];
            for (qy, pxy) in q.iter_mut().zip(self.row(x)) {
                *qy += w * pxy;
            }
        }
        q
    }

    /// `true` if every state has the same holding probability and every
    /// off-diagonal entry is equal, so the chain is invariant under all
    /// relabelings of the states.
    pub fn is_exchangeable(&self) -> bool {
        let d = self.p(0, 0);
        let o = self.p(0, 1);
        (0..self.n).all(|x| (0..self.n).all(|y| self.p(x, y) == if x == y { d } else { o }))
    }
}

/// A probability vector over the states.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution(Vec<f64>);

impl Distribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0 || *w > 1.0) {
            return Err(Error::Validation("distribution weights must lie in [0,1]".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > PI_SUM_TOL {
            return Err(Error::Validation(format!(
                "distribution sums to {total}, expected 1"
            )));
        }
        Ok(Self(weights))
    }

    pub fn point_mass(n: usize, x: usize) -> Self {
        let mut w = vec![0.0; n];
        w[x] = 1.0;
        Self(w)
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    /// One step of the chain: `sigma P`.
    pub fn step(&self, chain: &MarkovChain) -> Self {
        let n = chain.n();
        let mut next = vec![0.0; n];
        for (x, &w) in self.0.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for (nv, pxy) in next.iter_mut().zip(chain.row(x)) {
                *nv += w * pxy;
            }
        }
        Self(next)
    }
}

/// Stationary distribution of a row-stochastic, strongly connected kernel.
///
/// Solves `pi (P - I) = 0, sum(pi) = 1` directly, so periodic chains are
/// handled exactly.
pub fn stationary_distribution(rows: &[Vec<f64>]) -> Result<Distribution> {
    let (n, p) = flatten_rows(rows.to_vec())?;
    validate_kernel(n, &p)?;
    Ok(Distribution(solve_stationary(n, &p)?))
}

/// `P*` as a chain with the same stationary distribution.
pub fn time_reversal(chain: &MarkovChain) -> MarkovChain {
    let n = chain.n();
    let mut p = vec![0.0; n * n];
    for x in 0..n {
        for y in 0..n {
            p[x * n + y] = chain.reversal_p(x, y);
        }
    }
    MarkovChain::assemble(n, p, chain.pi().to_vec())
}

/// Ergodic flow `Q(A, B) = sum_{x in A, y in B} pi(x) P(x, y)`.
pub fn ergodic_flow(chain: &MarkovChain, a: &SubsetMask, b: &SubsetMask) -> f64 {
    let q = chain.inflow(a.bits());
    b.states().map(|y| q[y]).sum()
}

/// L2(pi) distance `|| sigma/pi - 1 ||_{2,pi}`; its square is the
/// chi-square distance.
pub fn chi_square_distance(sigma: &Distribution, chain: &MarkovChain) -> f64 {
    sigma
        .weights()
        .iter()
        .zip(chain.pi())
        .map(|(&s, &w)| {
            let d = s / w - 1.0;
            w * d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Outcome of iterating the chain from a point mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixingTime {
    Reached(u64),
    NotReached { max_steps: u64 },
}

impl MixingTime {
    pub fn steps(&self) -> Option<u64> {
        match *self {
            MixingTime::Reached(t) => Some(t),
            MixingTime::NotReached { .. } => None,
        }
    }
}

impl std::fmt::Display for MixingTime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MixingTime::Reached(t) => write!(f, "{t}"),
            MixingTime::NotReached { max_steps } => write!(f, "not reached (> {max_steps})"),
        }
    }
}

/// `tau_x(eps) = min{ t >= 0 : ||k_t^x - 1||_{2,pi} <= eps }` by direct
/// distribution iteration, giving up after `max_steps`.
pub fn empirical_mixing_time(
    chain: &MarkovChain,
    x: usize,
    eps: f64,
    max_steps: u64,
) -> Result<MixingTime> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be > 0, got {eps}")));
    }
    if x >= chain.n() {
        return Err(Error::InvalidParameter(format!("start state {x} out of range")));
    }
    let mut sigma = Distribution::point_mass(chain.n(), x);
    for t in 0..=max_steps {
        if chi_square_distance(&sigma, chain) <= eps {
            return Ok(MixingTime::Reached(t));
        }
        if t < max_steps {
            sigma = sigma.step(chain);
        }
    }
    Ok(MixingTime::NotReached { max_steps })
}

fn flatten_rows(rows: Vec<Vec<f64>>) -> Result<(usize, Vec<f64>)> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::Validation(format!("need at least 2 states, got {n}")));
    }
    if n > MAX_STATES {
        return Err(Error::Validation(format!(
            "at most {MAX_STATES} states are supported, got {n}"
        )));
    }
    let mut p = Vec::with_capacity(n * n);
    for (x, row) in rows.into_iter().enumerate() {
        if row.len() != n {
            return Err(Error::Validation(format!(
                "row {x} has {} entries, expected {n}",
                row.len()
            )));
        }
        p.extend(row);
    }
    Ok((n, p))
}

fn validate_kernel(n: usize, p: &[f64]) -> Result<()> {
    for x in 0..n {
        let row = &p[x * n..(x + 1) * n];
        if let Some(y) = row.iter().position(|v| !v.is_finite() || *v < 0.0 || *v > 1.0) {
            return Err(Error::Validation(format!(
                "P({x},{y}) = {} is not a probability",
                row[y]
            )));
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > ROW_SUM_TOL {
            return Err(Error::Validation(format!("row {x} sums to {sum}, expected 1")));
        }
    }
    check_strongly_connected(n, p)
}

fn check_strongly_connected(n: usize, p: &[f64]) -> Result<()> {
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for w in 0..n {
                let edge = if forward { p[v * n + w] } else { p[w * n + v] };
                if edge > 0.0 && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    };
    if let Some(to) = reach(true).iter().position(|s| !s) {
        return Err(Error::NotErgodic { from: 0, to });
    }
    if let Some(from) = reach(false).iter().position(|s| !s) {
        return Err(Error::NotErgodic { from, to: 0 });
    }
    Ok(())
}

fn solve_stationary(n: usize, p: &[f64]) -> Result<Vec<f64>> {
    // Rows of the system are the columns of P - I; the last is replaced by
    // the normalization constraint.
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = p[j * n + i] - if i == j { 1.0 } else { 0.0 };
        }
    }
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(n);
    b[n - 1] = 1.0;
    let pi = a
        .lu()
        .solve(&b)
        .ok_or(Error::Stationary { residual: f64::INFINITY })?;
    let mut pi: Vec<f64> = pi.iter().copied().collect();
    let total: f64 = pi.iter().sum();
    for w in pi.iter_mut() {
        *w /= total;
    }
    let residual = fixed_point_residual(n, p, &pi);
    if residual > PI_FIXED_POINT_TOL || pi.iter().any(|w| !(*w > 0.0)) {
        return Err(Error::Stationary { residual });
    }
    Ok(pi)
}

fn fixed_point_residual(n: usize, p: &[f64], pi: &[f64]) -> f64 {
    (0..n)
        .map(|y| {
            let flow: f64 = (0..n).map(|x| pi[x] * p[x * n + y]).sum();
            (flow - pi[y]).abs()
        })
        .fold(0.0, f64::max)
}

fn validate_stationary(n: usize, p: &[f64], pi: &[f64]) -> Result<()> {
    if pi.len() != n {
        return Err(Error::Validation(format!(
            "pi has {} entries, expected {n}",
            pi.len()
        )));
    }
    if pi.iter().any(|w| !w.is_finite() || *w <= 0.0) {
        return Err(Error::Validation("pi must be strictly positive".into()));
    }
    let total: f64 = pi.iter().sum();
    if (total - 1.0).abs() > PI_SUM_TOL {
        return Err(Error::Validation(format!("pi sums to {total}, expected 1")));
    }
    let residual = fixed_point_residual(n, p, pi);
    if residual > PI_FIXED_POINT_TOL {
        return Err(Error::Validation(format!(
            "pi is not stationary (max residual {residual:e})"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state(a: f64, b: f64) -> MarkovChain {
        MarkovChain::new(vec![vec![1.0 - a, a], vec![b, 1.0 - b]]).unwrap()
    }

    fn lazy_cycle3() -> MarkovChain {
        MarkovChain::new(vec![
            vec![0.5, 0.5, 0.0],
            vec![0.0, 0.5, 0.5],
            vec![0.5, 0.0, 0.5],
        ])
        .unwrap()
    }

    #[test]
    fn two_state_stationary() {
        let c = two_state(0.25, 0.5);
        assert!((c.pi()[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((c.pi()[1] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn doubly_stochastic_gives_uniform() {
        let c = lazy_cycle3();
        for w in c.pi() {
            assert!((w - 1.0 / 3.0).abs() < 1e-12);
        }
        assert_eq!(c.alpha(), 0.5);
    }

    #[test]
    fn periodic_rotation_has_uniform_pi() {
        let c = MarkovChain::new(vec![
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        for w in c.pi() {
            assert!((w - 1.0 / 3.0).abs() < 1e-12);
        }
        assert_eq!(c.alpha(), 0.0);
    }

    #[test]
    fn rejects_bad_rows_and_reducible_chains() {
        let bad = MarkovChain::new(vec![vec![0.5, 0.4], vec![0.5, 0.5]]);
        assert!(matches!(bad, Err(Error::Validation(_))));
        let reducible = MarkovChain::new(vec![vec![1.0, 0.0], vec![0.5, 0.5]]);
        assert!(matches!(reducible, Err(Error::NotErgodic { .. })));
        let negative = MarkovChain::new(vec![vec![1.5, -0.5], vec![0.5, 0.5]]);
        assert!(negative.is_err());
    }

    #[test]
    fn rejects_wrong_supplied_pi() {
        let rows = vec![vec![0.75, 0.25], vec![0.5, 0.5]];
        assert!(MarkovChain::with_stationary(rows.clone(), vec![0.5, 0.5]).is_err());
        assert!(MarkovChain::with_stationary(rows, vec![2.0 / 3.0, 1.0 / 3.0]).is_ok());
    }

    #[test]
    fn reversal_examples() {
        let rot = MarkovChain::new(vec![
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        let rev = time_reversal(&rot);
        for i in 0..3 {
            assert!((rev.p(i, (i + 2) % 3) - 1.0).abs() < 1e-12);
        }
        // [[3/4,1/4],[1/2,1/2]] is reversible.
        let c = two_state(0.25, 0.5);
        let r = time_reversal(&c);
        for x in 0..2 {
            for y in 0..2 {
                assert!((r.p(x, y) - c.p(x, y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn flow_examples() {
        let c = lazy_cycle3();
        let pi = c.pi();
        let a = SubsetMask::from_states(&[0], pi).unwrap();
        let b = SubsetMask::from_states(&[1], pi).unwrap();
        let v = SubsetMask::full(pi).unwrap();
        let e = SubsetMask::empty(pi).unwrap();
        assert!((ergodic_flow(&c, &a, &b) - 1.0 / 6.0).abs() < 1e-12);
        assert!((ergodic_flow(&c, &v, &v) - 1.0).abs() < 1e-12);
        assert_eq!(ergodic_flow(&c, &a, &e), 0.0);
    }

    #[test]
    fn chi_square_examples() {
        let c = two_state(0.5, 0.5);
        let sigma = Distribution::new(vec![0.75, 0.25]).unwrap();
        assert!((chi_square_distance(&sigma, &c) - 0.5).abs() < 1e-12);
        let pi = Distribution::new(c.pi().to_vec()).unwrap();
        assert!(chi_square_distance(&pi, &c).abs() < 1e-12);
        let u5 = MarkovChain::new(vec![vec![0.2; 5]; 5]).unwrap();
        let d = chi_square_distance(&Distribution::point_mass(5, 3), &u5);
        assert!((d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn empirical_mixing_examples() {
        let exact = MarkovChain::new(vec![vec![0.2; 5]; 5]).unwrap();
        assert_eq!(
            empirical_mixing_time(&exact, 0, 0.5, 10).unwrap(),
            MixingTime::Reached(1)
        );
        let flip = two_state(1.0, 1.0);
        assert_eq!(
            empirical_mixing_time(&flip, 0, 0.9, 1000).unwrap(),
            MixingTime::NotReached { max_steps: 1000 }
        );
        // Frozen from an independent numpy distribution iteration.
        assert_eq!(
            empirical_mixing_time(&lazy_cycle3(), 0, 0.5, 100).unwrap(),
            MixingTime::Reached(2)
        );
        assert!(empirical_mixing_time(&flip, 0, 0.0, 10).is_err());
    }

    #[test]
    fn distribution_validation() {
        assert!(Distribution::new(vec![0.5, 0.6]).is_err());
        assert!(Distribution::new(vec![-0.1, 1.1]).is_err());
        assert!(Distribution::new(vec![0.25, 0.75]).is_ok());
    }

    #[test]
    fn exchangeable_detection() {
        assert!(two_state(0.25, 0.25).is_exchangeable());
        assert!(!two_state(0.25, 0.5).is_exchangeable());
    }
}
