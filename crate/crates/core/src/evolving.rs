//! Evolving-set threshold sets `A_u` and the root profile, integrated exactly
//! over the finitely many breakpoints of `u -> pi(A_u)`.

use crate::chain::MarkovChain;
use crate::error::{Error, Result};
use crate::flow;
use crate::profile::{ProfileKind, StepProfile};
use crate::subset::{full_bits, mask_measure, SubsetMask};

/// `A_u = { y : Q(A,y) >= u pi(y) }`.
pub fn threshold_set(chain: &MarkovChain, a: &SubsetMask, u: f64) -> Result<SubsetMask> {
    let pi = chain.pi();
    let q = chain.inflow(a.bits());
    let bits = (0..chain.n())
        .filter(|&y| q[y] >= u * pi[y])
        .fold(0u64, |acc, y| acc | 1 << y);
    SubsetMask::from_bits(bits, pi)
}

/// `u -> pi(A_u)` on `(0, 1]` as a step function.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdCurve {
    /// Distinct ratios `Q(A,y)/pi(y)`, ascending.
    pub breakpoints: Vec<f64>,
    /// `(u_lo, u_hi, pi(A_u))` for `u` in `(u_lo, u_hi]`, covering `(0, 1]`.
    pub pieces: Vec<(f64, f64, f64)>,
    /// `pi(V \ A_u)` per piece, summed directly rather than as `1 - pi(A_u)`.
    outside: Vec<f64>,
}

impl ThresholdCurve {
    /// `int_0^1 f(pi(A_u)) du`, summed piece by piece.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.pieces.iter().map(|&(lo, hi, m)| (hi - lo) * f(m)).sum()
    }

    /// `int_0^1 sqrt(pi(A_u) (1 - pi(A_u))) du`.
    pub fn spread(&self) -> f64 {
        self.pieces
            .iter()
            .zip(&self.outside)
            .map(|(&(lo, hi, m), &out)| (hi - lo) * (m * out).sqrt())
            .sum()
    }

    pub fn measure_at(&self, u: f64) -> f64 {
        self.pieces
            .iter()
            .find(|&&(lo, hi, _)| u > lo && u <= hi)
            .map_or(0.0, |p| p.2)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("u_lo\tu_hi\tmeasure\n");
        for (lo, hi, m) in &self.pieces {
            out.push_str(&format!("{lo}\t{hi}\t{m}\n"));
        }
        out
    }
}

fn curve_from_bits(chain: &MarkovChain, bits: u64) -> ThresholdCurve {
    let pi = chain.pi();
    let q = chain.inflow(bits);
    // (ratio, pi(y)) sorted by descending ratio; the measure of A_u on a
    // piece is the mass of all states whose ratio reaches the piece's top.
    let mut ratios: Vec<(f64, f64)> = (0..chain.n())
        .map(|y| ((q[y] / pi[y]).clamp(0.0, 1.0), pi[y]))
        .collect();
    ratios.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut breakpoints: Vec<f64> = ratios.iter().map(|r| r.0).collect();
    breakpoints.reverse();
    breakpoints.dedup();

    // Excluded mass is summed from the low-ratio end so that a piece's
    // complement never suffers cancellation.
    let mut outside_of = vec![0.0; ratios.len() + 1];
    for i in (0..ratios.len()).rev() {
        outside_of[i] = outside_of[i + 1] + ratios[i].1;
    }

    let mut pieces = Vec::with_capacity(breakpoints.len() + 1);
    let mut outside = Vec::with_capacity(breakpoints.len() + 1);
    let top = breakpoints.last().copied().unwrap_or(0.0);
    if top < 1.0 {
        pieces.push((top, 1.0, 0.0));
        outside.push(outside_of[0]);
    }
    let mut mass = 0.0;
    let mut idx = 0;
    for (k, &u_hi) in breakpoints.iter().enumerate().rev() {
        while idx < ratios.len() && ratios[idx].0 >= u_hi {
            mass += ratios[idx].1;
            idx += 1;
        }
        let u_lo = if k == 0 { 0.0 } else { breakpoints[k - 1] };
        if u_hi > u_lo {
            pieces.push((u_lo, u_hi, mass));
            outside.push(outside_of[idx]);
        }
    }
    pieces.reverse();
    outside.reverse();
    ThresholdCurve {
        breakpoints,
        pieces,
        outside,
    }
}

pub fn threshold_curve(chain: &MarkovChain, a: &SubsetMask) -> ThresholdCurve {
    curve_from_bits(chain, a.bits())
}

pub(crate) fn root_profile_bits(chain: &MarkovChain, bits: u64) -> f64 {
    let pi = chain.pi();
    let m = mask_measure(bits, pi);
    let mc = mask_measure(!bits & full_bits(chain.n()), pi);
    1.0 - curve_from_bits(chain, bits).spread() / (m * mc).sqrt()
}

/// `psi(A) = 1 - int_0^1 sqrt(pi(A_u)(1 - pi(A_u))) du / sqrt(pi(A)(1 - pi(A)))`.
pub fn root_profile_set(chain: &MarkovChain, a: &SubsetMask) -> Result<f64> {
    if !a.is_proper() {
        return Err(Error::DegenerateSubset);
    }
    Ok(root_profile_bits(chain, a.bits()))
}

/// Tightest root profile: the running minimum of `psi(A)` over
/// `pi(A) <= s`, constant above 1/2.
pub fn root_profile_curve(chain: &MarkovChain) -> Result<StepProfile> {
    flow::build_profile(chain, ProfileKind::Root, None)
}
