//! r-ergodic flow, r-conductance, r-modified flow and conductance, and their
//! set-size profiles by exhaustive subset enumeration.

use rayon::prelude::*;

use crate::chain::MarkovChain;
use crate::error::{Error, Result};
use crate::evolving;
use crate::profile::{ProfileKind, Step, StepProfile};
use crate::subset::{self, full_bits, mask_measure, SubsetMask, ENUMERATION_CAP};

/// Measures closer than this are treated as the same set size.
pub const MEASURE_TOL: f64 = 1e-12;

fn check_r(r: f64, lo_open: bool) -> Result<()> {
    let ok = if lo_open { r > 0.0 && r <= 1.0 } else { (0.0..=1.0).contains(&r) };
    if !ok {
        let range = if lo_open { "(0,1]" } else { "[0,1]" };
        return Err(Error::InvalidParameter(format!("r must lie in {range}, got {r}")));
    }
    Ok(())
}

fn check_proper(a: &SubsetMask) -> Result<()> {
    if !a.is_proper() {
        return Err(Error::DegenerateSubset);
    }
    Ok(())
}

/// `sum_{y in B} min{Q(A,y), r pi(y)}` given the inflow vector of `A`.
fn capped_flow(pi: &[f64], inflow: &[f64], b_bits: u64, r: f64) -> f64 {
    let mut total = 0.0;
    let mut rest = b_bits;
    while rest != 0 {
        let y = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        total += inflow[y].min(r * pi[y]);
    }
    total
}

/// Per-set quantities shared by all set functions.
struct SetView<'a> {
    pi: &'a [f64],
    bits: u64,
    comp: u64,
    m: f64,
    mc: f64,
    q: Vec<f64>,
    qc: Vec<f64>,
}

impl<'a> SetView<'a> {
    fn new(chain: &'a MarkovChain, bits: u64) -> Self {
        let pi = chain.pi();
        let comp = !bits & full_bits(chain.n());
        Self {
            pi,
            bits,
            comp,
            m: mask_measure(bits, pi),
            mc: mask_measure(comp, pi),
            q: chain.inflow(bits),
            qc: chain.inflow(comp),
        }
    }

    fn r_flow_min(&self, r: f64) -> f64 {
        capped_flow(self.pi, &self.q, self.comp, r).min(capped_flow(self.pi, &self.qc, self.bits, r))
    }

    fn r_conductance(&self, r: f64) -> f64 {
        self.r_flow_min(r) / (self.m * self.mc)
    }

    fn psi(&self, r: f64) -> f64 {
        capped_flow(self.pi, &self.q, full_bits(self.pi.len()), r) - r * self.m
    }

    fn psi_comp(&self, r: f64) -> f64 {
        capped_flow(self.pi, &self.qc, full_bits(self.pi.len()), r) - r * self.mc
    }

    fn r_modified_conductance(&self, r: f64) -> f64 {
        self.psi(r).max(self.psi_comp(r)) / (self.m * self.mc)
    }

    fn conductance(&self) -> f64 {
        let out: f64 = capped_flow(self.pi, &self.q, self.comp, 1.0);
        out / self.m.min(self.mc)
    }
}

/// `Q_r(A,B) = sum_{y in B} pi(y) min{Q(A,y)/pi(y), r}`.
pub fn r_ergodic_flow(chain: &MarkovChain, a: &SubsetMask, b: &SubsetMask, r: f64) -> Result<f64> {
    check_r(r, false)?;
    Ok(capped_flow(chain.pi(), &chain.inflow(a.bits()), b.bits(), r))
}

/// `Q_r(A) = min{Q_r(A,A^c), Q_r(A^c,A)}`.
pub fn r_flow_min(chain: &MarkovChain, a: &SubsetMask, r: f64) -> Result<f64> {
    check_r(r, false)?;
    check_proper(a)?;
    Ok(SetView::new(chain, a.bits()).r_flow_min(r))
}

/// `Q_r(A) / (pi(A) pi(A^c))`.
pub fn r_conductance(chain: &MarkovChain, a: &SubsetMask, r: f64) -> Result<f64> {
    check_r(r, false)?;
    check_proper(a)?;
    Ok(SetView::new(chain, a.bits()).r_conductance(r))
}

/// `Q(A,A^c) / min{pi(A), pi(A^c)}`.
pub fn conductance_classic(chain: &MarkovChain, a: &SubsetMask) -> Result<f64> {
    check_proper(a)?;
    Ok(SetView::new(chain, a.bits()).conductance())
}

/// `Psi_r(A) = Q_r(A,V) - r pi(A)`.
pub fn r_modified_flow(chain: &MarkovChain, a: &SubsetMask, r: f64) -> Result<f64> {
    check_r(r, true)?;
    let q = chain.inflow(a.bits());
    Ok(capped_flow(chain.pi(), &q, full_bits(chain.n()), r) - r * a.measure())
}

/// `max{Psi_r(A), Psi_r(A^c)} / (pi(A) pi(A^c))`.
pub fn r_modified_conductance(chain: &MarkovChain, a: &SubsetMask, r: f64) -> Result<f64> {
    check_r(r, true)?;
    check_proper(a)?;
    Ok(SetView::new(chain, a.bits()).r_modified_conductance(r))
}

/// The subsets a profile has to visit: all of them, or one per cardinality
/// when the chain is invariant under every relabeling of its states.
fn profile_masks(chain: &MarkovChain, cap: usize) -> Result<Vec<u64>> {
    let n = chain.n();
    if chain.is_exchangeable() && n < subset::MAX_MASK_STATES {
        return Ok((1..n).map(|k| full_bits(k)).collect());
    }
    subset::check_enumeration_cap(n, cap)?;
    Ok(subset::proper_masks(n).collect())
}

/// Evaluates `kind` on one subset.
pub fn set_value(chain: &MarkovChain, bits: u64, kind: ProfileKind, r: Option<f64>) -> f64 {
    let view = SetView::new(chain, bits);
    match kind {
        ProfileKind::RConductance => view.r_conductance(r.unwrap_or(1.0)),
        ProfileKind::RModifiedConductance => view.r_modified_conductance(r.unwrap_or(1.0)),
        ProfileKind::Conductance => view.conductance(),
        ProfileKind::Root => evolving::root_profile_bits(chain, bits),
    }
}

/// Running-infimum profile of `kind` over subsets with `0 < pi(A) <= 1/2`,
/// with the default enumeration cap.
pub fn build_profile(chain: &MarkovChain, kind: ProfileKind, r: Option<f64>) -> Result<StepProfile> {
    build_profile_capped(chain, kind, r, ENUMERATION_CAP)
}

/// As [`build_profile`] with an explicit cap on the state count.
///
/// Each step takes the infimum over all subsets of measure at most its
/// right endpoint, so on `(s_{i-1}, s_i]` the stored value never exceeds the
/// exact profile and equals it at `s_i`. The last step sits at 1/2 and the
/// tail repeats it.
pub fn build_profile_capped(
    chain: &MarkovChain,
    kind: ProfileKind,
    r: Option<f64>,
    cap: usize,
) -> Result<StepProfile> {
    match (kind.uses_r(), r) {
        (true, None) => {
            return Err(Error::InvalidParameter(format!("{} needs a value of r", kind.name())))
        }
        (true, Some(r)) => check_r(r, true)?,
        _ => {}
    }
    let masks = profile_masks(chain, cap)?;
    let pi = chain.pi();
    let mut values: Vec<(f64, f64)> = masks
        .par_iter()
        .filter_map(|&bits| {
            let m = mask_measure(bits, pi);
            (m <= 0.5 + MEASURE_TOL).then(|| (m, set_value(chain, bits, kind, r)))
        })
        .collect();
    values.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let mut steps: Vec<Step> = Vec::new();
    let mut running = f64::INFINITY;
    let mut i = 0;
    while i < values.len() {
        let s = values[i].0;
        let mut j = i;
        while j < values.len() && values[j].0 - s <= MEASURE_TOL {
            running = running.min(values[j].1);
            j += 1;
        }
        let s_hi = if (s - 0.5).abs() <= MEASURE_TOL { 0.5 } else { s };
        steps.push(Step { s_hi, value: running });
        i = j;
    }
    // Every chain has singletons, and pi(v) <= 1/2 for some v.
    if steps.last().map_or(true, |st| st.s_hi < 0.5) {
        steps.push(Step { s_hi: 0.5, value: running });
    }
    StepProfile::new(kind, r, steps)
}

/// `delta_0 = min{ |pi(A) - pi(B)| : pi(A) != pi(B) }`.
///
/// Exactly `1/n` for uniform `pi`; otherwise from all `2^n` subset sums,
/// treating sums within [`MEASURE_TOL`] as equal.
pub fn delta0(chain: &MarkovChain) -> Result<f64> {
    let n = chain.n();
    if chain.is_uniform() {
        return Ok(1.0 / n as f64);
    }
    subset::check_enumeration_cap(n, ENUMERATION_CAP)?;
    let pi = chain.pi();
    let mut sums = vec![0.0f64; 1 << n];
    for bits in 1..(1usize << n) {
        let low = bits.trailing_zeros() as usize;
        sums[bits] = sums[bits & (bits - 1)] + pi[low];
    }
    sums.par_sort_unstable_by(|a, b| a.total_cmp(b));
    sums.windows(2)
        .map(|w| w[1] - w[0])
        .filter(|&g| g > MEASURE_TOL)
        .min_by(|a, b| a.total_cmp(b))
        .ok_or_else(|| Error::InvalidParameter("all subset measures coincide".into()))
}
