//! Mixing-time bounds: profile integrals evaluated exactly over step
//! functions, closed-form canonical path bounds, Poincaré-style baselines and
//! comparison reports.

use std::fmt::{self, Write as _};

use crate::chain::{empirical_mixing_time, MarkovChain, MixingTime};
use crate::error::{Error, Result};
use crate::flow::{build_profile, delta0};
use crate::paths::{
    alt_vertex_congestion, congestion, remove_cycles, AlternatingPathFamily, PathFamily,
};
use crate::profile::{ProfileKind, StepProfile};

/// How the profile value `v` enters the denominator `s g(v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    /// `g = v`.
    Plain,
    /// `g = v^2`.
    Square,
    /// `g = min{v^2, r v}`.
    ModifiedMin { r: f64 },
}

impl Weight {
    fn apply(&self, v: f64) -> f64 {
        match *self {
            Weight::Plain => v,
            Weight::Square => v * v,
            Weight::ModifiedMin { r } => (v * v).min(r * v),
        }
    }
}

/// `int_lo^hi ds / (s g(s))` over a step profile, summed as
/// `ln(b/a) / g` per piece. Infinite when `g` vanishes on part of the range;
/// 0 when `lo >= hi`.
pub fn integrate_reciprocal(profile: &StepProfile, weight: Weight, lo: f64, hi: f64) -> Result<f64> {
    if !(lo > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "integration lower limit must be > 0, got {lo}"
        )));
    }
    if lo >= hi {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for (a, b, v) in profile.pieces() {
        let (a, b) = (a.max(lo), b.min(hi));
        if a >= b {
            continue;
        }
        let g = weight.apply(v);
        if !(g > 0.0) {
            return Ok(f64::INFINITY);
        }
        total += (b / a).ln() / g;
    }
    Ok(total)
}

/// A bound as reported: a number, infinity, or a failed precondition.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Finite(f64),
    Infinite,
    NotApplicable(String),
}

impl BoundValue {
    fn from_real(v: f64) -> Self {
        if v.is_finite() {
            BoundValue::Finite(v)
        } else {
            BoundValue::Infinite
        }
    }

    fn ceiled(v: f64) -> Self {
        Self::from_real(v.ceil())
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            BoundValue::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundValue::Infinite)
    }

    pub fn is_not_applicable(&self) -> bool {
        matches!(self, BoundValue::NotApplicable(_))
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Finite(v) if v.fract() == 0.0 => write!(f, "{v}"),
            BoundValue::Finite(v) => write!(f, "{v:.4}"),
            BoundValue::Infinite => write!(f, "infinite"),
            BoundValue::NotApplicable(why) => write!(f, "not applicable: {why}"),
        }
    }
}

fn check_eps_start(chain: &MarkovChain, x: usize, eps: f64) -> Result<()> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be > 0, got {eps}")));
    }
    if x >= chain.n() {
        return Err(Error::InvalidParameter(format!(
            "start state {x} out of range for {} states",
            chain.n()
        )));
    }
    Ok(())
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidParameter(format!("r must lie in (0,1], got {r}")));
    }
    Ok(())
}

/// `ln(1/(eps sqrt(m)))`, clamped at 0.
fn log_term(eps: f64, m: f64) -> f64 {
    (1.0 / (eps * m.sqrt())).ln().max(0.0)
}

/// Small holding probability theorem on a prebuilt `Phi_r` profile.
pub fn bound_small_holding_from_profile(profile: &StepProfile, r: f64, pi_x: f64, eps: f64) -> Result<BoundValue> {
    check_r(r)?;
    let integral = integrate_reciprocal(profile, Weight::Square, 4.0 * pi_x, 4.0 / (eps * eps))?;
    let factor = 4.0 * r.min(1.0 - r);
    if integral == 0.0 || factor == 0.0 {
        return Ok(BoundValue::Finite(0.0));
    }
    Ok(BoundValue::ceiled(factor * integral))
}

/// `ceil(int_{4pi(x)}^{4/eps^2} 4 min{r,1-r} ds / (s Phi_r(s)^2))`, valid
/// when `r <= alpha`.
pub fn bound_small_holding(chain: &MarkovChain, x: usize, eps: f64, r: f64) -> Result<BoundValue> {
    check_eps_start(chain, x, eps)?;
    check_r(r)?;
    if r > chain.alpha() {
        return Ok(BoundValue::NotApplicable(format!(
            "needs r <= alpha = {}",
            chain.alpha()
        )));
    }
    let profile = build_profile(chain, ProfileKind::RConductance, Some(r))?;
    bound_small_holding_from_profile(&profile, r, chain.pi()[x], eps)
}

/// No holding probability theorem on a prebuilt modified profile.
pub fn bound_no_holding_from_profile(profile: &StepProfile, r: f64, pi_x: f64, eps: f64) -> Result<BoundValue> {
    check_r(r)?;
    let integral = integrate_reciprocal(
        profile,
        Weight::ModifiedMin { r },
        4.0 * pi_x,
        4.0 / (eps * eps),
    )?;
    if integral == 0.0 {
        return Ok(BoundValue::Finite(0.0));
    }
    Ok(BoundValue::ceiled(12.0 * r * integral))
}

/// `ceil(int_{4pi(x)}^{4/eps^2} 12 r ds / (s min{phi^r(s)^2, r phi^r(s)}))`.
pub fn bound_no_holding(chain: &MarkovChain, x: usize, eps: f64, r: f64) -> Result<BoundValue> {
    check_eps_start(chain, x, eps)?;
    check_r(r)?;
    let profile = build_profile(chain, ProfileKind::RModifiedConductance, Some(r))?;
    bound_no_holding_from_profile(&profile, r, chain.pi()[x], eps)
}

/// Evolving-set bound on a prebuilt root profile.
///
/// The sharper form assumes `s psi(1/(1+s^2))` is convex; that is not
/// checked.
pub fn bound_evolving_from_profile(profile: &StepProfile, pi_x: f64, eps: f64, use_sharper: bool) -> Result<BoundValue> {
    let integral = if use_sharper {
        0.5 * integrate_reciprocal(profile, Weight::Plain, pi_x, 1.0 / (eps * eps))?
    } else {
        integrate_reciprocal(profile, Weight::Plain, 4.0 * pi_x, 4.0 / (eps * eps))?
    };
    if integral == 0.0 {
        return Ok(BoundValue::Finite(0.0));
    }
    Ok(BoundValue::ceiled(integral))
}

/// `ceil(int_{4pi(x)}^{4/eps^2} ds / (s psi(s)))`, or with `use_sharper`
/// `ceil(int_{pi(x)}^{1/eps^2} ds / (2 s psi(s)))`.
pub fn bound_evolving(chain: &MarkovChain, x: usize, eps: f64, use_sharper: bool) -> Result<BoundValue> {
    check_eps_start(chain, x, eps)?;
    let profile = build_profile(chain, ProfileKind::Root, None)?;
    bound_evolving_from_profile(&profile, chain.pi()[x], eps, use_sharper)
}

/// Both forms of the small-holding canonical path theorem, with the
/// congestion values they used.
#[derive(Debug, Clone, PartialEq)]
pub struct PathsHoldingBound {
    pub bound1: BoundValue,
    pub bound2: BoundValue,
    pub rho_v: f64,
    pub rho_e: f64,
    pub p0: f64,
}

/// `bound1 = 4 rho_v max{rho_v/alpha, rho_e} log(1/(eps sqrt(pi(x))))` and
/// `bound2 = (rho_v^2 - 1)/min{alpha, P_0} + 4 rho_v max{..} log(1/(eps sqrt(pi_0 rho_v)))`.
/// Cycles are removed from `family` first. Values are reported unrounded.
pub fn bound_paths_holding(chain: &MarkovChain, x: usize, eps: f64, family: &PathFamily) -> Result<PathsHoldingBound> {
    check_eps_start(chain, x, eps)?;
    let family = remove_cycles(family);
    let c = congestion(chain, &family)?;
    let alpha = chain.alpha();
    if alpha <= 0.0 {
        let na = BoundValue::NotApplicable("needs alpha > 0".into());
        return Ok(PathsHoldingBound {
            bound1: na.clone(),
            bound2: na,
            rho_v: c.rho_v,
            rho_e: c.rho_e,
            p0: c.p0,
        });
    }
    let lead = 4.0 * c.rho_v * (c.rho_v / alpha).max(c.rho_e);
    let bound1 = BoundValue::from_real(lead * log_term(eps, chain.pi()[x]));
    let bound2 = if eps > 2f64.sqrt() {
        BoundValue::NotApplicable("needs epsilon <= sqrt(2)".into())
    } else {
        let warmup = (c.rho_v * c.rho_v - 1.0).max(0.0) / alpha.min(c.p0);
        BoundValue::from_real(warmup + lead * log_term(eps, chain.pi_min() * c.rho_v))
    };
    Ok(PathsHoldingBound {
        bound1,
        bound2,
        rho_v: c.rho_v,
        rho_e: c.rho_e,
        p0: c.p0,
    })
}

/// No holding probability path theorem with its inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct PathsNoHoldingBound {
    pub bound: BoundValue,
    pub rho_v: f64,
    pub p0_star: f64,
    pub delta0: f64,
}

/// `ceil((40 rho_v^2 / P_0*) log(1/(eps sqrt(delta_0 rho_v))))` for an
/// alternating family.
pub fn bound_paths_noholding(
    chain: &MarkovChain,
    x: usize,
    eps: f64,
    family: &AlternatingPathFamily,
) -> Result<PathsNoHoldingBound> {
    check_eps_start(chain, x, eps)?;
    if eps > 1.0 {
        return Err(Error::InvalidParameter(format!("needs epsilon <= 1, got {eps}")));
    }
    let c = alt_vertex_congestion(chain, family)?;
    let d0 = delta0(chain)?;
    let value = 40.0 * c.rho_v * c.rho_v / c.p0_star * log_term(eps, d0 * c.rho_v);
    Ok(PathsNoHoldingBound {
        bound: BoundValue::ceiled(value),
        rho_v: c.rho_v,
        p0_star: c.p0_star,
        delta0: d0,
    })
}

/// Earlier canonical path bounds, for comparison columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Baseline {
    /// `(rho_e / 2 alpha) min{4 rho_e, l} log(..)`.
    Lazy { alpha: f64, rho_e: f64, ell: f64 },
    /// `2 rho_e l log(..)` for odd-length paths.
    OddPaths { rho_e: f64, ell: f64 },
    /// `2 rho_e min{rho_e, l} log(..)` for paths alternating `P` and `P*`.
    Alternating { rho_e: f64, ell: f64 },
}

/// Evaluates a baseline with `log(1/(eps sqrt(pi(x))))`.
pub fn baseline_poincare(baseline: Baseline, eps: f64, pi_x: f64) -> f64 {
    let log = log_term(eps, pi_x);
    match baseline {
        Baseline::Lazy { alpha, .. } if alpha <= 0.0 => f64::INFINITY,
        Baseline::Lazy { alpha, rho_e, ell } => rho_e / (2.0 * alpha) * (4.0 * rho_e).min(ell) * log,
        Baseline::OddPaths { rho_e, ell } => 2.0 * rho_e * ell * log,
        Baseline::Alternating { rho_e, ell } => 2.0 * rho_e * rho_e.min(ell) * log,
    }
}

/// `{alpha, alpha/2, alpha/4}`, empty when `alpha = 0`.
pub fn default_small_holding_grid(alpha: f64) -> Vec<f64> {
    [1.0, 0.5, 0.25]
        .iter()
        .map(|k| k * alpha)
        .filter(|&r| r > 0.0 && r <= 1.0)
        .collect()
}

pub const DEFAULT_NO_HOLDING_GRID: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

/// One row of a [`BoundReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub tag: String,
    pub params: Vec<(String, f64)>,
    pub value: BoundValue,
    /// Smallest finite value among rows sharing the tag.
    pub best: bool,
}

impl BoundEntry {
    fn new(tag: &str, params: Vec<(&str, f64)>, value: BoundValue) -> Self {
        Self {
            tag: tag.to_string(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            value,
            best: false,
        }
    }

    fn params_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={}", fmt_num(*v)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn fmt_num(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v}")
    } else {
        format!("{v:.6}")
    }
}

/// All bounds for one chain, start and epsilon next to the empirical time.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub chain_id: String,
    pub start: usize,
    pub epsilon: f64,
    pub entries: Vec<BoundEntry>,
    pub empirical: MixingTime,
}

/// What to include in a [`BoundReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    /// r values for the small-holding theorem; `None` uses
    /// [`default_small_holding_grid`].
    pub small_holding_r: Option<Vec<f64>>,
    /// r values for the no-holding theorem; `None` uses
    /// [`DEFAULT_NO_HOLDING_GRID`].
    pub no_holding_r: Option<Vec<f64>>,
    pub sharper_evolving: bool,
    pub max_steps: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            small_holding_r: None,
            no_holding_r: None,
            sharper_evolving: false,
            max_steps: 100_000,
        }
    }
}

fn value_or_na(res: Result<BoundValue>) -> BoundValue {
    res.unwrap_or_else(|e| BoundValue::NotApplicable(e.to_string()))
}

impl BoundReport {
    /// Evaluates every theorem, surfacing failed path constructions as
    /// not-applicable rows.
    pub fn build(
        chain: &MarkovChain,
        chain_id: &str,
        x: usize,
        eps: f64,
        plain: &Result<PathFamily>,
        alternating: &Result<AlternatingPathFamily>,
        options: &ReportOptions,
    ) -> Result<Self> {
        check_eps_start(chain, x, eps)?;
        let alpha = chain.alpha();
        let mut entries = Vec::new();

        let small_r = options
            .small_holding_r
            .clone()
            .unwrap_or_else(|| default_small_holding_grid(alpha));
        if small_r.is_empty() {
            entries.push(BoundEntry::new(
                "small-holding",
                vec![("alpha", alpha)],
                BoundValue::NotApplicable("needs r <= alpha = 0".into()),
            ));
        }
        for r in small_r {
            check_r(r)?;
            let v = value_or_na(bound_small_holding(chain, x, eps, r));
            entries.push(BoundEntry::new("small-holding", vec![("r", r)], v));
        }
        for r in options.no_holding_r.clone().unwrap_or_else(|| DEFAULT_NO_HOLDING_GRID.to_vec()) {
            check_r(r)?;
            let v = value_or_na(bound_no_holding(chain, x, eps, r));
            entries.push(BoundEntry::new("no-holding", vec![("r", r)], v));
        }
        entries.push(BoundEntry::new(
            "evolving",
            vec![],
            value_or_na(bound_evolving(chain, x, eps, false)),
        ));
        if options.sharper_evolving {
            entries.push(BoundEntry::new(
                "evolving-sharper",
                vec![],
                value_or_na(bound_evolving(chain, x, eps, true)),
            ));
        }

        match plain {
            Ok(family) => {
                let b = bound_paths_holding(chain, x, eps, family)?;
                let params = vec![("rho_v", b.rho_v), ("rho_e", b.rho_e), ("alpha", alpha), ("P0", b.p0)];
                entries.push(BoundEntry::new("paths-holding-1", params.clone(), b.bound1));
                let mut p2 = params.clone();
                p2.push(("pi0", chain.pi_min()));
                entries.push(BoundEntry::new("paths-holding-2", p2, b.bound2));
                let ell = crate::paths::path_stats(chain, &remove_cycles(family)).max_len as f64;
                let base = baseline_poincare(
                    Baseline::Lazy { alpha, rho_e: b.rho_e, ell },
                    eps,
                    chain.pi()[x],
                );
                entries.push(BoundEntry::new(
                    "baseline-eq1",
                    vec![("rho_e", b.rho_e), ("ell", ell), ("alpha", alpha)],
                    BoundValue::from_real(base),
                ));
            }
            Err(e) => {
                let na = BoundValue::NotApplicable(format!("path family: {e}"));
                entries.push(BoundEntry::new("paths-holding-1", vec![], na.clone()));
                entries.push(BoundEntry::new("paths-holding-2", vec![], na.clone()));
                entries.push(BoundEntry::new("baseline-eq1", vec![], na));
            }
        }
        match alternating {
            Ok(family) if eps <= 1.0 => {
                let b = bound_paths_noholding(chain, x, eps, family);
                match b {
                    Ok(b) => entries.push(BoundEntry::new(
                        "paths-noholding",
                        vec![("rho_v_alt", b.rho_v), ("P0_star", b.p0_star), ("delta0", b.delta0)],
                        b.bound,
                    )),
                    Err(e) => entries.push(BoundEntry::new(
                        "paths-noholding",
                        vec![],
                        BoundValue::NotApplicable(e.to_string()),
                    )),
                }
            }
            Ok(_) => entries.push(BoundEntry::new(
                "paths-noholding",
                vec![],
                BoundValue::NotApplicable("needs epsilon <= 1".into()),
            )),
            Err(e) => entries.push(BoundEntry::new(
                "paths-noholding",
                vec![],
                BoundValue::NotApplicable(format!("alternating family: {e}")),
            )),
        }

        mark_best(&mut entries);
        Ok(Self {
            chain_id: chain_id.to_string(),
            start: x,
            epsilon: eps,
            entries,
            empirical: empirical_mixing_time(chain, x, eps, options.max_steps)?,
        })
    }

    pub fn entry<'a>(&'a self, tag: &'a str) -> impl Iterator<Item = &'a BoundEntry> + 'a {
        self.entries.iter().filter(move |e| e.tag == tag)
    }

    /// `bound / empirical`, when both are finite and the empirical time is
    /// positive.
    pub fn slack(&self, entry: &BoundEntry) -> Option<f64> {
        let t = self.empirical.steps()?;
        let v = entry.value.finite()?;
        (t > 0).then(|| v / t as f64)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "chain {}  start {}  epsilon {}  empirical {}",
            self.chain_id, self.start, self.epsilon, self.empirical
        )
        .unwrap();
        let rows: Vec<[String; 4]> = self
            .entries
            .iter()
            .map(|e| {
                let tag = if e.best { format!("{} *", e.tag) } else { e.tag.clone() };
                let slack = self.slack(e).map_or("-".to_string(), |s| format!("{s:.2}"));
                [tag, e.value.to_string(), slack, e.params_text()]
            })
            .collect();
        let header = ["theorem", "bound", "slack", "params"].map(String::from);
        let mut widths = [0; 4];
        for row in std::iter::once(&header).chain(&rows) {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        for row in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = row
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("tag\tparams\tbound\tempirical\tslack\n");
        for e in &self.entries {
            let slack = self.slack(e).map_or("-".to_string(), |s| format!("{s}"));
            let empirical = self
                .empirical
                .steps()
                .map_or("not reached".to_string(), |t| t.to_string());
            writeln!(
                out,
                "{}{}\t{}\t{}\t{}\t{}",
                e.tag,
                if e.best { "*" } else { "" },
                e.params_text(),
                e.value,
                empirical,
                slack
            )
            .unwrap();
        }
        out
    }
}

fn mark_best(entries: &mut [BoundEntry]) {
    for tag in ["small-holding", "no-holding"] {
        let best = entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.tag == tag)
            .filter_map(|(i, e)| e.value.finite().map(|v| (i, v)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let count = entries.iter().filter(|e| e.tag == tag).count();
        if let (Some((i, _)), true) = (best, count > 1) {
            entries[i].best = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_walk, flip, rotation, rows_equal_pi};
    use crate::paths::build_bfs_paths;
    use crate::profile::Step;

    #[test]
    fn constant_profile_integral() {
        let p = StepProfile::constant(ProfileKind::Root, None, 0.5);
        let v = integrate_reciprocal(&p, Weight::Plain, 0.1, 3.0).unwrap();
        assert!((v - 2.0 * 30f64.ln()).abs() < 1e-12);
        assert_eq!(integrate_reciprocal(&p, Weight::Plain, 2.0, 1.0).unwrap(), 0.0);
        assert!(integrate_reciprocal(&p, Weight::Plain, 0.0, 1.0).is_err());
    }

    #[test]
    fn zero_piece_is_infinite() {
        let p = StepProfile::new(
            ProfileKind::Root,
            None,
            vec![Step { s_hi: 0.25, value: 1.0 }, Step { s_hi: 0.5, value: 0.0 }],
        )
        .unwrap();
        assert!(integrate_reciprocal(&p, Weight::Plain, 0.1, 0.3).unwrap().is_infinite());
        assert!(integrate_reciprocal(&p, Weight::Plain, 0.1, 0.2).unwrap().is_finite());
    }

    #[test]
    fn small_holding_preconditions() {
        assert!(bound_small_holding(&flip(), 0, 0.5, 0.25).unwrap().is_not_applicable());
        assert!(bound_small_holding(&rotation(5).unwrap(), 0, 0.5, 0.1).unwrap().is_not_applicable());
        let c = cycle_walk(5, 0.5).unwrap();
        assert!(bound_small_holding(&c, 0, 0.5, 0.0).is_err());
        assert!(bound_small_holding(&c, 0, 0.5, 1.5).is_err());
        let v = bound_small_holding(&c, 0, 0.5, 0.25).unwrap().finite().unwrap();
        assert!(v >= 5.0);
    }

    #[test]
    fn flip_profiles_are_infinite() {
        let f = flip();
        for r in DEFAULT_NO_HOLDING_GRID {
            assert!(bound_no_holding(&f, 0, 0.5, r).unwrap().is_infinite());
        }
        assert!(bound_evolving(&f, 0, 0.5, false).unwrap().is_infinite());
    }

    #[test]
    fn evolving_closed_form_on_one_step_chain() {
        let e = rows_equal_pi(&[0.5, 0.3, 0.2]).unwrap();
        for (x, eps) in [(0, 0.5), (2, 0.25), (1, 0.1)] {
            let pi_x: f64 = e.pi()[x];
            let expected = ((4.0 / (eps * eps)) / (4.0 * pi_x)).ln().ceil();
            assert_eq!(bound_evolving(&e, x, eps, false).unwrap(), BoundValue::Finite(expected));
        }
    }

    #[test]
    fn already_mixed_range_gives_zero() {
        let e = rows_equal_pi(&[0.5, 0.5]).unwrap();
        assert_eq!(bound_evolving(&e, 0, 3.0, false).unwrap(), BoundValue::Finite(0.0));
    }

    #[test]
    fn cycle_path_bounds() {
        let c = cycle_walk(5, 0.5).unwrap();
        let f = build_bfs_paths(&c).unwrap();
        let b = bound_paths_holding(&c, 0, 0.5, &f).unwrap();
        assert!((b.rho_v - 2.0).abs() < 1e-12);
        assert!((b.rho_e - 4.0).abs() < 1e-12);
        let expected = 32.0 * (2.0 * 5f64.sqrt()).ln();
        assert!((b.bound1.finite().unwrap() - expected).abs() < 1e-9);
        assert!(bound_paths_holding(&c, 0, 2.0, &f).unwrap().bound2.is_not_applicable());
        assert!(bound_paths_holding(&flip(), 0, 0.5, &build_bfs_paths(&flip()).unwrap())
            .unwrap()
            .bound1
            .is_not_applicable());
    }

    #[test]
    fn baselines() {
        let l = (2.0 * 5f64.sqrt()).ln();
        let eq1 = baseline_poincare(Baseline::Lazy { alpha: 0.5, rho_e: 4.0, ell: 4.0 }, 0.5, 0.2);
        assert!((eq1 - 16.0 * l).abs() < 1e-12);
        let eq2 = baseline_poincare(Baseline::OddPaths { rho_e: 4.0, ell: 5.0 }, 0.5, 0.2);
        assert!((eq2 - 40.0 * l).abs() < 1e-12);
        let eq3 = baseline_poincare(Baseline::Alternating { rho_e: 4.0, ell: 3.0 }, 0.5, 0.2);
        assert!((eq3 - 24.0 * l).abs() < 1e-12);
        assert!(baseline_poincare(Baseline::Lazy { alpha: 0.0, rho_e: 4.0, ell: 4.0 }, 0.5, 0.2).is_infinite());
    }

    #[test]
    fn noholding_needs_small_epsilon() {
        let c = cycle_walk(5, 0.5).unwrap();
        let alt = crate::paths::derive_alternating_from_plain(&c, &build_bfs_paths(&c).unwrap()).unwrap();
        assert!(bound_paths_noholding(&c, 0, 1.5, &alt).is_err());
        let b = bound_paths_noholding(&c, 0, 0.5, &alt).unwrap();
        assert_eq!(b.delta0, 0.2);
        assert!(b.bound.finite().unwrap() >= 5.0);
    }

    #[test]
    fn report_renders() {
        let c = cycle_walk(5, 0.5).unwrap();
        let plain = build_bfs_paths(&c);
        let alt = crate::paths::build_alternating_paths(&c);
        let rep = BoundReport::build(&c, "cycle5", 0, 0.5, &plain, &alt, &ReportOptions::default()).unwrap();
        assert_eq!(rep.empirical, MixingTime::Reached(5));
        assert_eq!(rep.entry("small-holding").count(), 3);
        assert_eq!(rep.entry("small-holding").filter(|e| e.best).count(), 1);
        assert!(rep.to_text().contains("paths-noholding"));
        assert_eq!(rep.to_tsv().lines().count(), rep.entries.len() + 1);
    }
}
