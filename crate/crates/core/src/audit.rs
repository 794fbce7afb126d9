//! Brute-force auditor: checks every set-level identity and lemma over all
//! subsets, the path-congestion lemmas, and bound soundness against
//! empirical mixing times.

use std::fmt;

use rayon::prelude::*;

use crate::bounds::{
    bound_evolving_from_profile, bound_no_holding_from_profile, bound_paths_holding,
    bound_paths_noholding, bound_small_holding_from_profile, default_small_holding_grid,
    BoundValue, DEFAULT_NO_HOLDING_GRID,
};
use crate::chain::{empirical_mixing_time, ergodic_flow, MarkovChain, MixingTime};
use crate::error::Result;
use crate::evolving::{root_profile_set, threshold_curve};
use crate::flow::{
    build_profile, r_conductance, r_ergodic_flow, r_flow_min, r_modified_conductance,
    r_modified_flow,
};
use crate::generators::FleetChain;
use crate::paths::{
    alt_vertex_congestion, boundary_prob, build_alternating_paths, build_bfs_paths, congestion,
    derive_alternating_from_plain, AlternatingPathFamily,
};
use crate::profile::ProfileKind;
use crate::subset::{proper_masks, SubsetMask};

/// Tolerance for exact identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Slack allowed in lemma inequalities.
pub const LEMMA_TOL: f64 = 1e-10;

/// A failed check: `lhs` should have been `>=` (or `==`) `rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub check: String,
    pub chain: String,
    pub subset: Option<String>,
    pub r: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.check, self.chain)?;
        if let Some(a) = &self.subset {
            write!(f, " A={a}")?;
        }
        if let Some(r) = self.r {
            write!(f, " r={r}")?;
        }
        write!(f, ": lhs={} rhs={}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditOptions {
    /// r values for the flow identities and the modified-conductance lemma.
    pub r_grid: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub max_steps: u64,
    /// Largest chain whose subsets are enumerated exhaustively.
    pub subset_cap: usize,
    /// Replace the root profile by `psi - 1` in the lemma checks.
    pub inject_fault: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            r_grid: (1..=10).map(|k| k as f64 / 10.0).collect(),
            epsilons: vec![0.5, 0.25],
            max_steps: 100_000,
            subset_cap: 10,
            inject_fault: false,
        }
    }
}

/// Facts worth reporting that are not violations of a stated result.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub chain: String,
    pub note: String,
}

/// Audit outcome for one chain or a fleet.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AuditReport {
    pub chains: usize,
    pub checks: u64,
    pub violations: Vec<Violation>,
    pub observations: Vec<Observation>,
}

impl AuditReport {
    fn merge(&mut self, other: AuditReport) {
        self.chains += other.chains;
        self.checks += other.checks;
        self.violations.extend(other.violations);
        self.observations.extend(other.observations);
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Checker<'a> {
    chain: &'a str,
    report: AuditReport,
}

impl<'a> Checker<'a> {
    fn new(chain: &'a str) -> Self {
        Self {
            chain,
            report: AuditReport {
                chains: 1,
                ..Default::default()
            },
        }
    }

    /// Records a violation unless `lhs >= rhs - tol`.
    fn at_least(&mut self, check: &str, subset: Option<&SubsetMask>, r: Option<f64>, lhs: f64, rhs: f64, tol: f64) {
        self.report.checks += 1;
        if !(lhs >= rhs - tol) {
            self.fail(check, subset, r, lhs, rhs);
        }
    }

    fn equal(&mut self, check: &str, subset: Option<&SubsetMask>, r: Option<f64>, lhs: f64, rhs: f64, tol: f64) {
        self.report.checks += 1;
        if !((lhs - rhs).abs() <= tol) {
            self.fail(check, subset, r, lhs, rhs);
        }
    }

    fn fail(&mut self, check: &str, subset: Option<&SubsetMask>, r: Option<f64>, lhs: f64, rhs: f64) {
        self.report.violations.push(Violation {
            check: check.to_string(),
            chain: self.chain.to_string(),
            subset: subset.map(|a| a.to_string()),
            r,
            lhs,
            rhs,
        });
    }

    fn observe(&mut self, note: String) {
        self.report.observations.push(Observation {
            chain: self.chain.to_string(),
            note,
        });
    }
}

/// `sqrt(XY) + sqrt((1-X)(1-Y)) <= sqrt(1 - (X-Y)^2)` on a `points x points`
/// grid of `[0,1]^2`.
pub fn inequality_lemma_grid(points: usize) -> AuditReport {
    let mut c = Checker::new("grid");
    let step = 1.0 / (points.max(2) - 1) as f64;
    for i in 0..points {
        for j in 0..points {
            let (x, y) = (i as f64 * step, j as f64 * step);
            let lhs = (x * y).sqrt() + ((1.0 - x) * (1.0 - y)).sqrt();
            let rhs = (1.0 - (x - y) * (x - y)).sqrt();
            // Stored as rhs >= lhs.
            c.at_least("inequality lemma", None, None, rhs, lhs, IDENTITY_TOL);
        }
    }
    c.report
}

/// Every check on one chain.
pub fn audit_chain(label: &str, chain: &MarkovChain, opts: &AuditOptions) -> Result<AuditReport> {
    let mut c = Checker::new(label);
    if chain.n() <= opts.subset_cap {
        set_checks(&mut c, chain, opts)?;
    }
    path_checks(&mut c, chain, opts)?;
    soundness_checks(&mut c, chain, opts)?;
    Ok(c.report)
}

fn set_checks(c: &mut Checker, chain: &MarkovChain, opts: &AuditOptions) -> Result<()> {
    let pi = chain.pi();
    let alpha = chain.alpha();
    for bits in proper_masks(chain.n()) {
        let a = SubsetMask::from_bits(bits, pi)?;
        let ac = a.complement(pi);
        let s = Some(&a);

        let curve = threshold_curve(chain, &a);
        c.equal("threshold integral = pi(A)", s, None, curve.integrate(|m| m), a.measure(), IDENTITY_TOL);
        let psi = root_profile_set(chain, &a)?;
        c.equal("root profile complement symmetry", s, None, psi, root_profile_set(chain, &ac)?, IDENTITY_TOL);
        c.at_least("root profile >= 0", s, None, psi, 0.0, IDENTITY_TOL);
        c.at_least("root profile <= 1", s, None, 1.0, psi, IDENTITY_TOL);
        let psi = if opts.inject_fault { psi - 1.0 } else { psi };

        for &r in &opts.r_grid {
            let rf = Some(r);
            let q = ergodic_flow(chain, &a, &ac);
            let qr = r_ergodic_flow(chain, &a, &ac, r)?;
            c.at_least("Q_r(A,B) <= Q(A,B)", s, rf, q, qr, IDENTITY_TOL);
            c.at_least("Q_r(A,B) <= r pi(B)", s, rf, r * ac.measure(), qr, IDENTITY_TOL);
            if r == 1.0 {
                c.equal("Q_1 = Q", s, rf, qr, q, IDENTITY_TOL);
            }
            if r >= 1.0 - alpha {
                c.equal("laziness identity", s, rf, r_flow_min(chain, &a, r)?, q, IDENTITY_TOL);
            }
            let phi = r_conductance(chain, &a, r)?;
            if a.measure() <= 0.5 {
                c.at_least("Phi_r(A) <= 2r", s, rf, 2.0 * r, phi, IDENTITY_TOL);
            }
            let psi_r = r_modified_flow(chain, &a, r)?;
            c.at_least("Psi_r(A) >= 0", s, rf, psi_r, 0.0, IDENTITY_TOL);
            c.at_least("Psi_r(A) <= Q_r(A,A^c)", s, rf, qr, psi_r, IDENTITY_TOL);
            if r <= alpha {
                c.equal("Psi_r(A) = Q_r(A,A^c) for r <= alpha", s, rf, psi_r, qr, IDENTITY_TOL);
            }
            let mphi = r_modified_conductance(chain, &a, r)?;
            c.equal("modified conductance complement symmetry", s, rf, mphi, r_modified_conductance(chain, &ac, r)?, 0.0);
            if r <= alpha.min(0.5) {
                c.at_least("modified >= plain conductance", s, rf, mphi, phi, IDENTITY_TOL);
                let strong = 2.0 * r * (1.0 - (1.0 - phi * phi / (4.0 * r * r)).max(0.0).sqrt());
                c.at_least("root profile lemma (sqrt form)", s, rf, psi, strong, LEMMA_TOL);
                c.at_least("root profile lemma", s, rf, psi, phi * phi / (4.0 * r), LEMMA_TOL);
            }
            let modified = (mphi * mphi).min(r * mphi) / (12.0 * r);
            c.at_least("modified root profile lemma", s, rf, psi, modified, LEMMA_TOL);
        }
    }
    Ok(())
}

fn alternating_lemma(c: &mut Checker, chain: &MarkovChain, fam: &AlternatingPathFamily, which: &str, exhaustive: bool) -> Result<()> {
    let ac = alt_vertex_congestion(chain, fam)?;
    c.at_least(&format!("alternating rho_v >= 1 ({which})"), None, None, ac.rho_v, 1.0, IDENTITY_TOL);
    if exhaustive {
        let r = ac.p0_star.min(1.0);
        for bits in proper_masks(chain.n()) {
            let a = SubsetMask::from_bits(bits, chain.pi())?;
            let lhs = r_modified_conductance(chain, &a, r)?;
            c.at_least(
                &format!("alternating path lemma ({which})"),
                Some(&a),
                Some(r),
                lhs,
                ac.p0_star / (2.0 * ac.rho_v),
                LEMMA_TOL,
            );
        }
    }
    Ok(())
}

fn path_checks(c: &mut Checker, chain: &MarkovChain, opts: &AuditOptions) -> Result<()> {
    let exhaustive = chain.n() <= opts.subset_cap;
    let family = build_bfs_paths(chain)?;
    let cong = congestion(chain, &family)?;
    let alpha = chain.alpha();

    c.equal(
        "averages identity",
        None,
        None,
        cong.stats.avg_vertex_congestion,
        cong.stats.avg_len * (1.0 - chain.pi().iter().map(|w| w * w).sum::<f64>()),
        IDENTITY_TOL,
    );
    if alpha > 0.0 {
        c.at_least("rho_v <= rho_e (1 - alpha)", None, None, cong.rho_e * (1.0 - alpha), cong.rho_v, IDENTITY_TOL);
    }
    if cong.rho_e > cong.rho_v / cong.p0 + IDENTITY_TOL {
        c.observe(format!(
            "rho_e = {} exceeds rho_v / P0 = {}",
            cong.rho_e,
            cong.rho_v / cong.p0
        ));
    }
    if exhaustive {
        let r = (cong.rho_v / cong.rho_e).min(1.0);
        for bits in proper_masks(chain.n()) {
            let a = SubsetMask::from_bits(bits, chain.pi())?;
            c.at_least("path lemma", Some(&a), Some(r), r_conductance(chain, &a, r)?, 1.0 / cong.rho_e, LEMMA_TOL);
        }
    }

    if let Ok(alt) = build_alternating_paths(chain) {
        alternating_lemma(c, chain, &alt, "built", exhaustive)?;
    }
    if alpha > 0.0 {
        let derived = derive_alternating_from_plain(chain, &family)?;
        alternating_lemma(c, chain, &derived, "derived", exhaustive)?;
        let p0s = alt_vertex_congestion(chain, &derived)?.p0_star;
        let expected = alpha.min(boundary_prob(chain, &family));
        if (p0s - expected).abs() > IDENTITY_TOL {
            c.observe(format!("derived P0* = {p0s} differs from min(alpha, P0) = {expected}"));
        }
    }
    Ok(())
}

fn check_bound(c: &mut Checker, tag: &str, value: &BoundValue, tau: MixingTime, x: usize, eps: f64) {
    let Some(v) = value.finite() else { return };
    c.report.checks += 1;
    let ok = match tau {
        MixingTime::Reached(t) => v >= t as f64 - 1e-9,
        MixingTime::NotReached { max_steps } => v > max_steps as f64,
    };
    if !ok {
        let lhs = v;
        let rhs = tau.steps().map_or(f64::INFINITY, |t| t as f64);
        c.report.violations.push(Violation {
            check: format!("soundness of {tag} (x={x}, eps={eps})"),
            chain: c.chain.to_string(),
            subset: None,
            r: None,
            lhs,
            rhs,
        });
    }
}

fn soundness_checks(c: &mut Checker, chain: &MarkovChain, opts: &AuditOptions) -> Result<()> {
    if chain.n() > crate::subset::ENUMERATION_CAP && !chain.is_exchangeable() {
        return Ok(());
    }
    let pi = chain.pi();
    let small: Vec<_> = default_small_holding_grid(chain.alpha())
        .into_iter()
        .map(|r| Ok((r, build_profile(chain, ProfileKind::RConductance, Some(r))?)))
        .collect::<Result<_>>()?;
    let no: Vec<_> = DEFAULT_NO_HOLDING_GRID
        .iter()
        .map(|&r| Ok((r, build_profile(chain, ProfileKind::RModifiedConductance, Some(r))?)))
        .collect::<Result<_>>()?;
    let root = build_profile(chain, ProfileKind::Root, None)?;
    let family = build_bfs_paths(chain)?;
    let built = build_alternating_paths(chain).ok();
    let derived = if chain.alpha() > 0.0 {
        Some(derive_alternating_from_plain(chain, &family)?)
    } else {
        None
    };

    for &eps in &opts.epsilons {
        for x in 0..chain.n() {
            let tau = empirical_mixing_time(chain, x, eps, opts.max_steps)?;
            for (r, p) in &small {
                let v = bound_small_holding_from_profile(p, *r, pi[x], eps)?;
                check_bound(c, &format!("small-holding r={r}"), &v, tau, x, eps);
            }
            for (r, p) in &no {
                let v = bound_no_holding_from_profile(p, *r, pi[x], eps)?;
                check_bound(c, &format!("no-holding r={r}"), &v, tau, x, eps);
            }
            let v = bound_evolving_from_profile(&root, pi[x], eps, false)?;
            check_bound(c, "evolving", &v, tau, x, eps);
            let ph = bound_paths_holding(chain, x, eps, &family)?;
            check_bound(c, "paths-holding-1", &ph.bound1, tau, x, eps);
            check_bound(c, "paths-holding-2", &ph.bound2, tau, x, eps);
            if eps <= 1.0 {
                for (which, fam) in [("built", &built), ("derived", &derived)] {
                    if let Some(fam) = fam {
                        let b = bound_paths_noholding(chain, x, eps, fam)?;
                        check_bound(c, &format!("paths-noholding ({which})"), &b.bound, tau, x, eps);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Audits every chain in parallel; results keep fleet order.
pub fn audit_fleet(fleet: &[FleetChain], opts: &AuditOptions) -> Result<AuditReport> {
    let reports = fleet
        .par_iter()
        .map(|fc| audit_chain(&fc.label, &fc.chain, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut total = AuditReport::default();
    for r in reports {
        total.merge(r);
    }
    Ok(total)
}
