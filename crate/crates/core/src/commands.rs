//! Command drivers behind the `mixpaths` binary. Each returns the rendered
//! output so it can be tested without a process boundary.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::audit::{audit_chain, audit_fleet, inequality_lemma_grid, AuditOptions};
use crate::bounds::{BoundReport, ReportOptions, DEFAULT_NO_HOLDING_GRID};
use crate::cayley::{cayley_alternating_diameter, cayley_word_paths};
use crate::chain::{empirical_mixing_time, MarkovChain};
use crate::error::{Error, Result};
use crate::flow::{build_profile, delta0};
use crate::generators::{
    builtin_examples, cayley_walk, complete_graph_walk, cycle_walk, eulerian_walk, flip,
    random_chain, random_fleet, rotation, RandomChainParams,
};
use crate::group::GroupPresentation;
use crate::io::{parse_chain, parse_multigraph, parse_paths, write_chain};
use crate::paths::{
    alt_congestion_tsv, alt_vertex_congestion, build_alternating_paths, build_bfs_paths,
    congestion, congestion_tsv, derive_alternating_from_plain, AlternatingPathFamily, PathFamily,
};
use crate::profile::{ProfileKind, StepProfile};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const VIOLATIONS: i32 = 3;
}

/// Exit code for an error surfaced by a command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) => exit::USAGE,
        _ => exit::VALIDATION,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Tsv,
}

/// Where canonical paths come from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum PathSource {
    #[default]
    Bfs,
    File(PathBuf),
    Cayley,
    AltAuto,
    AltDerive,
}

impl std::str::FromStr for PathSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bfs" => Ok(PathSource::Bfs),
            "cayley" => Ok(PathSource::Cayley),
            "alt-auto" => Ok(PathSource::AltAuto),
            "alt-derive" => Ok(PathSource::AltDerive),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(PathSource::File(PathBuf::from(p))),
                _ => Err(Error::InvalidParameter(format!(
                    "unknown path source '{s}' (bfs, file:PATH, cayley, alt-auto, alt-derive)"
                ))),
            },
        }
    }
}

/// Generator description, e.g. `cycle 5 0.5` or `cayley z5` with generators
/// and probabilities alongside.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GenSpec {
    pub words: Vec<String>,
    pub gens: Option<String>,
    pub probs: Option<Vec<f64>>,
    pub seed: u64,
}

/// A chain together with its name and, for Cayley walks, its group.
#[derive(Debug, Clone)]
pub struct LoadedChain {
    pub label: String,
    pub chain: MarkovChain,
    pub group: Option<GroupPresentation>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn arg<T: std::str::FromStr>(words: &[String], i: usize, what: &str) -> Result<T> {
    let w = words
        .get(i)
        .ok_or_else(|| usage(format!("missing {what}")))?;
    w.parse()
        .map_err(|_| usage(format!("bad {what} '{w}'")))
}

/// Builds a chain from a generator description.
pub fn generate(spec: &GenSpec) -> Result<LoadedChain> {
    let words = &spec.words;
    let kind = words.first().map(String::as_str).unwrap_or("");
    let plain = |label: String, chain: MarkovChain| LoadedChain {
        label,
        chain,
        group: None,
    };
    match kind {
        "cycle" => {
            let n: usize = arg(words, 1, "cycle length")?;
            let a: f64 = arg(words, 2, "holding probability")?;
            Ok(plain(format!("cycle({n},{a})"), cycle_walk(n, a)?))
        }
        "complete" => {
            let n: usize = arg(words, 1, "state count")?;
            Ok(plain(format!("complete({n})"), complete_graph_walk(n)?))
        }
        "rotation" => {
            let n: usize = arg(words, 1, "state count")?;
            Ok(plain(format!("rotation({n})"), rotation(n)?))
        }
        "flip" => Ok(plain("flip".into(), flip())),
        "eulerian" => {
            let file: String = arg(words, 1, "multigraph file")?;
            let graph = parse_multigraph(&std::fs::read_to_string(&file)?)?;
            let d = match words.get(2) {
                Some(_) => arg(words, 2, "degree")?,
                None => graph.max_degree(),
            };
            Ok(plain(format!("eulerian({file},d={d})"), eulerian_walk(&graph, d)?))
        }
        "random" => {
            let n: usize = arg(words, 1, "state count")?;
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(spec.seed);
            let chain = random_chain(&mut rng, n, &RandomChainParams::default())?;
            Ok(plain(format!("random(n={n},seed={})", spec.seed), chain))
        }
        "cayley" => {
            let group: String = arg(words, 1, "group (zN or sK)")?;
            let gens = spec
                .gens
                .as_deref()
                .ok_or_else(|| usage("cayley needs --gens"))?;
            let probs = match &spec.probs {
                Some(p) => p.clone(),
                None => {
                    let count = crate::group::split_generators(gens).len();
                    vec![1.0 / count as f64; count]
                }
            };
            let g = GroupPresentation::parse(&group, gens, &probs)?;
            let chain = cayley_walk(&g)?;
            Ok(LoadedChain {
                label: format!("cayley({group};{gens})"),
                chain,
                group: Some(g),
            })
        }
        "" => Err(usage("missing generator name")),
        other => Err(usage(format!(
            "unknown generator '{other}' (cycle, complete, rotation, flip, eulerian, random, cayley)"
        ))),
    }
}

/// Reads a chain file.
pub fn load_chain_file(path: &std::path::Path) -> Result<LoadedChain> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(LoadedChain {
        label: path.display().to_string(),
        chain: parse_chain(&text)?,
        group: None,
    })
}

/// `gen`: the chain file for a generator.
pub fn run_gen(spec: &GenSpec) -> Result<String> {
    Ok(write_chain(&generate(spec)?.chain))
}

/// Options shared by `analyze`, `bounds` and `paths`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub epsilon: f64,
    pub start: usize,
    pub r_values: Vec<f64>,
    pub paths: PathSource,
    pub format: OutputFormat,
    pub sharper_evolving: bool,
    pub max_steps: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.5,
            start: 0,
            r_values: Vec::new(),
            paths: PathSource::Bfs,
            format: OutputFormat::Text,
            sharper_evolving: false,
            max_steps: 100_000,
        }
    }
}

impl AnalysisConfig {
    fn validate(&self, chain: &MarkovChain) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(usage(format!("epsilon must be > 0, got {}", self.epsilon)));
        }
        if self.start >= chain.n() {
            return Err(usage(format!(
                "start state {} out of range for {} states",
                self.start,
                chain.n()
            )));
        }
        if let Some(r) = self.r_values.iter().find(|r| !(**r > 0.0 && **r <= 1.0)) {
            return Err(usage(format!("r must lie in (0,1], got {r}")));
        }
        Ok(())
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn profile_text(out: &mut String, p: &StepProfile) {
    let r = p.r.map_or(String::new(), |r| format!(" r={r}"));
    writeln!(out, "{}{r}", p.kind.name()).unwrap();
    for st in p.steps() {
        writeln!(out, "  s <= {:<22} {}", st.s_hi, st.value).unwrap();
    }
}

/// `analyze`: stationary data, empirical mixing time, and profiles.
pub fn run_analyze(loaded: &LoadedChain, cfg: &AnalysisConfig) -> Result<String> {
    let chain = &loaded.chain;
    cfg.validate(chain)?;
    let rs = if cfg.r_values.is_empty() {
        DEFAULT_NO_HOLDING_GRID.to_vec()
    } else {
        cfg.r_values.clone()
    };
    let tau = empirical_mixing_time(chain, cfg.start, cfg.epsilon, cfg.max_steps)?;
    let mut profiles = Vec::new();
    for &r in &rs {
        profiles.push(build_profile(chain, ProfileKind::RConductance, Some(r))?);
    }
    for &r in &rs {
        profiles.push(build_profile(chain, ProfileKind::RModifiedConductance, Some(r))?);
    }
    profiles.push(build_profile(chain, ProfileKind::Conductance, None)?);
    profiles.push(build_profile(chain, ProfileKind::Root, None)?);
    let d0 = delta0(chain)?;

    let mut out = String::new();
    match cfg.format {
        OutputFormat::Text => {
            writeln!(out, "chain {} ({} states)", loaded.label, chain.n()).unwrap();
            writeln!(out, "pi {}", join(chain.pi())).unwrap();
            writeln!(out, "alpha {}", chain.alpha()).unwrap();
            writeln!(out, "pi_min {}", chain.pi_min()).unwrap();
            writeln!(out, "delta0 {d0}").unwrap();
            writeln!(out, "tau_{}({}) {tau}", cfg.start, cfg.epsilon).unwrap();
            for p in &profiles {
                profile_text(&mut out, p);
            }
        }
        OutputFormat::Tsv => {
            writeln!(out, "key\tvalue").unwrap();
            writeln!(out, "chain\t{}", loaded.label).unwrap();
            writeln!(out, "states\t{}", chain.n()).unwrap();
            for (i, w) in chain.pi().iter().enumerate() {
                writeln!(out, "pi[{i}]\t{w}").unwrap();
            }
            writeln!(out, "alpha\t{}", chain.alpha()).unwrap();
            writeln!(out, "pi_min\t{}", chain.pi_min()).unwrap();
            writeln!(out, "delta0\t{d0}").unwrap();
            let t = tau.steps().map_or("not reached".to_string(), |t| t.to_string());
            writeln!(out, "tau\t{t}").unwrap();
            for p in &profiles {
                out.push('\n');
                out.push_str(&p.to_tsv());
            }
        }
    }
    Ok(out)
}

/// Plain and alternating families for a path source; failures are kept so
/// reports can show them.
pub fn select_paths(
    loaded: &LoadedChain,
    source: &PathSource,
) -> Result<(Result<PathFamily>, Result<AlternatingPathFamily>)> {
    let chain = &loaded.chain;
    Ok(match source {
        PathSource::Bfs | PathSource::AltAuto => (build_bfs_paths(chain), build_alternating_paths(chain)),
        PathSource::AltDerive => {
            let plain = build_bfs_paths(chain);
            let alt = match &plain {
                Ok(p) => derive_alternating_from_plain(chain, p),
                Err(e) => Err(e.clone()),
            };
            (plain, alt)
        }
        PathSource::Cayley => {
            let group = loaded
                .group
                .as_ref()
                .ok_or_else(|| usage("--paths cayley needs a cayley generator"))?;
            (
                cayley_word_paths(group, chain).map(|c| c.family),
                cayley_alternating_diameter(group, chain).map(|c| c.family),
            )
        }
        PathSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let file = parse_paths(&text, chain)?;
            (
                file.plain
                    .ok_or_else(|| Error::PathFamily("no 'path' lines in file".into())),
                file.alternating
                    .ok_or_else(|| Error::PathFamily("no 'altpath' lines in file".into())),
            )
        }
    })
}

/// `bounds`: every theorem next to the empirical mixing time.
pub fn run_bounds(loaded: &LoadedChain, cfg: &AnalysisConfig) -> Result<String> {
    cfg.validate(&loaded.chain)?;
    let (plain, alt) = select_paths(loaded, &cfg.paths)?;
    let rs = (!cfg.r_values.is_empty()).then(|| cfg.r_values.clone());
    let options = ReportOptions {
        small_holding_r: rs.clone(),
        no_holding_r: rs,
        sharper_evolving: cfg.sharper_evolving,
        max_steps: cfg.max_steps,
    };
    let report = BoundReport::build(
        &loaded.chain,
        &loaded.label,
        cfg.start,
        cfg.epsilon,
        &plain,
        &alt,
        &options,
    )?;
    Ok(match cfg.format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Tsv => report.to_tsv(),
    })
}

/// `paths`: congestion statistics and load tables.
pub fn run_paths(loaded: &LoadedChain, cfg: &AnalysisConfig) -> Result<String> {
    let chain = &loaded.chain;
    cfg.validate(chain)?;
    let (plain, alt) = select_paths(loaded, &cfg.paths)?;
    let mut out = String::new();
    match &plain {
        Ok(f) => {
            let c = congestion(chain, f)?;
            match cfg.format {
                OutputFormat::Text => {
                    writeln!(out, "chain {} ({} states)", loaded.label, chain.n()).unwrap();
                    writeln!(out, "rho_v {}", c.rho_v).unwrap();
                    writeln!(out, "rho_e {}", c.rho_e).unwrap();
                    writeln!(out, "P0 {}", c.p0).unwrap();
                    writeln!(out, "max_len {}", c.stats.max_len).unwrap();
                    writeln!(out, "avg_len {}", c.stats.avg_len).unwrap();
                    writeln!(out, "avg_vertex_congestion {}", c.stats.avg_vertex_congestion).unwrap();
                    writeln!(out, "cycle_free {}", f.is_cycle_free()).unwrap();
                }
                OutputFormat::Tsv => out.push_str(&congestion_tsv(chain, f)),
            }
        }
        Err(e) => writeln!(out, "plain paths: {e}").unwrap(),
    }
    out.push('\n');
    match &alt {
        Ok(f) => {
            let c = alt_vertex_congestion(chain, f)?;
            match cfg.format {
                OutputFormat::Text => {
                    writeln!(out, "alternating rho_v {}", c.rho_v).unwrap();
                    writeln!(out, "alternating P0* {}", c.p0_star).unwrap();
                }
                OutputFormat::Tsv => out.push_str(&alt_congestion_tsv(chain, f)),
            }
        }
        Err(e) => writeln!(out, "alternating paths: {e}").unwrap(),
    }
    Ok(out)
}

/// What `verify` audits.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub chain: Option<PathBuf>,
    pub seed: u64,
    pub count: usize,
    pub max_n: usize,
    pub inject_fault: bool,
    pub format: OutputFormat,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            chain: None,
            seed: 7,
            count: 500,
            max_n: 6,
            inject_fault: false,
            format: OutputFormat::Text,
        }
    }
}

/// `verify`: the audit report and its exit code.
pub fn run_verify(cfg: &VerifyConfig) -> Result<(String, i32)> {
    let opts = AuditOptions {
        inject_fault: cfg.inject_fault,
        ..Default::default()
    };
    let report = match &cfg.chain {
        Some(path) => {
            let loaded = load_chain_file(path)?;
            audit_chain(&loaded.label, &loaded.chain, &opts)?
        }
        None => {
            let mut fleet = builtin_examples();
            fleet.extend(random_fleet(cfg.seed, cfg.count, cfg.max_n)?);
            let mut report = audit_fleet(&fleet, &opts)?;
            let grid = inequality_lemma_grid(101);
            report.checks += grid.checks;
            report.violations.extend(grid.violations);
            report
        }
    };

    let mut out = String::new();
    match cfg.format {
        OutputFormat::Text => {
            writeln!(
                out,
                "audited {} chains, {} checks, {} violations",
                report.chains,
                report.checks,
                report.violations.len()
            )
            .unwrap();
            for v in &report.violations {
                writeln!(out, "VIOLATION {v}").unwrap();
            }
            for o in &report.observations {
                writeln!(out, "note {}: {}", o.chain, o.note).unwrap();
            }
        }
        OutputFormat::Tsv => {
            writeln!(out, "kind\tcheck\tchain\tsubset\tr\tlhs\trhs").unwrap();
            for v in &report.violations {
                writeln!(
                    out,
                    "violation\t{}\t{}\t{}\t{}\t{}\t{}",
                    v.check,
                    v.chain,
                    v.subset.as_deref().unwrap_or("-"),
                    v.r.map_or("-".to_string(), |r| r.to_string()),
                    v.lhs,
                    v.rhs
                )
                .unwrap();
            }
            for o in &report.observations {
                writeln!(out, "note\t{}\t{}\t-\t-\t-\t-", o.note, o.chain).unwrap();
            }
        }
    }
    let code = if report.is_clean() { exit::OK } else { exit::VIOLATIONS };
    Ok((out, code))
}
