use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mixpaths::commands::{
    self, exit, AnalysisConfig, GenSpec, LoadedChain, OutputFormat, PathSource, VerifyConfig,
};

#[derive(Parser)]
#[command(name = "mixpaths", version, about = "Mixing-time bounds for non-lazy, non-reversible Markov chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated chain file.
    Gen {
        /// Generator and its parameters, e.g. `cycle 5 0.5`, `complete 4`,
        /// `eulerian arcs.txt 3`, `cayley z5`.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stationary data, empirical mixing time, and profiles.
    Analyze(AnalysisArgs),
    /// Every mixing-time bound next to the empirical mixing time.
    Bounds(AnalysisArgs),
    /// Canonical path congestion.
    Paths(AnalysisArgs),
    /// Audit lemmas and bound soundness on built-in and random chains.
    Verify {
        #[arg(long)]
        chain: Option<PathBuf>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Perturb the root profile to check the auditor notices.
        #[arg(long)]
        inject_fault: bool,
        #[arg(long)]
        tsv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Cayley generators, e.g. `id,+1` or `id,(12),(123)`.
    #[arg(long)]
    gens: Option<String>,
    /// Generator probabilities, comma separated.
    #[arg(long, value_delimiter = ',')]
    probs: Option<Vec<f64>>,
}

#[derive(Args)]
struct AnalysisArgs {
    /// Chain file.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    chain: Option<PathBuf>,
    /// Generator spec in one string, e.g. "cycle 5 0.5".
    #[arg(long)]
    gen: Option<String>,
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    start: usize,
    #[arg(long = "r")]
    r: Vec<f64>,
    /// bfs, file:PATH, cayley, alt-auto or alt-derive.
    #[arg(long, default_value = "bfs")]
    paths: String,
    /// Use the sharper evolving-set form (assumes the convexity condition).
    #[arg(long)]
    sharper: bool,
    #[arg(long, default_value_t = 100_000)]
    max_steps: u64,
    #[arg(long)]
    tsv: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn format(tsv: bool) -> OutputFormat {
    if tsv {
        OutputFormat::Tsv
    } else {
        OutputFormat::Text
    }
}

impl AnalysisArgs {
    fn load(&self) -> mixpaths::Result<LoadedChain> {
        match (&self.chain, &self.gen) {
            (Some(path), _) => commands::load_chain_file(path),
            (None, Some(spec)) => commands::generate(&GenSpec {
                words: spec.split_whitespace().map(String::from).collect(),
                gens: self.group.gens.clone(),
                probs: self.group.probs.clone(),
                seed: self.seed,
            }),
            (None, None) => unreachable!("clap requires --chain or --gen"),
        }
    }

    fn config(&self) -> mixpaths::Result<AnalysisConfig> {
        Ok(AnalysisConfig {
            epsilon: self.epsilon,
            start: self.start,
            r_values: self.r.clone(),
            paths: self.paths.parse::<PathSource>()?,
            format: format(self.tsv),
            sharper_evolving: self.sharper,
            max_steps: self.max_steps,
        })
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> mixpaths::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(Into::into),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn run(cli: Cli) -> mixpaths::Result<i32> {
    match cli.command {
        Command::Gen { spec, group, seed, out } => {
            let text = commands::run_gen(&GenSpec {
                words: spec,
                gens: group.gens,
                probs: group.probs,
                seed,
            })?;
            emit(&text, &out)?;
            Ok(exit::OK)
        }
        Command::Analyze(a) => {
            emit(&commands::run_analyze(&a.load()?, &a.config()?)?, &a.out)?;
            Ok(exit::OK)
        }
        Command::Bounds(a) => {
            emit(&commands::run_bounds(&a.load()?, &a.config()?)?, &a.out)?;
            Ok(exit::OK)
        }
        Command::Paths(a) => {
            emit(&commands::run_paths(&a.load()?, &a.config()?)?, &a.out)?;
            Ok(exit::OK)
        }
        Command::Verify { chain, seed, count, max_n, inject_fault, tsv, out } => {
            let (text, code) = commands::run_verify(&VerifyConfig {
                chain,
                seed,
                count,
                max_n,
                inject_fault,
                format: format(tsv),
            })?;
            emit(&text, &out)?;
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { exit::OK as u8 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}
