//! `scalerank` — partitioned-network analysis pipeline.
//!
//! Five subcommands share one configuration model: `topology`, `centrality`,
//! and `compare` analyze an input dataset, `synth` generates one, and `bench`
//! times the stages end to end. Every run writes a `run.json` manifest that
//! replays the run via `--config`.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or I/O error, 3 degenerate
//! computation (every requested statistic was null).

mod commands;
mod config;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use commands::{CliError, Outcome};
use config::{read_config_file, OutputFormat, PartialConfig, RunConfig};
use scalerank::centrality::Measure;
use scalerank::ingest::InputMode;
use scalerank::synth::SyntheticSpec;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "scalerank",
    version,
    about = "Multi-scale centrality, topology, and partition embeddedness for interlock-style networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Global and per-partition topology statistics and histograms
    Topology(CommonArgs),
    /// Centrality vectors at full scope and per partition, max-normalized
    Centrality(CommonArgs),
    /// Embeddedness: persistence, dominance, top-k overlap, correlations
    Compare(CommonArgs),
    /// Generate a seeded planted-partition graph with metadata
    Synth(SynthArgs),
    /// Time every pipeline stage on an input and record peak memory
    Bench(CommonArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// JSON config file, or a previous run.json manifest; flags override it
    #[arg(long)]
    config: Option<PathBuf>,

    /// Input CSV: affiliation records (person_id,entity_id) or an edge list
    #[arg(long)]
    input: Option<PathBuf>,

    /// Input shape
    #[arg(long, value_parser = InputMode::from_str)]
    mode: Option<InputMode>,

    /// Entity metadata CSV: partition labels and numeric attributes
    #[arg(long)]
    metadata: Option<PathBuf>,

    /// Output directory (created if missing)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Primary output format
    #[arg(long, value_parser = OutputFormat::from_str)]
    format: Option<OutputFormat>,

    /// RNG seed for sampling and generation [default: 42]
    #[arg(long)]
    seed: Option<u64>,

    /// Worker threads; 0 or omitted uses all cores
    #[arg(long)]
    threads: Option<usize>,

    /// Distance-sampling budget in node pairs [default: 100000]
    #[arg(long)]
    sample_pairs: Option<u64>,

    /// Betweenness pivots; 0 forces exact [default: exact under 50000 giant
    /// nodes, 10000 pivots above]
    #[arg(long)]
    pivots: Option<usize>,

    /// Measures to compute, comma-separated [default: all four]
    #[arg(long, value_delimiter = ',', value_parser = Measure::from_str)]
    measures: Option<Vec<Measure>>,

    /// Top-k cutoffs for overlap, comma-separated [default: 10,100]
    #[arg(long, value_delimiter = ',')]
    k_list: Option<Vec<usize>>,

    /// Skip persons sitting on more than this many boards (affiliation mode)
    #[arg(long)]
    max_boards: Option<usize>,
}

#[derive(Args)]
struct SynthArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Partition sizes, comma-separated (e.g. 500,300,200)
    #[arg(long, value_delimiter = ',')]
    partitions: Option<Vec<usize>>,

    /// Intra-partition edge probability [default: 0.1]
    #[arg(long)]
    intra: Option<f64>,

    /// Cross-partition edge probability [default: 0.01]
    #[arg(long)]
    cross: Option<f64>,

    /// Attribute noise standard deviation [default: 1]
    #[arg(long)]
    noise: Option<f64>,
}

impl CommonArgs {
    fn to_partial(&self) -> PartialConfig {
        PartialConfig {
            input: self.input.clone(),
            mode: self.mode,
            metadata: self.metadata.clone(),
            out: self.out.clone(),
            format: self.format,
            seed: self.seed,
            threads: self.threads,
            sample_pairs: self.sample_pairs,
            pivots: self.pivots,
            measures: self.measures.clone(),
            k_list: self.k_list.clone(),
            max_boards: self.max_boards,
            synth: None,
        }
    }
}

/// Layers file config under flag config and resolves defaults.
fn resolve(common: &CommonArgs) -> Result<RunConfig, CliError> {
    let from_file = match &common.config {
        Some(path) => read_config_file(path).map_err(CliError::Usage)?,
        None => PartialConfig::default(),
    };
    from_file
        .merged_under(common.to_partial())
        .resolve()
        .map_err(CliError::Usage)
}

/// Builds the generator spec for `synth`: `--partitions` constructs a fresh
/// uniform spec, while the remaining flags adjust whichever spec is in
/// effect. The generator seed follows `--seed` whenever that flag is given.
fn apply_synth_flags(cfg: &mut RunConfig, args: &SynthArgs) {
    if let Some(sizes) = &args.partitions {
        let mut spec = SyntheticSpec::uniform(
            sizes.clone(),
            args.intra.unwrap_or(0.1),
            args.cross.unwrap_or(0.01),
            cfg.seed,
        );
        if let Some(noise) = args.noise {
            spec.attribute_noise = noise;
        }
        cfg.synth = Some(spec);
    } else if let Some(spec) = cfg.synth.as_mut() {
        if let Some(intra) = args.intra {
            spec.intra_p = vec![intra; spec.partition_sizes.len()];
        }
        if let Some(cross) = args.cross {
            for row in &mut spec.cross_p {
                row.fill(cross);
            }
        }
        if let Some(noise) = args.noise {
            spec.attribute_noise = noise;
        }
        if args.common.seed.is_some() {
            spec.seed = cfg.seed;
        }
    }
}

/// Sizes the global worker pool before any stage runs. In sequential builds
/// the request is recorded in the manifest but there is nothing to size.
fn init_threads(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        if t > 0 {
            // Errors only if a pool already exists, which cannot happen this
            // early; ignore to keep reruns of tests in-process friendly.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Cmd::Topology(args) => {
            let cfg = resolve(&args)?;
            init_threads(cfg.threads);
            commands::cmd_topology(&cfg)
        }
        Cmd::Centrality(args) => {
            let cfg = resolve(&args)?;
            init_threads(cfg.threads);
            commands::cmd_centrality(&cfg)
        }
        Cmd::Compare(args) => {
            let cfg = resolve(&args)?;
            init_threads(cfg.threads);
            commands::cmd_compare(&cfg)
        }
        Cmd::Synth(args) => {
            let mut cfg = resolve(&args.common)?;
            apply_synth_flags(&mut cfg, &args);
            init_threads(cfg.threads);
            commands::cmd_synth(&cfg)
        }
        Cmd::Bench(args) => {
            let cfg = resolve(&args)?;
            init_threads(cfg.threads);
            commands::cmd_bench(&cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // -h/-V exit cleanly; everything else is a usage error. We remap
            // clap's default usage exit code (2) to this tool's contract (1).
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Degenerate) => {
            eprintln!("scalerank: all requested outputs are null (degenerate input)");
            ExitCode::from(3)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("scalerank: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Run(e)) => {
            eprintln!("scalerank: {e}");
            ExitCode::from(2)
        }
    }
}
