//! Run configuration: defaults, config-file loading, flag merging, and the
//! `run.json` manifest.
//!
//! Configuration values flow through three layers. A config file (or a
//! previous manifest) yields a [`PartialConfig`]; command-line flags yield a
//! second one that wins field-by-field; [`PartialConfig::resolve`] then fills
//! the documented defaults to produce the concrete [`RunConfig`] recorded in
//! the manifest. Because the manifest stores the *resolved* config, replaying
//! it reproduces the run even if defaults change in a later version.

use scalerank::centrality::Measure;
use scalerank::ingest::InputMode;
use scalerank::synth::SyntheticSpec;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

/// Primary output format. The manifest and `bench.json` are always JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// Betweenness defaults to exact below this many giant-component nodes and
/// to pivot sampling at or above it.
pub const EXACT_BETWEENNESS_LIMIT: usize = 50_000;
/// Pivot count used when the auto rule selects sampling.
pub const DEFAULT_PIVOTS: usize = 10_000;
/// Default distance-sampling budget in node pairs.
pub const DEFAULT_SAMPLE_PAIRS: u64 = 100_000;
/// Default RNG seed.
pub const DEFAULT_SEED: u64 = 42;

/// A configuration layer in which every field may be absent. Config files
/// deserialize into this; flags are collected into another one.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct PartialConfig {
    pub input: Option<PathBuf>,
    pub mode: Option<InputMode>,
    pub metadata: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub sample_pairs: Option<u64>,
    /// `Some(0)` forces exact betweenness; absent applies the size rule.
    pub pivots: Option<usize>,
    pub measures: Option<Vec<Measure>>,
    pub k_list: Option<Vec<usize>>,
    pub max_boards: Option<usize>,
    pub synth: Option<SyntheticSpec>,
}

impl PartialConfig {
    /// Field-by-field overlay: anything set in `over` wins.
    pub fn merged_under(self, over: PartialConfig) -> PartialConfig {
        PartialConfig {
            input: over.input.or(self.input),
            mode: over.mode.or(self.mode),
            metadata: over.metadata.or(self.metadata),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
            seed: over.seed.or(self.seed),
            threads: over.threads.or(self.threads),
            sample_pairs: over.sample_pairs.or(self.sample_pairs),
            pivots: over.pivots.or(self.pivots),
            measures: over.measures.or(self.measures),
            k_list: over.k_list.or(self.k_list),
            max_boards: over.max_boards.or(self.max_boards),
            synth: over.synth.or(self.synth),
        }
    }

    /// Applies defaults. `out` is the only field without one: every command
    /// writes files, so the caller must say where.
    pub fn resolve(self) -> Result<RunConfig, String> {
        let out = self
            .out
            .ok_or_else(|| "missing output directory (--out)".to_string())?;
        let sample_pairs = self.sample_pairs.unwrap_or(DEFAULT_SAMPLE_PAIRS);
        if sample_pairs == 0 {
            return Err("--sample-pairs must be at least 1".to_string());
        }
        let k_list = self.k_list.unwrap_or_else(|| vec![10, 100]);
        if k_list.contains(&0) {
            return Err("--k-list entries must be at least 1".to_string());
        }
        Ok(RunConfig {
            input: self.input,
            mode: self.mode.unwrap_or(InputMode::Affiliation),
            metadata: self.metadata,
            out,
            format: self.format.unwrap_or(OutputFormat::Csv),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            threads: self.threads,
            sample_pairs,
            pivots: self.pivots,
            measures: self.measures.unwrap_or_else(|| Measure::ALL.to_vec()),
            k_list,
            max_boards: self.max_boards,
            synth: self.synth,
        })
    }
}

/// The resolved configuration of one run, exactly as recorded in `run.json`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    /// Input CSV; `None` only for `synth`.
    pub input: Option<PathBuf>,
    pub mode: InputMode,
    pub metadata: Option<PathBuf>,
    pub out: PathBuf,
    pub format: OutputFormat,
    pub seed: u64,
    /// Requested worker threads; `None` or `Some(0)` means all cores.
    pub threads: Option<usize>,
    pub sample_pairs: u64,
    /// Betweenness pivots: `Some(0)` = exact, `None` = size rule.
    pub pivots: Option<usize>,
    pub measures: Vec<Measure>,
    pub k_list: Vec<usize>,
    pub max_boards: Option<usize>,
    /// Generator spec; required by `synth`, ignored elsewhere.
    pub synth: Option<SyntheticSpec>,
}

impl RunConfig {
    /// Input path, or a usage error naming the missing flag.
    pub fn require_input(&self) -> Result<&Path, String> {
        self.input
            .as_deref()
            .ok_or_else(|| "missing input file (--input)".to_string())
    }
}

/// One timed pipeline stage.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub wall_ms: f64,
}

/// `run.json`: everything needed to reproduce a run, plus observed timings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub config: RunConfig,
    pub seed: u64,
    pub versions: BTreeMap<String, String>,
    /// Worker threads actually used.
    pub threads: usize,
    pub parallel: bool,
    /// How betweenness ran (`"exact"` or `"sampled(k)"`), when it ran.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub betweenness_mode: Option<String>,
    pub timings: Vec<StageTiming>,
}

impl Manifest {
    pub fn new(command: &str, config: RunConfig) -> Self {
        let mut versions = BTreeMap::new();
        versions.insert("scalerank".to_string(), scalerank_version());
        versions.insert("scalerank-cli".to_string(), env!("CARGO_PKG_VERSION").to_string());
        let seed = config.seed;
        Manifest {
            command: command.to_string(),
            config,
            seed,
            versions,
            threads: effective_threads(),
            parallel: scalerank::exec::is_parallel(),
            betweenness_mode: None,
            timings: Vec::new(),
        }
    }
}

fn scalerank_version() -> String {
    // The workspace pins both crates to one version.
    env!("CARGO_PKG_VERSION").to_string()
}

/// Worker threads in use: rayon's pool size in parallel builds, one otherwise.
pub fn effective_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Reads a config file: either a bare [`PartialConfig`] or a previous
/// [`Manifest`] (recognized by its `config` key), whose embedded config is
/// extracted so a manifest replays the run it describes.
pub fn read_config_file(path: &Path) -> Result<PartialConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| format!("{}: invalid JSON: {e}", path.display()))?;
    let config_value = match value.get("config") {
        Some(embedded) => embedded.clone(),
        None => value,
    };
    serde_json::from_value(config_value)
        .map_err(|e| format!("{}: invalid config: {e}", path.display()))
}
