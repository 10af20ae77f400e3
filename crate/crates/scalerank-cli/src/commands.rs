//! The five pipeline commands. Each one loads (or generates) a graph, runs
//! its stage, writes the requested reports into the output directory, and
//! records a `run.json` manifest describing exactly how to repeat the run.

use crate::config::{
    Manifest, OutputFormat, RunConfig, StageTiming, DEFAULT_PIVOTS, EXACT_BETWEENNESS_LIMIT,
};
use scalerank::centrality::{
    centrality_at_scope, centrality_on_giant, CentralityOptions, CentralityVector, Measure, Scope,
};
use scalerank::graph::{connected_components, Graph};
use scalerank::ingest::{load_dataset, IngestOptions, IngestReport};
use scalerank::rankcompare::{
    attribute_correlation, embeddedness_report, measure_correlation_matrix, EmbeddednessOptions,
};
use scalerank::report::{
    write_attribute_correlations_csv, write_centrality_csv, write_edge_list_csv,
    write_embeddedness_csv, write_histogram_csv, write_json, write_measure_matrix_csv,
    write_metadata_csv, write_partition_topology_csv, write_topology_summary_csv,
    AttributeCorrelationRow,
};
use scalerank::synth::synthesize;
use scalerank::topology::{partition_topology, topology_report};
use scalerank::Error;
use serde::Serialize;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// How a command finished when it did not error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// At least one requested statistic was produced.
    Ok,
    /// Everything the user asked for came back null (exit code 3).
    Degenerate,
}

/// A command failure, already sorted into its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad invocation: missing/contradictory flags or config (exit code 1).
    Usage(String),
    /// Input, I/O, or computation failure (exit code 2).
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Run(e) => write!(f, "{e}"),
        }
    }
}

pub type CmdResult = Result<Outcome, CliError>;

/// Runs `f`, appending its wall time to the manifest's stage list.
fn timed<T>(manifest: &mut Manifest, stage: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let value = f();
    manifest.timings.push(StageTiming {
        stage: stage.to_string(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    });
    value
}

fn load(manifest: &mut Manifest, cfg: &RunConfig) -> Result<IngestReport, CliError> {
    let input = cfg.require_input().map_err(CliError::Usage)?.to_path_buf();
    let options = IngestOptions {
        mode: cfg.mode,
        max_boards: cfg.max_boards,
    };
    timed(manifest, "load", || {
        load_dataset(&input, cfg.metadata.as_deref(), &options)
    })
    .map_err(CliError::Run)
}

fn out_file(dir: &Path, name: &str) -> Result<BufWriter<File>, CliError> {
    let path = dir.join(name);
    let file = File::create(&path).map_err(|e| CliError::Run(Error::Io(e)))?;
    Ok(BufWriter::new(file))
}

fn prepare_out_dir(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(&cfg.out).map_err(|e| CliError::Run(Error::Io(e)))?;
    Ok(cfg.out.clone())
}

fn write_manifest(dir: &Path, manifest: &Manifest) -> Result<(), CliError> {
    write_json(out_file(dir, "run.json")?, manifest).map_err(CliError::Run)
}

/// Size of the largest connected component (0 on the empty graph).
fn giant_size(g: &Graph) -> usize {
    connected_components(g).sizes.iter().copied().max().unwrap_or(0)
}

/// Applies the betweenness mode rule: `--pivots 0` forces exact, an explicit
/// count samples, and by default graphs at or above the size limit sample
/// with the standard pivot budget.
fn centrality_options(cfg: &RunConfig, giant_n: usize) -> (CentralityOptions, String) {
    let pivots = match cfg.pivots {
        Some(0) => None,
        Some(k) => Some(k),
        None if giant_n < EXACT_BETWEENNESS_LIMIT => None,
        None => Some(DEFAULT_PIVOTS),
    };
    let mode = match pivots {
        None => "exact".to_string(),
        Some(k) => format!("sampled({k})"),
    };
    (
        CentralityOptions {
            pivots,
            seed: cfg.seed,
            ..CentralityOptions::default()
        },
        mode,
    )
}

/// True for error shapes the pipeline reports as null output rather than a
/// failure: scopes too small to score, or split before scoring starts.
fn is_degenerate(e: &Error) -> bool {
    matches!(
        e,
        Error::TooSmall { .. } | Error::Disconnected { .. } | Error::EmptyGraph
    )
}

// ---------------------------------------------------------------------------
// topology
// ---------------------------------------------------------------------------

pub fn cmd_topology(cfg: &RunConfig) -> CmdResult {
    let dir = prepare_out_dir(cfg)?;
    let mut manifest = Manifest::new("topology", cfg.clone());
    let report = load(&mut manifest, cfg)?;
    let g = &report.graph;

    let global = timed(&mut manifest, "topology", || {
        topology_report(g, cfg.sample_pairs, cfg.seed)
    })?;
    let partitions = timed(&mut manifest, "partition-topology", || {
        partition_topology(g, cfg.sample_pairs, cfg.seed)
    })?;

    timed(&mut manifest, "write", || -> Result<(), CliError> {
        match cfg.format {
            OutputFormat::Csv => {
                write_topology_summary_csv(out_file(&dir, "topology_summary.csv")?, &global)?;
                write_histogram_csv(
                    out_file(&dir, "degree_histogram.csv")?,
                    "degree",
                    "nodes",
                    &global.degree_histogram,
                )?;
                write_histogram_csv(
                    out_file(&dir, "component_size_histogram.csv")?,
                    "component_size",
                    "components",
                    &global.component_size_histogram,
                )?;
                if let Some(d) = &global.distances {
                    write_histogram_csv(
                        out_file(&dir, "distance_histogram.csv")?,
                        "distance",
                        "pairs",
                        &d.histogram,
                    )?;
                }
                write_histogram_csv(
                    out_file(&dir, "eccentricity_histogram.csv")?,
                    "eccentricity",
                    "nodes",
                    &global.eccentricity_histogram,
                )?;
                write_partition_topology_csv(
                    out_file(&dir, "partition_topology.csv")?,
                    &partitions,
                )?;
            }
            OutputFormat::Json => {
                write_json(out_file(&dir, "topology.json")?, &global)?;
                write_json(out_file(&dir, "partition_topology.json")?, &partitions)?;
            }
        }
        Ok(())
    })?;

    write_manifest(&dir, &manifest)?;
    // With no edges there is no density, no distance statistics, and no
    // radius: every requested number is null.
    if global.density.is_none() && global.distances.is_none() && global.radius.is_none() {
        return Ok(Outcome::Degenerate);
    }
    Ok(Outcome::Ok)
}

// ---------------------------------------------------------------------------
// centrality
// ---------------------------------------------------------------------------

/// One scored node in JSON output; mirrors the CSV rows exactly.
#[derive(Serialize)]
struct CentralityRow<'a> {
    entity_id: &'a str,
    measure: Measure,
    scope: String,
    value: Option<f64>,
    normalized: bool,
}

fn centrality_rows<'g>(g: &'g Graph, vectors: &[CentralityVector]) -> Vec<CentralityRow<'g>> {
    let mut rows = Vec::new();
    for vec in vectors {
        let universe: Vec<u32> = match &vec.scope {
            Scope::Full => (0..g.node_count() as u32).collect(),
            Scope::Partition(label) => g
                .partition_members(label)
                .expect("vector scope labels come from the graph"),
        };
        for v in universe {
            rows.push(CentralityRow {
                entity_id: g.external_id(v),
                measure: vec.measure,
                scope: vec.scope.to_string(),
                value: vec.value(v),
                normalized: vec.normalized,
            });
        }
    }
    rows
}

pub fn cmd_centrality(cfg: &RunConfig) -> CmdResult {
    let dir = prepare_out_dir(cfg)?;
    let mut manifest = Manifest::new("centrality", cfg.clone());
    let report = load(&mut manifest, cfg)?;
    let g = &report.graph;

    let (opts, mode) = centrality_options(cfg, giant_size(g));
    if cfg.measures.contains(&Measure::Betweenness) {
        manifest.betweenness_mode = Some(mode);
    }

    let mut vectors: Vec<CentralityVector> = Vec::new();
    for &measure in &cfg.measures {
        let full = timed(&mut manifest, &format!("{measure}-full"), || {
            centrality_on_giant(g, measure, &opts)
        });
        match full {
            Ok(v) => vectors.push(v.normalize()),
            Err(e) if is_degenerate(&e) => {}
            Err(e) => return Err(e.into()),
        }
        let labels: Vec<String> = g.partition_labels().to_vec();
        if !labels.is_empty() {
            let scoped = timed(&mut manifest, &format!("{measure}-partitions"), || {
                let mut done = Vec::new();
                for label in &labels {
                    match centrality_at_scope(g, label, measure, &opts) {
                        Ok(v) => done.push(v.normalize()),
                        Err(e) if is_degenerate(&e) => {}
                        Err(e) => return Err(e),
                    }
                }
                Ok(done)
            });
            vectors.extend(scoped?);
        }
    }

    timed(&mut manifest, "write", || -> Result<(), CliError> {
        match cfg.format {
            OutputFormat::Csv => {
                write_centrality_csv(out_file(&dir, "centrality.csv")?, g, &vectors)?
            }
            OutputFormat::Json => {
                write_json(out_file(&dir, "centrality.json")?, &centrality_rows(g, &vectors))?
            }
        }
        Ok(())
    })?;

    write_manifest(&dir, &manifest)?;
    if vectors.is_empty() {
        return Ok(Outcome::Degenerate);
    }
    Ok(Outcome::Ok)
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

/// The measure matrix with its labels, for JSON output.
#[derive(Serialize)]
struct MeasureMatrix<'a> {
    measures: &'a [Measure],
    /// `spearman[i][j]` correlates `measures[i]` with `measures[j]`.
    spearman: &'a [Vec<Option<f64>>],
}

pub fn cmd_compare(cfg: &RunConfig) -> CmdResult {
    let dir = prepare_out_dir(cfg)?;
    let mut manifest = Manifest::new("compare", cfg.clone());
    let report = load(&mut manifest, cfg)?;
    let g = &report.graph;

    let (opts, mode) = centrality_options(cfg, giant_size(g));
    if cfg.measures.contains(&Measure::Betweenness) {
        manifest.betweenness_mode = Some(mode);
    }

    let embed_opts = EmbeddednessOptions {
        measures: cfg.measures.clone(),
        k_list: cfg.k_list.clone(),
        centrality: opts.clone(),
    };
    let records = timed(&mut manifest, "embeddedness", || {
        embeddedness_report(g, &embed_opts)
    })?;

    let matrix = timed(&mut manifest, "measure-matrix", || {
        measure_correlation_matrix(g, &cfg.measures, &opts)
    })?;

    let attributes: Vec<String> = g.attribute_names().map(str::to_string).collect();
    let labels: Vec<String> = g.partition_labels().to_vec();
    let attr_rows = timed(&mut manifest, "attribute-correlations", || {
        let mut rows = Vec::new();
        for attribute in &attributes {
            for &measure in &cfg.measures {
                let mut scopes = vec![Scope::Full];
                scopes.extend(labels.iter().cloned().map(Scope::Partition));
                for scope in scopes {
                    let correlation = attribute_correlation(g, measure, attribute, &scope, &opts)?;
                    rows.push(AttributeCorrelationRow {
                        attribute: attribute.clone(),
                        measure,
                        scope: scope.to_string(),
                        correlation,
                    });
                }
            }
        }
        Ok::<_, Error>(rows)
    })?;

    timed(&mut manifest, "write", || -> Result<(), CliError> {
        match cfg.format {
            OutputFormat::Csv => {
                write_embeddedness_csv(out_file(&dir, "embeddedness.csv")?, &records, &cfg.k_list)?;
                write_measure_matrix_csv(
                    out_file(&dir, "measure_matrix.csv")?,
                    &cfg.measures,
                    &matrix,
                )?;
                write_attribute_correlations_csv(
                    out_file(&dir, "attribute_correlations.csv")?,
                    &attr_rows,
                )?;
            }
            OutputFormat::Json => {
                write_json(out_file(&dir, "embeddedness.json")?, &records)?;
                write_json(
                    out_file(&dir, "measure_matrix.json")?,
                    &MeasureMatrix {
                        measures: &cfg.measures,
                        spearman: &matrix,
                    },
                )?;
                write_json(out_file(&dir, "attribute_correlations.json")?, &attr_rows)?;
            }
        }
        Ok(())
    })?;

    write_manifest(&dir, &manifest)?;

    let any_value = records.iter().any(|r| {
        r.persistence.is_some()
            || r.dominance.is_some()
            || r.top_k.iter().any(|e| e.overlap.is_some())
    }) || matrix.iter().flatten().any(Option::is_some)
        || attr_rows.iter().any(|r| r.correlation.is_some());
    if any_value {
        Ok(Outcome::Ok)
    } else {
        Ok(Outcome::Degenerate)
    }
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

pub fn cmd_synth(cfg: &RunConfig) -> CmdResult {
    let dir = prepare_out_dir(cfg)?;
    let mut manifest = Manifest::new("synth", cfg.clone());
    let spec = cfg.synth.as_ref().ok_or_else(|| {
        CliError::Usage("synth needs a generator spec (--partitions/--intra/--cross or --config)".into())
    })?;

    let g = timed(&mut manifest, "synthesize", || synthesize(spec))?;

    timed(&mut manifest, "write", || -> Result<(), CliError> {
        write_edge_list_csv(out_file(&dir, "edges.csv")?, &g)?;
        write_metadata_csv(out_file(&dir, "metadata.csv")?, &g)?;
        Ok(())
    })?;

    write_manifest(&dir, &manifest)?;
    Ok(Outcome::Ok)
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

/// Machine-readable stage report written by `bench`.
#[derive(Serialize)]
struct BenchReport {
    n: usize,
    m: usize,
    giant_n: usize,
    threads: usize,
    parallel: bool,
    stages: Vec<StageTiming>,
    peak_rss_kb: Option<u64>,
}

/// Peak resident set size in kilobytes, read from the kernel's per-process
/// accounting; `None` on platforms without `/proc`.
fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

pub fn cmd_bench(cfg: &RunConfig) -> CmdResult {
    let dir = prepare_out_dir(cfg)?;
    let mut manifest = Manifest::new("bench", cfg.clone());
    let report = load(&mut manifest, cfg)?;
    let g = &report.graph;

    let giant_n = giant_size(g);
    let (opts, mode) = centrality_options(cfg, giant_n);
    if cfg.measures.contains(&Measure::Betweenness) {
        manifest.betweenness_mode = Some(mode);
    }

    let topo = timed(&mut manifest, "topology", || {
        topology_report(g, cfg.sample_pairs, cfg.seed)
    })?;
    drop(topo);

    for &measure in &cfg.measures {
        let outcome = timed(&mut manifest, measure.name(), || {
            centrality_on_giant(g, measure, &opts)
        });
        match outcome {
            Ok(_) => {}
            Err(e) if is_degenerate(&e) => {}
            Err(e) => return Err(e.into()),
        }
    }

    if !g.partition_labels().is_empty() {
        let embed_opts = EmbeddednessOptions {
            measures: cfg.measures.clone(),
            k_list: cfg.k_list.clone(),
            centrality: opts,
        };
        timed(&mut manifest, "embeddedness", || {
            embeddedness_report(g, &embed_opts)
        })?;
    }

    let bench = BenchReport {
        n: g.node_count(),
        m: g.edge_count(),
        giant_n,
        threads: manifest.threads,
        parallel: manifest.parallel,
        stages: manifest.timings.clone(),
        peak_rss_kb: peak_rss_kb(),
    };
    timed(&mut manifest, "write", || -> Result<(), CliError> {
        write_json(out_file(&dir, "bench.json")?, &bench)?;
        Ok(())
    })?;

    write_manifest(&dir, &manifest)?;
    Ok(Outcome::Ok)
}
