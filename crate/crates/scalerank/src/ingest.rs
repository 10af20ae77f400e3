//! Input parsing, one-mode projection, and metadata joins.
//!
//! Two input shapes produce the same kind of graph:
//!
//! * **Affiliation** CSV (`person_id,entity_id`): two-mode membership
//!   records. The projection links every pair of entities sharing a person,
//!   weighted by how many distinct persons they share; entities incident to
//!   no projected edge are dropped.
//! * **Edge list** CSV (`src,dst[,weight]`): the projected graph written out
//!   directly, with optional explicit multiplicities (default 1).
//!
//! An optional metadata CSV (`entity_id,partition[,attr…]`) joins partition
//! labels and numeric attributes onto nodes by external id. All parsers skip
//! `#`-prefixed comment lines, reject malformed rows with their 1-based line
//! number, and are strict about header names and column counts.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Raw affiliation records in file order, possibly with duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AffiliationList {
    /// `(person_id, entity_id)` pairs as read.
    pub records: Vec<(String, String)>,
}

/// Parsed metadata file: declared attribute columns plus one row per entity.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetadataTable {
    /// Attribute column names, in header order.
    pub attributes: Vec<String>,
    /// Entity rows, in file order; entity ids are unique.
    pub rows: Vec<MetadataRow>,
}

/// One entity's metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct MetadataRow {
    /// External entity id.
    pub entity_id: String,
    /// Partition label; `None` when the cell is empty.
    pub partition: Option<String>,
    /// Attribute values parallel to [`MetadataTable::attributes`]; empty
    /// cells are `None`.
    pub values: Vec<Option<f64>>,
}

/// Which input shape a file contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputMode {
    /// Two-mode `person_id,entity_id` records to be projected.
    Affiliation,
    /// Direct `src,dst[,weight]` edges.
    Edgelist,
}

impl fmt::Display for InputMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputMode::Affiliation => "affiliation",
            InputMode::Edgelist => "edgelist",
        })
    }
}

impl FromStr for InputMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "affiliation" => Ok(InputMode::Affiliation),
            "edgelist" => Ok(InputMode::Edgelist),
            other => Err(format!(
                "unknown input mode '{other}' (expected 'affiliation' or 'edgelist')"
            )),
        }
    }
}

/// Ingestion settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IngestOptions {
    /// Input shape.
    pub mode: InputMode,
    /// Affiliation mode only: persons sitting on more than this many boards
    /// are skipped entirely (an opt-in guard against registration artifacts
    /// that would project to huge cliques). `None` keeps everyone.
    pub max_boards: Option<usize>,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self {
            mode: InputMode::Affiliation,
            max_boards: None,
        }
    }
}

/// Counters describing one ingestion run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestStats {
    /// Data rows read from the main input (before any deduplication).
    pub records: usize,
    /// Affiliation mode: duplicate `(person, entity)` records collapsed.
    pub duplicate_records: usize,
    /// Affiliation mode: distinct persons seen.
    pub persons: usize,
    /// Affiliation mode: persons skipped by the board-count cap.
    pub persons_capped: usize,
    /// Distinct entities mentioned by the input.
    pub entities_seen: usize,
    /// Entities that became graph nodes.
    pub entities_kept: usize,
    /// Entities dropped for having no incident edge (affiliation mode).
    pub entities_dropped: usize,
    /// Rows in the metadata file.
    pub metadata_rows: usize,
    /// Metadata rows that matched a graph node.
    pub metadata_matched: usize,
    /// Metadata rows naming no graph node.
    pub metadata_unmatched: usize,
    /// Graph nodes with no metadata row (null partition and attributes).
    pub nodes_without_metadata: usize,
}

/// A built graph plus the counters of how it was assembled.
#[derive(Debug)]
pub struct IngestReport {
    /// The assembled graph.
    pub graph: Graph,
    /// Ingestion counters.
    pub stats: IngestStats,
}

// ---------------------------------------------------------------------------
// CSV parsing
// ---------------------------------------------------------------------------

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .flexible(false)
        .from_reader(r)
}

fn csv_error(source: &str, e: csv::Error) -> Error {
    let line = e.position().map_or(0, csv::Position::line);
    Error::Parse {
        path: source.to_string(),
        line,
        msg: e.to_string(),
    }
}

fn parse_error(source: &str, line: u64, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: source.to_string(),
        line,
        msg: msg.into(),
    }
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, csv::Position::line)
}

fn expect_header(
    source: &str,
    got: &csv::StringRecord,
    want: &[&str],
) -> Result<()> {
    if got.len() == want.len() && got.iter().zip(want).all(|(g, w)| g == *w) {
        return Ok(());
    }
    Err(parse_error(
        source,
        1,
        format!(
            "expected header '{}', got '{}'",
            want.join(","),
            got.iter().collect::<Vec<_>>().join(",")
        ),
    ))
}

/// Parses an affiliation CSV (`person_id,entity_id`). `source` names the
/// input in error messages.
pub fn parse_affiliation<R: Read>(input: R, source: &str) -> Result<AffiliationList> {
    let mut rdr = reader(input);
    let headers = rdr.headers().map_err(|e| csv_error(source, e))?.clone();
    expect_header(source, &headers, &["person_id", "entity_id"])?;
    let mut records = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(source, e))?;
        let line = record_line(&rec);
        let person = &rec[0];
        let entity = &rec[1];
        if person.is_empty() {
            return Err(parse_error(source, line, "empty person_id"));
        }
        if entity.is_empty() {
            return Err(parse_error(source, line, "empty entity_id"));
        }
        records.push((person.to_string(), entity.to_string()));
    }
    Ok(AffiliationList { records })
}

/// Parses an edge-list CSV (`src,dst,weight`; the weight column may be
/// omitted entirely or left empty per row, defaulting to 1).
pub fn parse_edge_list<R: Read>(input: R, source: &str) -> Result<Vec<(String, String, u32)>> {
    let mut rdr = reader(input);
    let headers = rdr.headers().map_err(|e| csv_error(source, e))?.clone();
    let has_weight = match headers.len() {
        2 => {
            expect_header(source, &headers, &["src", "dst"])?;
            false
        }
        _ => {
            expect_header(source, &headers, &["src", "dst", "weight"])?;
            true
        }
    };
    let mut edges = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(source, e))?;
        let line = record_line(&rec);
        let src = &rec[0];
        let dst = &rec[1];
        if src.is_empty() || dst.is_empty() {
            return Err(parse_error(source, line, "empty node id"));
        }
        if src == dst {
            return Err(parse_error(
                source,
                line,
                format!("self-loop on '{src}': edges must join two distinct nodes"),
            ));
        }
        let weight = if has_weight && !rec[2].is_empty() {
            rec[2].parse::<u32>().map_err(|e| {
                parse_error(source, line, format!("bad weight '{}': {e}", &rec[2]))
            })?
        } else {
            1
        };
        if weight == 0 {
            return Err(parse_error(source, line, "weight must be at least 1"));
        }
        edges.push((src.to_string(), dst.to_string(), weight));
    }
    Ok(edges)
}

/// Parses a metadata CSV (`entity_id,partition[,attr…]`). Attribute columns
/// are declared by the header; empty cells are null; values must be finite.
pub fn parse_metadata<R: Read>(input: R, source: &str) -> Result<MetadataTable> {
    let mut rdr = reader(input);
    let headers = rdr.headers().map_err(|e| csv_error(source, e))?.clone();
    if headers.len() < 2 || &headers[0] != "entity_id" || &headers[1] != "partition" {
        return Err(parse_error(
            source,
            1,
            format!(
                "expected header 'entity_id,partition[,attr…]', got '{}'",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }
    let attributes: Vec<String> = headers.iter().skip(2).map(str::to_string).collect();
    {
        let mut seen = HashSet::new();
        for a in &attributes {
            if a.is_empty() {
                return Err(parse_error(source, 1, "empty attribute column name"));
            }
            if !seen.insert(a.as_str()) {
                return Err(parse_error(
                    source,
                    1,
                    format!("duplicate attribute column '{a}'"),
                ));
            }
        }
    }

    let mut rows = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(source, e))?;
        let line = record_line(&rec);
        let entity_id = rec[0].to_string();
        if entity_id.is_empty() {
            return Err(parse_error(source, line, "empty entity_id"));
        }
        if !seen_ids.insert(entity_id.clone()) {
            return Err(Error::DuplicateMetadata {
                path: source.to_string(),
                line,
                entity: entity_id,
            });
        }
        let partition = (!rec[1].is_empty()).then(|| rec[1].to_string());
        let mut values = Vec::with_capacity(attributes.len());
        for (name, cell) in attributes.iter().zip(rec.iter().skip(2)) {
            if cell.is_empty() {
                values.push(None);
                continue;
            }
            let v: f64 = cell.parse().map_err(|e| {
                parse_error(source, line, format!("bad value '{cell}' for '{name}': {e}"))
            })?;
            if !v.is_finite() {
                return Err(parse_error(
                    source,
                    line,
                    format!("non-finite value '{cell}' for '{name}'"),
                ));
            }
            values.push(Some(v));
        }
        rows.push(MetadataRow {
            entity_id,
            partition,
            values,
        });
    }
    Ok(MetadataTable { attributes, rows })
}

// ---------------------------------------------------------------------------
// Projection and filtering
// ---------------------------------------------------------------------------

/// One-mode projection of affiliation records.
///
/// Each person sitting on board set `B` contributes one tie to every
/// unordered pair from `B`; a pair's multiplicity is therefore the number of
/// distinct shared persons. Duplicate `(person, entity)` records collapse
/// first (one seat cannot interlock a pair twice). The output is sorted by
/// entity-id pair and independent of record order.
pub fn project(aff: &AffiliationList) -> Vec<(String, String, u32)> {
    let mut boards: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (person, entity) in &aff.records {
        boards.entry(person).or_default().insert(entity);
    }
    project_boards(boards.values())
}

/// Projection core over per-person board sets.
fn project_boards<'a, I>(board_sets: I) -> Vec<(String, String, u32)>
where
    I: IntoIterator<Item = &'a BTreeSet<&'a str>>,
{
    let mut mult: BTreeMap<(&str, &str), u64> = BTreeMap::new();
    for boards in board_sets {
        let v: Vec<&str> = boards.iter().copied().collect();
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                *mult.entry((v[i], v[j])).or_insert(0) += 1;
            }
        }
    }
    mult.into_iter()
        .map(|((a, b), w)| {
            // One distinct person per unit of multiplicity, so this fits u32
            // for any input that fits in memory.
            let w = u32::try_from(w).expect("pair multiplicity exceeds u32");
            (a.to_string(), b.to_string(), w)
        })
        .collect()
}

/// Result of dropping entities with no incident edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterOutcome {
    /// Entities incident to at least one edge, in first-seen input order.
    pub kept: Vec<String>,
    /// Number of entities dropped.
    pub dropped: usize,
}

/// Keeps only entities incident to at least one projected edge.
///
/// `all_entities` may repeat ids; the kept list preserves first-seen order.
pub fn filter_interlocking<'a, I>(edges: &[(String, String, u32)], all_entities: I) -> FilterOutcome
where
    I: IntoIterator<Item = &'a str>,
{
    let incident: HashSet<&str> = edges
        .iter()
        .flat_map(|(a, b, _)| [a.as_str(), b.as_str()])
        .collect();
    let mut seen: HashSet<&str> = HashSet::new();
    let mut kept = Vec::new();
    let mut dropped = 0usize;
    for e in all_entities {
        if !seen.insert(e) {
            continue;
        }
        if incident.contains(e) {
            kept.push(e.to_string());
        } else {
            dropped += 1;
        }
    }
    FilterOutcome { kept, dropped }
}

// ---------------------------------------------------------------------------
// Graph assembly
// ---------------------------------------------------------------------------

fn apply_metadata(
    builder: &mut GraphBuilder,
    table: &MetadataTable,
    stats: &mut IngestStats,
) -> Result<()> {
    for name in &table.attributes {
        builder.declare_attribute(name);
    }
    stats.metadata_rows = table.rows.len();
    for row in &table.rows {
        if !builder.contains(&row.entity_id) {
            stats.metadata_unmatched += 1;
            continue;
        }
        stats.metadata_matched += 1;
        if let Some(label) = &row.partition {
            builder.set_partition(&row.entity_id, label)?;
        }
        for (name, value) in table.attributes.iter().zip(&row.values) {
            if let Some(v) = value {
                builder.set_attribute(&row.entity_id, name, *v)?;
            }
        }
    }
    Ok(())
}

/// Projects affiliation records and assembles the graph, joining metadata
/// when given. Node ids follow first mention in the input; non-interlocking
/// entities are dropped and counted.
pub fn build_affiliation_graph(
    aff: &AffiliationList,
    metadata: Option<&MetadataTable>,
    max_boards: Option<usize>,
) -> Result<IngestReport> {
    let mut stats = IngestStats {
        records: aff.records.len(),
        ..IngestStats::default()
    };

    let mut boards: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (person, entity) in &aff.records {
        if !boards.entry(person).or_default().insert(entity) {
            stats.duplicate_records += 1;
        }
    }
    stats.persons = boards.len();
    if let Some(cap) = max_boards {
        boards.retain(|_, b| {
            let keep = b.len() <= cap;
            if !keep {
                stats.persons_capped += 1;
            }
            keep
        });
    }
    let edges = project_boards(boards.values());

    // Entity universe in first-seen input order.
    let mut entity_order: Vec<&str> = Vec::new();
    let mut seen: HashSet<&str> = HashSet::new();
    for (_, entity) in &aff.records {
        if seen.insert(entity) {
            entity_order.push(entity);
        }
    }
    stats.entities_seen = entity_order.len();
    let outcome = filter_interlocking(&edges, entity_order.iter().copied());
    stats.entities_kept = outcome.kept.len();
    stats.entities_dropped = outcome.dropped;

    let mut builder = GraphBuilder::new();
    for id in &outcome.kept {
        builder.ensure_node(id);
    }
    for (a, b, w) in &edges {
        builder.add_edge(a, b, *w)?;
    }
    if let Some(table) = metadata {
        apply_metadata(&mut builder, table, &mut stats)?;
    }
    let graph = builder.build()?;
    stats.nodes_without_metadata = graph.node_count() - stats.metadata_matched;
    Ok(IngestReport { graph, stats })
}

/// Assembles a graph directly from parsed edge rows, joining metadata when
/// given. Repeated rows for a pair accumulate multiplicity.
pub fn build_edge_list_graph(
    edges: &[(String, String, u32)],
    metadata: Option<&MetadataTable>,
) -> Result<IngestReport> {
    let mut stats = IngestStats {
        records: edges.len(),
        ..IngestStats::default()
    };
    let mut builder = GraphBuilder::new();
    for (a, b, w) in edges {
        builder.add_edge(a, b, *w)?;
    }
    stats.entities_seen = builder.node_count();
    stats.entities_kept = builder.node_count();
    if let Some(table) = metadata {
        apply_metadata(&mut builder, table, &mut stats)?;
    }
    let graph = builder.build()?;
    stats.nodes_without_metadata = graph.node_count() - stats.metadata_matched;
    Ok(IngestReport { graph, stats })
}

/// Opens `path` with the file name attached to any failure.
fn open_named(path: &Path) -> Result<std::fs::File> {
    std::fs::File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

/// Opens and parses the input files and assembles the graph per `options`.
pub fn load_dataset(
    input: &Path,
    metadata: Option<&Path>,
    options: &IngestOptions,
) -> Result<IngestReport> {
    let table = metadata
        .map(|p| {
            let file = open_named(p)?;
            parse_metadata(std::io::BufReader::new(file), &p.display().to_string())
        })
        .transpose()?;
    let file = open_named(input)?;
    let buf = std::io::BufReader::new(file);
    let source = input.display().to_string();
    match options.mode {
        InputMode::Affiliation => {
            let aff = parse_affiliation(buf, &source)?;
            build_affiliation_graph(&aff, table.as_ref(), options.max_boards)
        }
        InputMode::Edgelist => {
            let rows = parse_edge_list(buf, &source)?;
            build_edge_list_graph(&rows, table.as_ref())
        }
    }
}
