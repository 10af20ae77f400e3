//! CSV and JSON serialization of graphs and analysis outputs.
//!
//! All writers are deterministic: rows follow node-id, label, or bucket
//! order, and floats are formatted with Rust's shortest round-trip `Display`
//! so identical numbers always produce identical bytes. Null values render
//! as empty CSV cells and JSON `null`s. The graph writers emit the same
//! formats the ingest parsers accept, so a written graph can be loaded back.

use std::io::Write;

use serde::Serialize;

use crate::centrality::CentralityVector;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rankcompare::EmbeddednessRecord;
use crate::topology::{PartitionTopologyRow, TopologyReport};

fn csv_to_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().from_writer(w)
}

// ---------------------------------------------------------------------------
// Graph emission (round-trips through the ingest parsers)
// ---------------------------------------------------------------------------

/// Writes the graph's edges as `src,dst,weight`, ordered by node-id pair.
/// Isolated nodes carry no edges and appear only in the metadata file.
pub fn write_edge_list_csv<W: Write>(w: W, g: &Graph) -> Result<()> {
    let mut wtr = csv_writer(w);
    wtr.write_record(["src", "dst", "weight"])
        .map_err(csv_to_error)?;
    for (u, v, weight) in g.edges() {
        wtr.write_record([
            g.external_id(u),
            g.external_id(v),
            &weight.to_string(),
        ])
        .map_err(csv_to_error)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Writes every node's partition and attributes as
/// `entity_id,partition[,attr…]`, in node-id order.
pub fn write_metadata_csv<W: Write>(w: W, g: &Graph) -> Result<()> {
    let attributes: Vec<&str> = g.attribute_names().collect();
    let mut wtr = csv_writer(w);
    let mut header = vec!["entity_id", "partition"];
    header.extend(&attributes);
    wtr.write_record(&header).map_err(csv_to_error)?;
    let columns: Vec<&[Option<f64>]> = attributes
        .iter()
        .map(|a| g.attribute(a).expect("listed attribute exists"))
        .collect();
    for v in 0..g.node_count() as NodeId {
        let mut rec: Vec<String> = Vec::with_capacity(2 + columns.len());
        rec.push(g.external_id(v).to_string());
        rec.push(g.partition(v).unwrap_or_default().to_string());
        for col in &columns {
            rec.push(fmt_opt(col[v as usize]));
        }
        wtr.write_record(&rec).map_err(csv_to_error)?;
    }
    wtr.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Centrality
// ---------------------------------------------------------------------------

/// Writes centrality vectors as `entity_id,measure,scope,value,normalized`.
///
/// Full-scope vectors list every node (empty value outside the analyzed
/// component); partition-scope vectors list the partition's members (empty
/// value for members outside the induced giant component).
pub fn write_centrality_csv<W: Write>(w: W, g: &Graph, vectors: &[CentralityVector]) -> Result<()> {
    let mut wtr = csv_writer(w);
    wtr.write_record(["entity_id", "measure", "scope", "value", "normalized"])
        .map_err(csv_to_error)?;
    for vec in vectors {
        let universe: Vec<NodeId> = match &vec.scope {
            crate::centrality::Scope::Full => (0..g.node_count() as NodeId).collect(),
            crate::centrality::Scope::Partition(label) => g.partition_members(label)?,
        };
        let scope = vec.scope.to_string();
        let measure = vec.measure.name();
        let normalized = if vec.normalized { "true" } else { "false" };
        for v in universe {
            wtr.write_record([
                g.external_id(v),
                measure,
                &scope,
                &fmt_opt(vec.value(v)),
                normalized,
            ])
            .map_err(csv_to_error)?;
        }
    }
    wtr.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Topology
// ---------------------------------------------------------------------------

/// Writes one `stat,value` row per whole-graph statistic.
pub fn write_topology_summary_csv<W: Write>(w: W, report: &TopologyReport) -> Result<()> {
    let mut wtr = csv_writer(w);
    wtr.write_record(["stat", "value"]).map_err(csv_to_error)?;
    let rows: Vec<(&str, String)> = vec![
        ("n", report.n.to_string()),
        ("m", report.m.to_string()),
        ("density", fmt_opt(report.density)),
        ("avg_degree", fmt_opt(report.avg_degree)),
        ("clustering", fmt_opt(report.clustering)),
        ("transitivity", fmt_opt(report.transitivity)),
        ("component_count", report.component_count.to_string()),
        ("giant_n", report.giant_n.to_string()),
        ("giant_m", report.giant_m.to_string()),
        (
            "avg_distance",
            fmt_opt(report.distances.as_ref().map(|d| d.mean)),
        ),
        (
            "distance_pairs",
            report
                .distances
                .as_ref()
                .map(|d| d.pairs.to_string())
                .unwrap_or_default(),
        ),
        (
            "distance_exhaustive",
            report
                .distances
                .as_ref()
                .map(|d| d.exhaustive.to_string())
                .unwrap_or_default(),
        ),
        (
            "distance_with_replacement",
            report
                .distances
                .as_ref()
                .map(|d| d.with_replacement.to_string())
                .unwrap_or_default(),
        ),
        (
            "radius",
            report.radius.map(|r| r.to_string()).unwrap_or_default(),
        ),
        (
            "diameter",
            report.diameter.map(|d| d.to_string()).unwrap_or_default(),
        ),
    ];
    for (stat, value) in rows {
        wtr.write_record([stat, &value]).map_err(csv_to_error)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Writes a two-column histogram, one row per bucket in key order.
pub fn write_histogram_csv<W, K, V, I>(w: W, key_name: &str, value_name: &str, buckets: I) -> Result<()>
where
    W: Write,
    K: std::fmt::Display,
    V: std::fmt::Display,
    I: IntoIterator<Item = (K, V)>,
{
    let mut wtr = csv_writer(w);
    wtr.write_record([key_name, value_name])
        .map_err(csv_to_error)?;
    for (k, v) in buckets {
        wtr.write_record([k.to_string(), v.to_string()])
            .map_err(csv_to_error)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Writes the per-partition summary table, one row per partition.
pub fn write_partition_topology_csv<W: Write>(w: W, rows: &[PartitionTopologyRow]) -> Result<()> {
    let mut wtr = csv_writer(w);
    wtr.write_record([
        "partition",
        "n_members",
        "giant_n",
        "giant_m",
        "density",
        "avg_degree",
        "clustering",
        "avg_distance",
        "distance_pairs",
        "transnational_factor",
    ])
    .map_err(csv_to_error)?;
    for r in rows {
        wtr.write_record([
            r.partition.as_str(),
            &r.n_members.to_string(),
            &r.giant_n.to_string(),
            &r.giant_m.to_string(),
            &fmt_opt(r.density),
            &fmt_opt(r.avg_degree),
            &fmt_opt(r.clustering),
            &fmt_opt(r.avg_distance),
            &r.distance_pairs.to_string(),
            &fmt_opt(r.transnational_factor),
        ])
        .map_err(csv_to_error)?;
    }
    wtr.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Embeddedness and correlations
// ---------------------------------------------------------------------------

/// Writes embeddedness records as
/// `partition,measure,persistence,dominance,top{k}_overlap…,transnational_factor,n_partition,n_full`,
/// with one overlap column per requested k. Straddle flags and null reasons
/// are carried by the JSON form only.
pub fn write_embeddedness_csv<W: Write>(
    w: W,
    records: &[EmbeddednessRecord],
    k_list: &[usize],
) -> Result<()> {
    let mut wtr = csv_writer(w);
    let mut header = vec!["partition".to_string(), "measure".to_string()];
    header.push("persistence".to_string());
    header.push("dominance".to_string());
    for k in k_list {
        header.push(format!("top{k}_overlap"));
    }
    header.push("transnational_factor".to_string());
    header.push("n_partition".to_string());
    header.push("n_full".to_string());
    wtr.write_record(&header).map_err(csv_to_error)?;

    for r in records {
        let mut rec = vec![r.partition.clone(), r.measure.name().to_string()];
        rec.push(fmt_opt(r.persistence));
        rec.push(fmt_opt(r.dominance));
        for k in k_list {
            let overlap = r
                .top_k
                .iter()
                .find(|e| e.k == *k)
                .and_then(|e| e.overlap);
            rec.push(fmt_opt(overlap));
        }
        rec.push(fmt_opt(r.transnational_factor));
        rec.push(r.n_partition.to_string());
        rec.push(r.n_full.to_string());
        wtr.write_record(&rec).map_err(csv_to_error)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Writes a square measure-vs-measure correlation matrix with labeled rows
/// and columns.
pub fn write_measure_matrix_csv<W: Write>(
    w: W,
    measures: &[crate::centrality::Measure],
    matrix: &[Vec<Option<f64>>],
) -> Result<()> {
    let mut wtr = csv_writer(w);
    let mut header = vec!["measure".to_string()];
    header.extend(measures.iter().map(|m| m.name().to_string()));
    wtr.write_record(&header).map_err(csv_to_error)?;
    for (i, row) in matrix.iter().enumerate() {
        let mut rec = vec![measures[i].name().to_string()];
        rec.extend(row.iter().map(|v| fmt_opt(*v)));
        wtr.write_record(&rec).map_err(csv_to_error)?;
    }
    wtr.flush()?;
    Ok(())
}

/// One attribute-vs-centrality correlation result.
#[derive(Debug, Clone, Serialize)]
pub struct AttributeCorrelationRow {
    /// Attribute name.
    pub attribute: String,
    /// Centrality measure correlated against.
    pub measure: crate::centrality::Measure,
    /// `full` or a partition label.
    pub scope: String,
    /// Spearman correlation, pairwise over nodes with both values.
    pub correlation: Option<f64>,
}

/// Writes attribute correlations as `attribute,measure,scope,correlation`.
pub fn write_attribute_correlations_csv<W: Write>(
    w: W,
    rows: &[AttributeCorrelationRow],
) -> Result<()> {
    let mut wtr = csv_writer(w);
    wtr.write_record(["attribute", "measure", "scope", "correlation"])
        .map_err(csv_to_error)?;
    for r in rows {
        wtr.write_record([
            r.attribute.as_str(),
            r.measure.name(),
            &r.scope,
            &fmt_opt(r.correlation),
        ])
        .map_err(csv_to_error)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Serializes any value as pretty JSON with a trailing newline.
pub fn write_json<W: Write, T: Serialize + ?Sized>(mut w: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    w.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::{degree_centrality, Scope};
    use crate::graph::GraphBuilder;
    use crate::ingest::{build_edge_list_graph, parse_edge_list, parse_metadata};
    use crate::synth::SyntheticSpec;
    use std::io::Cursor;

    fn labeled_fixture() -> Graph {
        let mut b = GraphBuilder::new();
        b.add_edge("a", "b", 2).unwrap();
        b.add_edge("b", "c", 1).unwrap();
        b.set_partition("a", "US").unwrap();
        b.set_partition("b", "US").unwrap();
        b.set_partition("c", "GB").unwrap();
        b.set_attribute("a", "revenue", 1.5).unwrap();
        b.set_attribute("c", "revenue", -0.25).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn edge_list_and_metadata_round_trip_exactly() {
        let g = labeled_fixture();
        let mut edges = Vec::new();
        write_edge_list_csv(&mut edges, &g).unwrap();
        let mut meta = Vec::new();
        write_metadata_csv(&mut meta, &g).unwrap();

        let rows = parse_edge_list(Cursor::new(&edges), "edges.csv").unwrap();
        let table = parse_metadata(Cursor::new(&meta), "meta.csv").unwrap();
        let back = build_edge_list_graph(&rows, Some(&table)).unwrap().graph;

        assert_eq!(back.node_count(), g.node_count());
        for v in 0..g.node_count() as NodeId {
            let id = g.external_id(v);
            let bv = back.node(id).unwrap();
            assert_eq!(back.partition(bv), g.partition(v));
        }
        let (ga, ba) = (
            g.attribute("revenue").unwrap(),
            back.attribute("revenue").unwrap(),
        );
        for v in 0..g.node_count() as NodeId {
            let bv = back.node(g.external_id(v)).unwrap();
            assert_eq!(ba[bv as usize], ga[v as usize]);
        }
        for (u, v, w) in g.edges() {
            let (bu, bv) = (
                back.node(g.external_id(u)).unwrap(),
                back.node(g.external_id(v)).unwrap(),
            );
            assert_eq!(back.edge_weight(bu, bv), Some(w));
        }
    }

    #[test]
    fn synthetic_graph_round_trips() {
        let g = crate::synth::synthesize(&SyntheticSpec::uniform(vec![12, 8], 0.5, 0.1, 4))
            .unwrap();
        let mut edges = Vec::new();
        write_edge_list_csv(&mut edges, &g).unwrap();
        let mut meta = Vec::new();
        write_metadata_csv(&mut meta, &g).unwrap();
        let rows = parse_edge_list(Cursor::new(&edges), "e").unwrap();
        let table = parse_metadata(Cursor::new(&meta), "m").unwrap();
        let back = build_edge_list_graph(&rows, Some(&table)).unwrap().graph;
        // Dense blocks at p=0.5 leave no isolated nodes at these sizes, so
        // the node sets agree.
        assert_eq!(back.node_count(), g.node_count());
        assert_eq!(back.edge_count(), g.edge_count());
        let attr = g.attribute(crate::synth::SYNTH_ATTRIBUTE).unwrap();
        let battr = back.attribute(crate::synth::SYNTH_ATTRIBUTE).unwrap();
        for v in 0..g.node_count() as NodeId {
            let bv = back.node(g.external_id(v)).unwrap();
            // Shortest round-trip formatting preserves the exact bits.
            assert_eq!(battr[bv as usize], attr[v as usize]);
        }
    }

    #[test]
    fn quoted_ids_survive_the_round_trip() {
        let mut b = GraphBuilder::new();
        b.add_edge("weird, inc", "\"quoted\"", 1).unwrap();
        let g = b.build().unwrap();
        let mut edges = Vec::new();
        write_edge_list_csv(&mut edges, &g).unwrap();
        let rows = parse_edge_list(Cursor::new(&edges), "e").unwrap();
        assert_eq!(
            rows,
            vec![("weird, inc".to_string(), "\"quoted\"".to_string(), 1)]
        );
    }

    #[test]
    fn centrality_csv_layout() {
        let g = labeled_fixture();
        let full = degree_centrality(&g).unwrap();
        let mut partition = degree_centrality(&g).unwrap();
        partition.scope = Scope::Partition("US".to_string());
        let mut out = Vec::new();
        write_centrality_csv(&mut out, &g, &[full, partition]).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "entity_id,measure,scope,value,normalized");
        // 3 full-scope rows + 2 US-member rows.
        assert_eq!(lines.len(), 1 + 3 + 2);
        assert_eq!(lines[1], "a,degree,full,0.5,false");
        assert!(lines[4].starts_with("a,degree,US,"));
        assert!(lines[5].starts_with("b,degree,US,"));
    }

    #[test]
    fn topology_summary_and_histograms() {
        let g = labeled_fixture();
        let report = crate::topology::topology_report(&g, 100, 1).unwrap();
        let mut out = Vec::new();
        write_topology_summary_csv(&mut out, &report).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("stat,value\nn,3\nm,2\n"));
        assert!(text.contains("\nradius,1\n"));

        let mut out = Vec::new();
        write_histogram_csv(&mut out, "degree", "count", report.degree_histogram.clone()).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "degree,count\n1,2\n2,1\n"
        );
    }

    #[test]
    fn partition_rows_csv() {
        let g = labeled_fixture();
        let rows = crate::topology::partition_topology(&g, 10, 1).unwrap();
        let mut out = Vec::new();
        write_partition_topology_csv(&mut out, &rows).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("GB,1,1,0,"));
        assert!(lines[2].starts_with("US,2,2,1,1,1,"));
    }

    #[test]
    fn embeddedness_csv_has_one_overlap_column_per_k() {
        let g = labeled_fixture();
        let opts = crate::rankcompare::EmbeddednessOptions {
            k_list: vec![1, 2],
            ..Default::default()
        };
        let records = crate::rankcompare::embeddedness_report(&g, &opts).unwrap();
        let mut out = Vec::new();
        write_embeddedness_csv(&mut out, &records, &opts.k_list).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "partition,measure,persistence,dominance,top1_overlap,top2_overlap,transnational_factor,n_partition,n_full"
        );
        // 2 partitions × 4 measures.
        assert_eq!(lines.len(), 1 + 8);
        // GB is a single node: persistence/dominance null → empty cells.
        assert!(lines[1].starts_with("GB,degree,,,"));
    }

    #[test]
    fn json_output_is_stable() {
        let g = labeled_fixture();
        let report = crate::topology::topology_report(&g, 100, 1).unwrap();
        let mut a = Vec::new();
        write_json(&mut a, &report).unwrap();
        let mut b = Vec::new();
        write_json(&mut b, &report).unwrap();
        assert_eq!(a, b);
        assert!(a.ends_with(b"\n"));
        let text = String::from_utf8(a).unwrap();
        assert!(text.contains("\"density\": 0.6666666666666666"));
    }
}
