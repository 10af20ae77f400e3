//! Structural statistics: clustering, sampled distance distributions,
//! eccentricities with bounds pruning, and per-partition summaries.
//!
//! Everything here is read-only on [`Graph`]. Distance- and
//! eccentricity-based statistics are only defined on connected graphs; the
//! report assemblers apply them to the giant component and leave the fields
//! `None` when the giant component is too small to carry them.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bfs::{Bfs, PairDistance};
use crate::centrality::require_connected;
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{
    connected_components, extract_giant, induced_subgraph, Graph, NodeId,
};
use crate::util::{fnv1a64, pair_from_linear};

/// Above this many unordered pairs, distance sampling draws with replacement
/// instead of materializing a distinct-pair sample.
const WITHOUT_REPLACEMENT_LIMIT: u64 = 100_000_000;

/// Number of BFS sources per pruning round in [`eccentricity_all`].
const ECC_BATCH: usize = 8;

// ---------------------------------------------------------------------------
// Clustering
// ---------------------------------------------------------------------------

/// Closed triangles incident to each node, counted exactly via sorted
/// adjacency intersections.
fn triangle_counts(g: &Graph) -> Vec<u64> {
    let nodes: Vec<NodeId> = (0..g.node_count() as NodeId).collect();
    exec::ordered_map(
        &nodes,
        || (),
        |_, &v| {
            // Σ_{w ∈ N(v)} |N(v) ∩ N(w)| counts each triangle through v twice
            // (once at each of the two other corners).
            let nv = g.neighbors(v);
            let mut twice = 0u64;
            for &w in nv {
                let nw = g.neighbors(w);
                let (mut i, mut j) = (0usize, 0usize);
                while i < nv.len() && j < nw.len() {
                    match nv[i].cmp(&nw[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            twice += 1;
                            i += 1;
                            j += 1;
                        }
                    }
                }
            }
            twice / 2
        },
    )
}

/// Average local clustering coefficient.
///
/// Mean over nodes of degree ≥ 2 of `triangles(v) / (deg(v)·(deg(v)−1)/2)`;
/// nodes of degree < 2 have no possible triangles and are excluded from the
/// mean. `None` when no node has degree ≥ 2.
pub fn clustering_coefficient(g: &Graph) -> Option<f64> {
    let tri = triangle_counts(g);
    let mut sum = 0.0f64;
    let mut counted = 0usize;
    for (v, &t) in tri.iter().enumerate() {
        let d = g.degree(v as NodeId) as u64;
        if d >= 2 {
            let possible = d * (d - 1) / 2;
            sum += t as f64 / possible as f64;
            counted += 1;
        }
    }
    (counted > 0).then(|| sum / counted as f64)
}

/// Global transitivity: 3 · triangles / wedges, where a wedge is an ordered
/// pair of distinct edges sharing a midpoint. Exposed under its own name to
/// keep it distinct from the average-local [`clustering_coefficient`].
/// `None` when the graph has no wedges.
pub fn transitivity(g: &Graph) -> Option<f64> {
    let tri = triangle_counts(g);
    let closed: u64 = tri.iter().sum(); // 3 · number of triangles
    let wedges: u64 = (0..g.node_count() as NodeId)
        .map(|v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    (wedges > 0).then(|| closed as f64 / wedges as f64)
}

// ---------------------------------------------------------------------------
// Distance distribution
// ---------------------------------------------------------------------------

/// Histogram and mean of shortest-path distances over node pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceDistribution {
    /// distance → number of sampled (or enumerated) pairs at that distance.
    pub histogram: BTreeMap<u32, u64>,
    /// Mean distance over the counted pairs.
    pub mean: f64,
    /// Number of pairs counted; always equals the histogram total.
    pub pairs: u64,
    /// True when every unordered pair was enumerated instead of sampled.
    pub exhaustive: bool,
    /// True when sampling drew pairs with replacement (only for graphs with
    /// more than 10⁸ unordered pairs).
    pub with_replacement: bool,
}

/// Shortest-path distance distribution over unordered node pairs.
///
/// Requires a connected graph with at least two nodes. If `sample_pairs`
/// covers every unordered pair, all pairs are enumerated exactly; otherwise
/// `sample_pairs` pairs are drawn uniformly with the seeded generator —
/// without replacement while the pair universe is small enough to index,
/// with replacement beyond that. Fixed seed ⇒ identical output.
pub fn distance_distribution(
    g: &Graph,
    sample_pairs: u64,
    seed: u64,
) -> Result<DistanceDistribution> {
    distance_distribution_impl(g, sample_pairs, seed, WITHOUT_REPLACEMENT_LIMIT)
}

fn distance_distribution_impl(
    g: &Graph,
    sample_pairs: u64,
    seed: u64,
    without_replacement_limit: u64,
) -> Result<DistanceDistribution> {
    if sample_pairs == 0 {
        return Err(Error::NoSamplePairs);
    }
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooSmall {
            context: "distance_distribution",
            needed: 2,
            got: n,
        });
    }
    require_connected(g, "distance_distribution")?;
    let n64 = n as u64;
    let total = n64 * (n64 - 1) / 2;

    if sample_pairs >= total {
        return Ok(exhaustive_distances(g, total));
    }

    // k < total ≤ the pair universe; draw the sample.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let with_replacement = total > without_replacement_limit;
    let pairs: Vec<(NodeId, NodeId)> = if with_replacement {
        (0..sample_pairs)
            .map(|_| {
                let i = rng.random_range(0..n64);
                let mut j = rng.random_range(0..n64 - 1);
                if j >= i {
                    j += 1;
                }
                (i.min(j) as NodeId, i.max(j) as NodeId)
            })
            .collect()
    } else {
        // Floyd's algorithm: a uniform k-subset of the pair indices.
        let k = sample_pairs;
        let mut chosen: HashSet<u64> = HashSet::with_capacity(k as usize);
        for j in (total - k)..total {
            let t = rng.random_range(0..=j);
            let t = if chosen.contains(&t) { j } else { t };
            chosen.insert(t);
        }
        let mut codes: Vec<u64> = chosen.into_iter().collect();
        codes.sort_unstable();
        codes
            .into_iter()
            .map(|t| {
                let (i, j) = pair_from_linear(t, n64);
                (i as NodeId, j as NodeId)
            })
            .collect()
    };

    let dists = exec::ordered_map(
        &pairs,
        || PairDistance::new(n),
        |pd, &(u, v)| {
            pd.distance(g, u, v)
                .expect("graph verified connected before sampling")
        },
    );
    let mut histogram = BTreeMap::new();
    for d in dists {
        *histogram.entry(d).or_insert(0u64) += 1;
    }
    Ok(finish_distribution(
        histogram,
        sample_pairs,
        false,
        with_replacement,
    ))
}

/// Enumerates every unordered pair via one BFS per source.
fn exhaustive_distances(g: &Graph, total: u64) -> DistanceDistribution {
    let n = g.node_count();
    let sources: Vec<NodeId> = (0..n as NodeId).collect();
    let per_source = exec::ordered_map(
        &sources,
        || Bfs::new(n),
        |bfs, &s| {
            let summary = bfs.run(g, s);
            debug_assert_eq!(summary.reached, n, "caller must verify connectivity");
            let mut h = vec![0u64; summary.max_dist as usize + 1];
            for &d in &bfs.dist {
                h[d as usize] += 1;
            }
            h
        },
    );
    let mut merged: Vec<u64> = Vec::new();
    for h in per_source {
        if h.len() > merged.len() {
            merged.resize(h.len(), 0);
        }
        for (slot, c) in merged.iter_mut().zip(h) {
            *slot += c;
        }
    }
    // Ordered distances counted each unordered pair twice; index 0 is the
    // sources seeing themselves.
    let mut histogram = BTreeMap::new();
    for (d, &c) in merged.iter().enumerate().skip(1) {
        if c > 0 {
            debug_assert_eq!(c % 2, 0);
            histogram.insert(d as u32, c / 2);
        }
    }
    finish_distribution(histogram, total, true, false)
}

fn finish_distribution(
    histogram: BTreeMap<u32, u64>,
    pairs: u64,
    exhaustive: bool,
    with_replacement: bool,
) -> DistanceDistribution {
    debug_assert_eq!(histogram.values().sum::<u64>(), pairs);
    let weighted: u128 = histogram
        .iter()
        .map(|(&d, &c)| d as u128 * c as u128)
        .sum();
    DistanceDistribution {
        histogram,
        mean: weighted as f64 / pairs as f64,
        pairs,
        exhaustive,
        with_replacement,
    }
}

// ---------------------------------------------------------------------------
// Eccentricities
// ---------------------------------------------------------------------------

/// Exact per-node eccentricities of a connected graph, with radius and
/// diameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eccentricities {
    /// Eccentricity per node id.
    pub ecc: Vec<u32>,
    /// Minimum eccentricity.
    pub radius: u32,
    /// Maximum eccentricity.
    pub diameter: u32,
}

impl Eccentricities {
    /// Histogram: eccentricity → node count.
    pub fn histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for &e in &self.ecc {
            *h.entry(e).or_insert(0) += 1;
        }
        h
    }
}

/// Exact eccentricity of every node of a connected graph.
///
/// Runs BFS from a deterministically chosen batch of sources per round and
/// squeezes every unresolved node `w` between `max(d(s,w), ecc(s) − d(s,w))`
/// and `ecc(s) + d(s,w)` until the bounds meet. Each round resolves at least
/// its own sources, so the worst case degrades gracefully to all-source BFS;
/// on low-diameter graphs almost all nodes resolve within a few rounds.
pub fn eccentricity_all(g: &Graph) -> Result<Eccentricities> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    require_connected(g, "eccentricity_all")?;

    let mut lower = vec![0u32; n];
    let mut upper = vec![u32::MAX; n];
    let mut resolved = vec![false; n];
    let mut ecc = vec![0u32; n];
    let mut unresolved = n;
    let mut first_round = true;

    while unresolved > 0 {
        let candidates = pick_candidates(g, &lower, &upper, &resolved, first_round);
        first_round = false;
        let bfs_results: Vec<(u32, Vec<u32>)> = exec::ordered_map(
            &candidates,
            || Bfs::new(n),
            |bfs, &s| {
                let summary = bfs.run(g, s);
                (summary.max_dist, bfs.dist.clone())
            },
        );
        for (ecc_s, dist) in bfs_results {
            for v in 0..n {
                if resolved[v] {
                    continue;
                }
                let d = dist[v];
                lower[v] = lower[v].max(d).max(ecc_s - d);
                upper[v] = upper[v].min(ecc_s.saturating_add(d));
                if lower[v] == upper[v] {
                    resolved[v] = true;
                    ecc[v] = lower[v];
                    unresolved -= 1;
                }
            }
        }
    }

    let radius = *ecc.iter().min().expect("non-empty");
    let diameter = *ecc.iter().max().expect("non-empty");
    Ok(Eccentricities {
        ecc,
        radius,
        diameter,
    })
}

/// Chooses the next BFS sources: alternately the loosest upper bound (likely
/// peripheral) and the tightest lower bound (likely central), ties broken by
/// node id; the first round seeds with the highest-degree nodes instead,
/// since no bounds exist yet. Fully deterministic.
fn pick_candidates(
    g: &Graph,
    lower: &[u32],
    upper: &[u32],
    resolved: &[bool],
    first_round: bool,
) -> Vec<NodeId> {
    let pending: Vec<NodeId> = (0..g.node_count() as NodeId)
        .filter(|&v| !resolved[v as usize])
        .collect();
    if first_round {
        let mut by_degree = pending;
        by_degree.sort_unstable_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        by_degree.truncate(ECC_BATCH);
        return by_degree;
    }
    let mut by_upper = pending.clone();
    by_upper.sort_unstable_by_key(|&v| (std::cmp::Reverse(upper[v as usize]), v));
    let mut by_lower = pending;
    by_lower.sort_unstable_by_key(|&v| (lower[v as usize], v));

    let want = ECC_BATCH.min(by_upper.len());
    let mut picked = Vec::with_capacity(want);
    let (mut iu, mut il) = (0usize, 0usize);
    for slot in 0..want {
        let (list, cursor) = if slot % 2 == 0 {
            (&by_upper, &mut iu)
        } else {
            (&by_lower, &mut il)
        };
        while *cursor < list.len() && picked.contains(&list[*cursor]) {
            *cursor += 1;
        }
        if *cursor < list.len() {
            picked.push(list[*cursor]);
            *cursor += 1;
        }
    }
    picked
}

// ---------------------------------------------------------------------------
// Transnational factor
// ---------------------------------------------------------------------------

/// Ratio of a partition's cross edges to its internal edges.
///
/// Internal edges have both endpoints labeled `label`; cross edges have
/// exactly one. Returns `None` when the partition has no internal edges (the
/// ratio is undefined there).
pub fn transnational_factor(g: &Graph, label: &str) -> Result<Option<f64>> {
    let idx = g
        .partition_labels()
        .binary_search_by(|l| l.as_str().cmp(label))
        .map_err(|_| Error::UnknownPartition(label.to_string()))? as u32;
    let mut internal = 0u64;
    let mut cross = 0u64;
    for (u, v, _) in g.edges() {
        let at_u = g.partition_idx(u) == Some(idx);
        let at_v = g.partition_idx(v) == Some(idx);
        match (at_u, at_v) {
            (true, true) => internal += 1,
            (true, false) | (false, true) => cross += 1,
            (false, false) => {}
        }
    }
    Ok((internal > 0).then(|| cross as f64 / internal as f64))
}

/// `(internal, cross)` edge counts per interned partition label, in one edge
/// sweep. Used by the report assemblers to avoid per-label rescans.
pub(crate) fn transnational_counts(g: &Graph) -> Vec<(u64, u64)> {
    let mut counts = vec![(0u64, 0u64); g.partition_labels().len()];
    for (u, v, _) in g.edges() {
        match (g.partition_idx(u), g.partition_idx(v)) {
            (Some(a), Some(b)) if a == b => counts[a as usize].0 += 1,
            (Some(a), Some(b)) => {
                counts[a as usize].1 += 1;
                counts[b as usize].1 += 1;
            }
            (Some(a), None) | (None, Some(a)) => counts[a as usize].1 += 1,
            (None, None) => {}
        }
    }
    counts
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Whole-graph structural summary. Distance and eccentricity statistics are
/// computed on the giant component; the per-node vectors (`giant_nodes`,
/// `eccentricities`) are kept in memory for downstream use but excluded from
/// serialization, which carries the histogram instead.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopologyReport {
    /// Node count.
    pub n: usize,
    /// Edge count (distinct unordered pairs).
    pub m: usize,
    /// 2m / (n(n−1)); `None` below two nodes.
    pub density: Option<f64>,
    /// 2m / n; `None` on the empty graph.
    pub avg_degree: Option<f64>,
    /// Average local clustering (degree ≥ 2 nodes only).
    pub clustering: Option<f64>,
    /// Global transitivity (3 · triangles / wedges).
    pub transitivity: Option<f64>,
    /// degree → node count.
    pub degree_histogram: BTreeMap<usize, usize>,
    /// component size → component count.
    pub component_size_histogram: BTreeMap<usize, usize>,
    /// Number of connected components.
    pub component_count: usize,
    /// Giant-component node count.
    pub giant_n: usize,
    /// Giant-component edge count.
    pub giant_m: usize,
    /// Pair-distance distribution on the giant component; `None` when it has
    /// fewer than two nodes.
    pub distances: Option<DistanceDistribution>,
    /// eccentricity → node count, over the giant component.
    pub eccentricity_histogram: BTreeMap<u32, usize>,
    /// Minimum giant-component eccentricity.
    pub radius: Option<u32>,
    /// Maximum giant-component eccentricity.
    pub diameter: Option<u32>,
    /// Parent-graph ids of the giant component's nodes, ascending.
    #[serde(skip)]
    pub giant_nodes: Vec<NodeId>,
    /// Eccentricities parallel to `giant_nodes`.
    #[serde(skip)]
    pub eccentricities: Vec<u32>,
}

/// Assembles the whole-graph summary. Never fails on degenerate shapes
/// (empty graph, no edges): the affected fields are simply `None`/empty.
/// `sample_pairs` must be ≥ 1; distance sampling uses `seed`.
pub fn topology_report(g: &Graph, sample_pairs: u64, seed: u64) -> Result<TopologyReport> {
    if sample_pairs == 0 {
        return Err(Error::NoSamplePairs);
    }
    let n = g.node_count();
    let m = g.edge_count();

    let mut degree_histogram = BTreeMap::new();
    for v in 0..n as NodeId {
        *degree_histogram.entry(g.degree(v)).or_insert(0) += 1;
    }

    let labeling = connected_components(g);
    let component_size_histogram = labeling.size_histogram();
    let component_count = labeling.count();

    let (giant_n, giant_m, distances, ecc_hist, radius, diameter, giant_nodes, eccentricities) =
        if n == 0 {
            (0, 0, None, BTreeMap::new(), None, None, Vec::new(), Vec::new())
        } else {
            let giant = extract_giant(g)?;
            let gg = &giant.graph;
            let distances = if gg.node_count() >= 2 {
                Some(distance_distribution(gg, sample_pairs, seed)?)
            } else {
                None
            };
            let e = eccentricity_all(gg)?;
            (
                gg.node_count(),
                gg.edge_count(),
                distances,
                e.histogram(),
                Some(e.radius),
                Some(e.diameter),
                giant.to_parent,
                e.ecc,
            )
        };

    Ok(TopologyReport {
        n,
        m,
        density: (n >= 2).then(|| 2.0 * m as f64 / (n as f64 * (n as f64 - 1.0))),
        avg_degree: (n >= 1).then(|| 2.0 * m as f64 / n as f64),
        clustering: clustering_coefficient(g),
        transitivity: transitivity(g),
        degree_histogram,
        component_size_histogram,
        component_count,
        giant_n,
        giant_m,
        distances,
        eccentricity_histogram: ecc_hist,
        radius,
        diameter,
        giant_nodes,
        eccentricities,
    })
}

/// One per-partition summary row: statistics of the giant component of the
/// partition's induced subgraph, plus the transnational factor measured in
/// the parent graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionTopologyRow {
    /// Partition label.
    pub partition: String,
    /// Nodes carrying the label.
    pub n_members: usize,
    /// Giant-component size of the induced subgraph.
    pub giant_n: usize,
    /// Giant-component edge count of the induced subgraph.
    pub giant_m: usize,
    /// Density of the induced giant; `None` below two nodes.
    pub density: Option<f64>,
    /// Mean degree of the induced giant; `None` on an empty giant.
    pub avg_degree: Option<f64>,
    /// Average local clustering of the induced giant.
    pub clustering: Option<f64>,
    /// Mean pair distance on the induced giant; `None` below two nodes.
    pub avg_distance: Option<f64>,
    /// Pairs behind `avg_distance` (0 when it is `None`).
    pub distance_pairs: u64,
    /// Cross/internal edge ratio in the parent graph; `None` without
    /// internal edges.
    pub transnational_factor: Option<f64>,
}

/// Per-partition summary rows, ordered by label.
///
/// Each row is computed on the giant component of the partition's induced
/// subgraph. Distance sampling derives a per-partition seed from `seed` and
/// the label so that adding or removing partitions never shifts another
/// partition's sample.
pub fn partition_topology(
    g: &Graph,
    sample_pairs: u64,
    seed: u64,
) -> Result<Vec<PartitionTopologyRow>> {
    if sample_pairs == 0 {
        return Err(Error::NoSamplePairs);
    }
    let counts = transnational_counts(g);
    let mut rows = Vec::with_capacity(g.partition_labels().len());
    for (idx, label) in g.partition_labels().iter().enumerate() {
        let sub = induced_subgraph(g, label)?;
        let n_members = sub.graph.node_count();
        let giant = extract_giant(&sub.graph)?;
        let gg = &giant.graph;
        let (gn, gm) = (gg.node_count(), gg.edge_count());
        let distances = if gn >= 2 {
            let part_seed = seed ^ fnv1a64(label.as_bytes());
            Some(distance_distribution(gg, sample_pairs, part_seed)?)
        } else {
            None
        };
        let (internal, cross) = counts[idx];
        rows.push(PartitionTopologyRow {
            partition: label.clone(),
            n_members,
            giant_n: gn,
            giant_m: gm,
            density: (gn >= 2).then(|| 2.0 * gm as f64 / (gn as f64 * (gn as f64 - 1.0))),
            avg_degree: (gn >= 1).then(|| 2.0 * gm as f64 / gn as f64),
            clustering: clustering_coefficient(gg),
            avg_distance: distances.as_ref().map(|d| d.mean),
            distance_pairs: distances.as_ref().map_or(0, |d| d.pairs),
            transnational_factor: (internal > 0).then(|| cross as f64 / internal as f64),
        });
    }
    Ok(rows)
}
