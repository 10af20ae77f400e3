//! Tie-aware ranking and ranking-comparison metrics.
//!
//! Rankings are descending: rank 1 is the most central node, and a group of
//! equal values shares the mean of the rank positions it occupies, so the
//! total rank sum is always n(n+1)/2 exactly (ranks are half-integers, which
//! f64 represents without error at any realistic scale).
//!
//! Three families compare a partition's ranking against the full network's:
//!
//! * **top-k overlap** — |top-k ∩ top-k| / k membership agreement;
//! * **persistence** — tie-aware Spearman correlation between a partition's
//!   internal centrality ranking and the same nodes' full-network ranking;
//! * **ranking dominance** — rd(S,V) = 1/2 − Σ_{v∈S} r(v) / (|S|·(|V|+1)),
//!   the degree to which S sits above (positive) or below (negative) the
//!   middle of the full ranking; 0 for a set spread like a uniform sample.

use serde::{Deserialize, Serialize};

use crate::centrality::{
    centrality_at_scope, centrality_on_giant, CentralityOptions, CentralityVector, Measure, Scope,
};
use crate::error::{Error, Result};
use crate::graph::{extract_giant, Graph, NodeId};
use crate::topology::transnational_factor;

/// Minimum comparable nodes for any correlation or dominance value; below
/// this the result is null (never zero).
pub const MIN_COMPARABLE: usize = 3;

/// Fractional (tie-averaged) descending ranks of `values`.
///
/// The highest value gets rank 1; a run of equal values shares the mean of
/// the positions it occupies. Output is parallel to the input.
pub fn fractional_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut idx: Vec<u32> = (0..n as u32).collect();
    idx.sort_unstable_by(|&i, &j| {
        values[j as usize]
            .total_cmp(&values[i as usize])
            .then(i.cmp(&j))
    });
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[idx[j + 1] as usize] == values[idx[i] as usize] {
            j += 1;
        }
        // Positions i+1 ..= j+1 (1-based); their mean is a half-integer.
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for t in i..=j {
            ranks[idx[t] as usize] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// A tie-aware ranking over an explicit node scope.
#[derive(Clone, Debug)]
pub struct RankVector {
    /// In-scope nodes, ascending.
    scope: Vec<NodeId>,
    /// Fractional rank per scope node (parallel to `scope`).
    ranks: Vec<f64>,
    /// Scope positions sorted by (value descending, tie key ascending); the
    /// prefix of length k is the top-k selection.
    order: Vec<u32>,
}

/// Top-k selection from a [`RankVector`].
#[derive(Clone, Debug)]
pub struct TopK {
    /// The k selected nodes in rank order.
    pub nodes: Vec<NodeId>,
    /// True when the cut at k splits a run of equal values, i.e. membership
    /// of the last slots was decided by the tie key, not by centrality.
    pub straddled: bool,
}

impl RankVector {
    fn build<C>(scope: Vec<NodeId>, values: &[f64], tie_cmp: C) -> Result<Self>
    where
        C: Fn(NodeId, NodeId) -> std::cmp::Ordering,
    {
        if scope.is_empty() {
            return Err(Error::EmptyScope {
                context: "rank_with_ties",
            });
        }
        debug_assert_eq!(scope.len(), values.len());
        let ranks = fractional_ranks(values);
        let mut order: Vec<u32> = (0..scope.len() as u32).collect();
        order.sort_unstable_by(|&i, &j| {
            values[j as usize]
                .total_cmp(&values[i as usize])
                .then_with(|| tie_cmp(scope[i as usize], scope[j as usize]))
        });
        Ok(Self { scope, ranks, order })
    }

    /// Ranks a plain value vector; node ids are the positions 0..len and
    /// double as the top-k tie key.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        let scope: Vec<NodeId> = (0..values.len() as NodeId).collect();
        Self::build(scope, values, |a, b| a.cmp(&b))
    }

    /// Ranks the in-scope entries of a centrality vector. Ties that straddle
    /// a top-k cut are resolved by ascending external id, so the selection is
    /// independent of internal node numbering.
    pub fn from_centrality(g: &Graph, vec: &CentralityVector) -> Result<Self> {
        let scope = vec.scope_nodes();
        let values: Vec<f64> = scope
            .iter()
            .map(|&v| vec.value(v).expect("scope node has a value"))
            .collect();
        Self::build(scope, &values, |a, b| {
            g.external_id(a).cmp(g.external_id(b))
        })
    }

    /// Number of ranked nodes.
    pub fn len(&self) -> usize {
        self.scope.len()
    }

    /// True when the scope is empty (never constructed; kept for symmetry).
    pub fn is_empty(&self) -> bool {
        self.scope.is_empty()
    }

    /// Ranked nodes, ascending by id.
    pub fn scope(&self) -> &[NodeId] {
        &self.scope
    }

    /// Fractional ranks parallel to [`RankVector::scope`].
    pub fn ranks(&self) -> &[f64] {
        &self.ranks
    }

    /// Rank of `node`, if it is in scope.
    pub fn rank_of(&self, node: NodeId) -> Option<f64> {
        self.scope
            .binary_search(&node)
            .ok()
            .map(|i| self.ranks[i])
    }

    /// Sum of all ranks — always len·(len+1)/2.
    pub fn rank_sum(&self) -> f64 {
        self.ranks.iter().sum()
    }

    /// The top-k nodes under the documented tie rule.
    pub fn top_k(&self, k: usize) -> Result<TopK> {
        if k == 0 || k > self.len() {
            return Err(Error::KOutOfRange {
                k,
                scope: self.len(),
            });
        }
        let nodes = self.order[..k]
            .iter()
            .map(|&i| self.scope[i as usize])
            .collect();
        let straddled = k < self.len()
            && self.ranks[self.order[k - 1] as usize] == self.ranks[self.order[k] as usize];
        Ok(TopK { nodes, straddled })
    }
}

/// Ranks a plain value vector (see [`RankVector::from_values`]).
pub fn rank_with_ties(values: &[f64]) -> Result<RankVector> {
    RankVector::from_values(values)
}

/// Why a correlation or dominance value is null.
fn too_few(got: usize) -> String {
    format!("fewer than {MIN_COMPARABLE} comparable nodes (got {got})")
}

fn pearson(a: &[f64], b: &[f64]) -> std::result::Result<f64, String> {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0f64, 0.0f64, 0.0f64);
    for (&x, &y) in a.iter().zip(b) {
        let dx = x - ma;
        let dy = y - mb;
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err("zero rank variance".to_string());
    }
    Ok((sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0))
}

fn spearman_pairs(pairs: &[(f64, f64)]) -> std::result::Result<f64, String> {
    if pairs.len() < MIN_COMPARABLE {
        return Err(too_few(pairs.len()));
    }
    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    pearson(&fractional_ranks(&xs), &fractional_ranks(&ys))
}

/// Tie-aware Spearman rank correlation of two equal-length value vectors
/// (Pearson correlation of the fractional ranks — the tie-correct form).
///
/// Returns `None` for fewer than three entries or when either rank vector is
/// constant.
pub fn spearman(a: &[f64], b: &[f64]) -> Option<f64> {
    assert_eq!(a.len(), b.len(), "spearman: length mismatch");
    let pairs: Vec<(f64, f64)> = a.iter().copied().zip(b.iter().copied()).collect();
    spearman_pairs(&pairs).ok()
}

/// [`spearman`] restricted to positions non-null in both vectors, re-ranked
/// within that overlap.
pub fn spearman_masked(a: &[Option<f64>], b: &[Option<f64>]) -> Option<f64> {
    assert_eq!(a.len(), b.len(), "spearman_masked: length mismatch");
    let pairs: Vec<(f64, f64)> = a
        .iter()
        .zip(b)
        .filter_map(|(x, y)| Some(((*x)?, (*y)?)))
        .collect();
    spearman_pairs(&pairs).ok()
}

/// Counts pairs (i < j) with `xs[i] > xs[j]` via merge sort. Equal elements
/// are not inversions.
fn count_inversions(xs: &mut [f64], buf: &mut Vec<f64>) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let (left, right) = xs.split_at_mut(mid);
    let mut inv = count_inversions(left, buf) + count_inversions(right, buf);
    buf.clear();
    let (mut i, mut j) = (0usize, 0usize);
    while i < left.len() && j < right.len() {
        if left[i] <= right[j] {
            buf.push(left[i]);
            i += 1;
        } else {
            inv += (left.len() - i) as u64;
            buf.push(right[j]);
            j += 1;
        }
    }
    buf.extend_from_slice(&left[i..]);
    buf.extend_from_slice(&right[j..]);
    xs.copy_from_slice(buf);
    inv
}

fn tie_pair_count<K: PartialEq>(sorted: &[K]) -> u64 {
    let mut total = 0u64;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as u64;
        total += t * (t - 1) / 2;
        i = j + 1;
    }
    total
}

fn kendall_pairs(pairs: &mut [(f64, f64)]) -> std::result::Result<f64, String> {
    let n = pairs.len();
    if n < MIN_COMPARABLE {
        return Err(too_few(n));
    }
    // Sort by (x asc, y asc): pairs tied in x are then never counted as
    // inversions of y, so the inversion count is exactly the number of
    // discordant pairs.
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    let n0 = (n as u64) * (n as u64 - 1) / 2;
    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let n1 = tie_pair_count(&xs);
    let both: Vec<(f64, f64)> = pairs.to_vec();
    let n3 = tie_pair_count(&both);
    let mut ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let mut buf = Vec::with_capacity(ys.len());
    let discordant = count_inversions(&mut ys, &mut buf);
    // ys is now sorted; reuse it for the y-tie count.
    let n2 = tie_pair_count(&ys);
    if n0 == n1 || n0 == n2 {
        return Err("zero rank variance".to_string());
    }
    let numer = n0 as i128 - n1 as i128 - n2 as i128 + n3 as i128 - 2 * discordant as i128;
    let denom = ((n0 - n1) as f64 * (n0 - n2) as f64).sqrt();
    Ok((numer as f64 / denom).clamp(-1.0, 1.0))
}

/// Kendall's tau-b (tie-adjusted) of two equal-length value vectors, via
/// merge-sort inversion counting.
pub fn kendall_tau(a: &[f64], b: &[f64]) -> Option<f64> {
    assert_eq!(a.len(), b.len(), "kendall_tau: length mismatch");
    let mut pairs: Vec<(f64, f64)> = a.iter().copied().zip(b.iter().copied()).collect();
    kendall_pairs(&mut pairs).ok()
}

/// [`kendall_tau`] restricted to positions non-null in both vectors.
pub fn kendall_tau_masked(a: &[Option<f64>], b: &[Option<f64>]) -> Option<f64> {
    assert_eq!(a.len(), b.len(), "kendall_tau_masked: length mismatch");
    let mut pairs: Vec<(f64, f64)> = a
        .iter()
        .zip(b)
        .filter_map(|(x, y)| Some(((*x)?, (*y)?)))
        .collect();
    kendall_pairs(&mut pairs).ok()
}

/// Result of [`top_k_overlap`].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TopKOverlap {
    /// |top-k(full) ∩ top-k(partition)| / k.
    pub value: f64,
    /// The full ranking's cut at k split a tie run.
    pub full_straddled: bool,
    /// The partition ranking's cut at k split a tie run.
    pub partition_straddled: bool,
}

/// Fraction of the partition's top-k that also appears in the full ranking's
/// top-k. Requires 0 < k ≤ |partition scope| (and k ≤ |full scope|).
pub fn top_k_overlap(full: &RankVector, partition: &RankVector, k: usize) -> Result<TopKOverlap> {
    if k == 0 || k > partition.len() {
        return Err(Error::KOutOfRange {
            k,
            scope: partition.len(),
        });
    }
    let full_top = full.top_k(k)?;
    let part_top = partition.top_k(k)?;
    let mut a: Vec<NodeId> = full_top.nodes.clone();
    let mut b: Vec<NodeId> = part_top.nodes.clone();
    a.sort_unstable();
    b.sort_unstable();
    let (mut i, mut j, mut shared) = (0usize, 0usize, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                shared += 1;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(TopKOverlap {
        value: shared as f64 / k as f64,
        full_straddled: full_top.straddled,
        partition_straddled: part_top.straddled,
    })
}

/// Centrality ranking dominance rd(S,V) = 1/2 − Σ_{v∈S} r(v) / (|S|·(|V|+1)).
///
/// `full` must rank the complete scope V; `subset` lists the members of S
/// (duplicates are collapsed). Positive values mean S sits above the middle
/// of the ranking; rd(V,V) is exactly 0 for any tie pattern because the
/// fractional rank sum is exactly |V|(|V|+1)/2.
pub fn ranking_dominance(full: &RankVector, subset: &[NodeId]) -> Result<f64> {
    if subset.is_empty() {
        return Err(Error::EmptyScope {
            context: "ranking_dominance",
        });
    }
    let mut ids = subset.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let mut sum = 0.0f64;
    for &v in &ids {
        sum += full.rank_of(v).ok_or(Error::NotInScope {
            context: "ranking_dominance",
            node: v,
        })?;
    }
    let d = ids.len() as f64 * (full.len() + 1) as f64;
    Ok((d / 2.0 - sum) / d)
}

fn degenerate_to_none(e: Error) -> std::result::Result<String, Error> {
    match e {
        Error::TooSmall { context, needed, got } => Ok(format!(
            "{context}: need at least {needed} nodes, got {got}"
        )),
        Error::Disconnected { context } => Ok(format!("{context}: disconnected scope")),
        Error::EmptyGraph => Ok("empty graph".to_string()),
        other => Err(other),
    }
}

fn correlate_scopes(
    full: &CentralityVector,
    part: &CentralityVector,
) -> (Option<f64>, Option<String>) {
    let pairs: Vec<(f64, f64)> = part
        .values()
        .iter()
        .zip(full.values())
        .filter_map(|(p, f)| Some(((*p)?, (*f)?)))
        .collect();
    match spearman_pairs(&pairs) {
        Ok(v) => (Some(v), None),
        Err(reason) => (None, Some(reason)),
    }
}

/// Centrality persistence rc(S,V): the tie-aware Spearman correlation between
/// partition-scope and full-scope centrality over the nodes present in both.
///
/// Returns `Ok(None)` when the partition's comparable scope is degenerate
/// (induced giant component below 2 nodes, or fewer than
/// [`MIN_COMPARABLE`] overlapping nodes).
pub fn persistence(
    g: &Graph,
    label: &str,
    measure: Measure,
    opts: &CentralityOptions,
) -> Result<Option<f64>> {
    g.partition_members(label)?; // validate the label
    let full = match centrality_on_giant(g, measure, opts) {
        Ok(v) => v,
        Err(e) => return degenerate_to_none(e).map(|_| None),
    };
    let part = match centrality_at_scope(g, label, measure, opts) {
        Ok(v) => v,
        Err(e) => return degenerate_to_none(e).map(|_| None),
    };
    Ok(correlate_scopes(&full, &part).0)
}

/// Spearman correlation between a centrality measure and a node attribute,
/// pairwise over nodes with both values, at full or partition scope.
pub fn attribute_correlation(
    g: &Graph,
    measure: Measure,
    attribute: &str,
    scope: &Scope,
    opts: &CentralityOptions,
) -> Result<Option<f64>> {
    let attr = g
        .attribute(attribute)
        .ok_or_else(|| Error::UnknownAttribute(attribute.to_string()))?;
    let vec = match scope {
        Scope::Full => centrality_on_giant(g, measure, opts),
        Scope::Partition(label) => centrality_at_scope(g, label, measure, opts),
    };
    let vec = match vec {
        Ok(v) => v,
        Err(e) => return degenerate_to_none(e).map(|_| None),
    };
    Ok(spearman_masked(vec.values(), attr))
}

/// Pairwise Spearman matrix among measures on the giant component.
/// `matrix[i][j]` correlates `measures[i]` with `measures[j]`; the diagonal
/// is exactly 1 (a ranking always agrees with itself).
pub fn measure_correlation_matrix(
    g: &Graph,
    measures: &[Measure],
    opts: &CentralityOptions,
) -> Result<Vec<Vec<Option<f64>>>> {
    let mut vectors: Vec<Option<CentralityVector>> = Vec::with_capacity(measures.len());
    for &m in measures {
        match centrality_on_giant(g, m, opts) {
            Ok(v) => vectors.push(Some(v)),
            Err(e) => {
                degenerate_to_none(e)?;
                vectors.push(None);
            }
        }
    }
    let mut matrix = vec![vec![None; measures.len()]; measures.len()];
    for i in 0..measures.len() {
        for j in 0..measures.len() {
            matrix[i][j] = if i == j {
                vectors[i].as_ref().map(|_| 1.0)
            } else {
                match (&vectors[i], &vectors[j]) {
                    (Some(a), Some(b)) => spearman_masked(a.values(), b.values()),
                    _ => None,
                }
            };
        }
    }
    Ok(matrix)
}

/// One requested top-k comparison within an [`EmbeddednessRecord`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TopKEntry {
    pub k: usize,
    pub overlap: Option<f64>,
    pub full_straddled: bool,
    pub partition_straddled: bool,
    /// Why `overlap` is null, when it is.
    pub reason: Option<String>,
}

/// Embeddedness of one partition under one measure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddednessRecord {
    pub partition: String,
    pub measure: Measure,
    /// rc(S,V); null below the minimum comparable scope.
    pub persistence: Option<f64>,
    pub persistence_reason: Option<String>,
    /// rd(S,V); null below the minimum comparable scope.
    pub dominance: Option<f64>,
    pub dominance_reason: Option<String>,
    pub top_k: Vec<TopKEntry>,
    /// Cross-partition edges per internal edge (measure-independent).
    pub transnational_factor: Option<f64>,
    /// Partition members inside the analyzed full scope (the giant component).
    pub n_partition: usize,
    /// Size of the full scope.
    pub n_full: usize,
}

/// Options for [`embeddedness_report`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddednessOptions {
    pub measures: Vec<Measure>,
    /// Top-k cutoffs to evaluate per record.
    pub k_list: Vec<usize>,
    pub centrality: CentralityOptions,
}

impl Default for EmbeddednessOptions {
    fn default() -> Self {
        Self {
            measures: Measure::ALL.to_vec(),
            k_list: vec![10, 100],
            centrality: CentralityOptions::default(),
        }
    }
}

/// Full embeddedness report: one record per (partition, measure), partitions
/// ascending, measures in the requested order. Degenerate combinations yield
/// null fields with reasons, never errors.
pub fn embeddedness_report(g: &Graph, opts: &EmbeddednessOptions) -> Result<Vec<EmbeddednessRecord>> {
    let labels: Vec<String> = g.partition_labels().to_vec();
    if labels.is_empty() || g.node_count() == 0 {
        return Ok(Vec::new());
    }
    let giant = extract_giant(g)?;
    let n_full = giant.graph.node_count();
    let in_giant = {
        let mut mask = vec![false; g.node_count()];
        for &p in &giant.to_parent {
            mask[p as usize] = true;
        }
        mask
    };

    struct FullMeasure {
        vec: Option<CentralityVector>,
        rank: Option<RankVector>,
        fail: Option<String>,
    }
    let mut fulls: Vec<FullMeasure> = Vec::with_capacity(opts.measures.len());
    for &m in &opts.measures {
        match centrality_on_giant(g, m, &opts.centrality) {
            Ok(vec) => {
                let rank = RankVector::from_centrality(g, &vec)?;
                fulls.push(FullMeasure {
                    vec: Some(vec),
                    rank: Some(rank),
                    fail: None,
                });
            }
            Err(e) => {
                let reason = degenerate_to_none(e)?;
                fulls.push(FullMeasure {
                    vec: None,
                    rank: None,
                    fail: Some(reason),
                });
            }
        }
    }

    let mut records = Vec::with_capacity(labels.len() * opts.measures.len());
    for label in &labels {
        let members = g.partition_members(label)?;
        let comparable: Vec<NodeId> = members
            .iter()
            .copied()
            .filter(|&v| in_giant[v as usize])
            .collect();
        let tf = transnational_factor(g, label)?;

        for (mi, &measure) in opts.measures.iter().enumerate() {
            let full = &fulls[mi];
            let mut record = EmbeddednessRecord {
                partition: label.clone(),
                measure,
                persistence: None,
                persistence_reason: None,
                dominance: None,
                dominance_reason: None,
                top_k: Vec::new(),
                transnational_factor: tf,
                n_partition: comparable.len(),
                n_full,
            };

            if let Some(reason) = &full.fail {
                let r = Some(format!("full scope unavailable: {reason}"));
                record.persistence_reason = r.clone();
                record.dominance_reason = r.clone();
                record.top_k = opts
                    .k_list
                    .iter()
                    .map(|&k| TopKEntry {
                        k,
                        overlap: None,
                        full_straddled: false,
                        partition_straddled: false,
                        reason: r.clone(),
                    })
                    .collect();
                records.push(record);
                continue;
            }
            let full_vec = full.vec.as_ref().expect("present unless failed");
            let full_rank = full.rank.as_ref().expect("present unless failed");

            // Dominance over the members with full-network ranks.
            if comparable.len() < MIN_COMPARABLE {
                record.dominance_reason = Some(too_few(comparable.len()));
            } else {
                record.dominance = Some(ranking_dominance(full_rank, &comparable)?);
            }

            // Partition-scope vector for persistence and top-k.
            let part_vec = match centrality_at_scope(g, label, measure, &opts.centrality) {
                Ok(v) => Some(v),
                Err(e) => {
                    record.persistence_reason = Some(degenerate_to_none(e)?);
                    None
                }
            };

            if let Some(part_vec) = &part_vec {
                let (value, reason) = correlate_scopes(full_vec, part_vec);
                record.persistence = value;
                record.persistence_reason = reason;
                let part_rank = RankVector::from_centrality(g, part_vec)?;
                record.top_k = opts
                    .k_list
                    .iter()
                    .map(|&k| match top_k_overlap(full_rank, &part_rank, k) {
                        Ok(o) => TopKEntry {
                            k,
                            overlap: Some(o.value),
                            full_straddled: o.full_straddled,
                            partition_straddled: o.partition_straddled,
                            reason: None,
                        },
                        Err(_) => TopKEntry {
                            k,
                            overlap: None,
                            full_straddled: false,
                            partition_straddled: false,
                            reason: Some(format!(
                                "k = {k} exceeds the partition scope ({} nodes)",
                                part_rank.len()
                            )),
                        },
                    })
                    .collect();
            } else {
                let reason = record.persistence_reason.clone();
                record.top_k = opts
                    .k_list
                    .iter()
                    .map(|&k| TopKEntry {
                        k,
                        overlap: None,
                        full_straddled: false,
                        partition_straddled: false,
                        reason: reason.clone(),
                    })
                    .collect();
            }

            records.push(record);
        }
    }
    Ok(records)
}
