//! Seeded planted-partition graph generator.
//!
//! Produces benchmark- and test-scale stand-ins for partitioned interlock
//! networks: each partition is an Erdős–Rényi block with its own intra-edge
//! probability, partition pairs are joined by a cross-edge probability
//! matrix, and every node carries a `prominence` attribute equal to its
//! realized degree plus seeded Gaussian noise (a noisy monotone function of
//! degree, so attribute–centrality correlations are tunable).
//!
//! Identical spec and seed yield identical graphs, bit for bit. Pair
//! enumeration uses geometric skip-sampling, so generation cost is
//! proportional to the number of edges drawn, not the number of candidate
//! pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, NodeId};
use crate::util::pair_from_linear;

/// Name of the generated node attribute.
pub const SYNTH_ATTRIBUTE: &str = "prominence";

/// Recipe for one synthetic graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    /// Node count per partition; partition `i` is labeled `P{i:02}` and its
    /// nodes are named `F{idx:07}` over a contiguous id block.
    pub partition_sizes: Vec<usize>,
    /// Intra-partition edge probability per partition (same length as
    /// `partition_sizes`).
    pub intra_p: Vec<f64>,
    /// Cross-partition edge probability matrix; entry `[i][j]` with `i < j`
    /// governs edges between partitions `i` and `j` (the lower triangle and
    /// diagonal are ignored).
    pub cross_p: Vec<Vec<f64>>,
    /// Standard deviation of the Gaussian noise added to each node's degree
    /// to form the `prominence` attribute.
    #[serde(default = "default_noise")]
    pub attribute_noise: f64,
    /// Generator seed.
    pub seed: u64,
}

fn default_noise() -> f64 {
    1.0
}

impl SyntheticSpec {
    /// Spec with one shared intra-partition probability and one shared
    /// cross-partition probability.
    pub fn uniform(partition_sizes: Vec<usize>, intra: f64, cross: f64, seed: u64) -> Self {
        let p = partition_sizes.len();
        Self {
            partition_sizes,
            intra_p: vec![intra; p],
            cross_p: vec![vec![cross; p]; p],
            attribute_noise: default_noise(),
            seed,
        }
    }

    /// Total node count.
    pub fn node_count(&self) -> usize {
        self.partition_sizes.iter().sum()
    }

    /// Expected number of edges under these settings.
    pub fn expected_edges(&self) -> f64 {
        let mut e = 0.0;
        for (i, &s) in self.partition_sizes.iter().enumerate() {
            e += self.intra_p[i] * (s as f64 * (s as f64 - 1.0) / 2.0);
        }
        for i in 0..self.partition_sizes.len() {
            for j in (i + 1)..self.partition_sizes.len() {
                e += self.cross_p[i][j]
                    * (self.partition_sizes[i] as f64 * self.partition_sizes[j] as f64);
            }
        }
        e
    }

    /// Variance of the edge count under these settings (a sum of independent
    /// Bernoulli draws).
    pub fn edge_count_variance(&self) -> f64 {
        let mut v = 0.0;
        for (i, &s) in self.partition_sizes.iter().enumerate() {
            let p = self.intra_p[i];
            v += p * (1.0 - p) * (s as f64 * (s as f64 - 1.0) / 2.0);
        }
        for i in 0..self.partition_sizes.len() {
            for j in (i + 1)..self.partition_sizes.len() {
                let p = self.cross_p[i][j];
                v += p * (1.0 - p)
                    * (self.partition_sizes[i] as f64 * self.partition_sizes[j] as f64);
            }
        }
        v
    }

    fn validate(&self) -> Result<()> {
        let p = self.partition_sizes.len();
        if p == 0 {
            return Err(Error::TooSmall {
                context: "synthesize",
                needed: 1,
                got: 0,
            });
        }
        for &s in &self.partition_sizes {
            if s == 0 {
                return Err(Error::TooSmall {
                    context: "synthesize: partition size",
                    needed: 1,
                    got: 0,
                });
            }
        }
        let n: usize = self.partition_sizes.iter().sum();
        if u32::try_from(n).is_err() {
            return Err(Error::TooSmall {
                context: "synthesize: node ids are 32-bit",
                needed: u32::MAX as usize,
                got: n,
            });
        }
        if self.intra_p.len() != p || self.cross_p.len() != p {
            return Err(Error::BadProbability {
                name: "intra_p/cross_p length",
                value: self.intra_p.len().min(self.cross_p.len()) as f64,
            });
        }
        for &prob in &self.intra_p {
            check_probability("intra_p", prob)?;
        }
        for row in &self.cross_p {
            if row.len() != p {
                return Err(Error::BadProbability {
                    name: "cross_p row length",
                    value: row.len() as f64,
                });
            }
            for &prob in row {
                check_probability("cross_p", prob)?;
            }
        }
        if !self.attribute_noise.is_finite() || self.attribute_noise < 0.0 {
            return Err(Error::BadProbability {
                name: "attribute_noise",
                value: self.attribute_noise,
            });
        }
        Ok(())
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::BadProbability { name, value })
    }
}

/// Draws the indices of successes among `total` independent Bernoulli(p)
/// trials by skipping geometrically between hits.
fn bernoulli_indices(total: u64, p: f64, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    out.clear();
    if total == 0 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        out.extend(0..total);
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut idx: u64 = 0;
    loop {
        // Failures before the next success: floor(ln(1−U)/ln(1−p)).
        let u: f64 = rng.random();
        let skip = ((1.0 - u).ln() / log_q).floor();
        let skip = if skip >= total as f64 {
            total // saturate; terminates below
        } else {
            skip as u64
        };
        idx = idx.saturating_add(skip);
        if idx >= total {
            return;
        }
        out.push(idx);
        idx += 1;
    }
}

/// External name of synthetic node `v`.
pub fn synth_node_name(v: NodeId) -> String {
    format!("F{v:07}")
}

/// Label of synthetic partition `i`.
pub fn synth_partition_label(i: usize) -> String {
    format!("P{i:02}")
}

/// Generates the graph described by `spec`. Same spec ⇒ same graph.
pub fn synthesize(spec: &SyntheticSpec) -> Result<Graph> {
    spec.validate()?;
    let p = spec.partition_sizes.len();
    let n: usize = spec.node_count();

    // Partition i owns global ids [offsets[i], offsets[i+1]).
    let mut offsets = Vec::with_capacity(p + 1);
    offsets.push(0usize);
    for &s in &spec.partition_sizes {
        offsets.push(offsets.last().unwrap() + s);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut hits: Vec<u64> = Vec::new();

    // Intra-partition blocks: unordered pairs within each block.
    for ((&size, &base), &intra) in spec
        .partition_sizes
        .iter()
        .zip(&offsets)
        .zip(&spec.intra_p)
    {
        let s = size as u64;
        let base = base as u64;
        bernoulli_indices(s * (s - 1) / 2, intra, &mut rng, &mut hits);
        for &t in &hits {
            let (a, b) = pair_from_linear(t, s);
            edges.push(((base + a) as NodeId, (base + b) as NodeId));
        }
    }
    // Cross blocks: the s_i × s_j rectangle for each i < j.
    for i in 0..p {
        for j in (i + 1)..p {
            let (si, sj) = (
                spec.partition_sizes[i] as u64,
                spec.partition_sizes[j] as u64,
            );
            let (bi, bj) = (offsets[i] as u64, offsets[j] as u64);
            bernoulli_indices(si * sj, spec.cross_p[i][j], &mut rng, &mut hits);
            for &t in &hits {
                edges.push(((bi + t / sj) as NodeId, (bj + t % sj) as NodeId));
            }
        }
    }

    // Realized degrees feed the prominence attribute.
    let mut degree = vec![0u32; n];
    for &(a, b) in &edges {
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }

    let mut builder = GraphBuilder::new();
    let names: Vec<String> = (0..n as NodeId).map(synth_node_name).collect();
    for name in &names {
        builder.ensure_node(name);
    }
    for &(a, b) in &edges {
        builder.add_edge(&names[a as usize], &names[b as usize], 1)?;
    }
    for i in 0..p {
        let label = synth_partition_label(i);
        for name in &names[offsets[i]..offsets[i + 1]] {
            builder.set_partition(name, &label)?;
        }
    }
    builder.declare_attribute(SYNTH_ATTRIBUTE);
    for (name, &deg) in names.iter().zip(&degree) {
        let z: f64 = rng.sample(StandardNormal);
        let value = deg as f64 + spec.attribute_noise * z;
        builder.set_attribute(name, SYNTH_ATTRIBUTE, value)?;
    }
    builder.build()
}
