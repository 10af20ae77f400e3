//! Node centrality: degree, closeness, betweenness, and eigenvector, at
//! full-network or induced-partition scope.
//!
//! All measures ignore edge weights (ties count as single links for path
//! purposes). Results come back as [`CentralityVector`]s: dense per-node
//! values with `None` outside the computed scope, plus a `normalized` flag.
//! Raw values follow the classical definitions; [`CentralityVector::normalize`]
//! rescales to a unit maximum, which preserves every ranking.
//!
//! Betweenness supports exact computation and seeded pivot sampling (the
//! estimator scales the sampled dependency sums by n/k, so `pivots = n`
//! reproduces the exact values bit-for-bit). All heavy loops run through
//! [`crate::exec`] and are bitwise reproducible at any thread count.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bfs::{Bfs, UNREACHED};
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{connected_components, extract_giant, induced_subgraph, Graph, NodeId};

/// The four supported centrality measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Degree,
    Closeness,
    Betweenness,
    Eigenvector,
}

impl Measure {
    /// All measures, in canonical order.
    pub const ALL: [Measure; 4] = [
        Measure::Degree,
        Measure::Closeness,
        Measure::Betweenness,
        Measure::Eigenvector,
    ];

    /// Stable lowercase name used in CSV/JSON output and CLI flags.
    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Closeness => "closeness",
            Measure::Betweenness => "betweenness",
            Measure::Eigenvector => "eigenvector",
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "degree" => Ok(Measure::Degree),
            "closeness" => Ok(Measure::Closeness),
            "betweenness" => Ok(Measure::Betweenness),
            "eigenvector" => Ok(Measure::Eigenvector),
            other => Err(format!(
                "unknown measure '{other}' (expected degree, closeness, betweenness, or eigenvector)"
            )),
        }
    }
}

/// The node set a centrality vector was computed over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scope {
    /// The graph the computation ran on (the full network, by convention its
    /// giant component in pipeline output).
    Full,
    /// The giant component of the subgraph induced by one partition label.
    Partition(String),
}

impl std::fmt::Display for Scope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scope::Full => f.write_str("full"),
            Scope::Partition(label) => f.write_str(label),
        }
    }
}

/// Tuning knobs shared by all measures.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralityOptions {
    /// Betweenness pivot count: `None` computes exactly, `Some(k)` samples k
    /// sources. (`Some(n)` is identical to exact.)
    pub pivots: Option<usize>,
    /// Seed for pivot selection.
    pub seed: u64,
    /// Eigenvector convergence threshold on the max per-node change.
    pub tol: f64,
    /// Eigenvector iteration cap.
    pub max_iters: usize,
}

impl Default for CentralityOptions {
    fn default() -> Self {
        Self {
            pivots: None,
            seed: 42,
            tol: 1e-10,
            max_iters: 1000,
        }
    }
}

/// Per-node centrality values over a scope.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralityVector {
    pub measure: Measure,
    pub scope: Scope,
    /// Dense values, `None` outside the scope. Length = node count of the
    /// graph the vector is addressed against.
    values: Vec<Option<f64>>,
    /// Whether values were rescaled to a unit maximum.
    pub normalized: bool,
    /// False only when eigenvector iteration hit its cap before `tol`.
    pub converged: bool,
    /// Pivot count actually used (betweenness estimates only).
    pub pivots_used: Option<usize>,
}

impl CentralityVector {
    fn new(measure: Measure, values: Vec<Option<f64>>) -> Self {
        Self {
            measure,
            scope: Scope::Full,
            values,
            normalized: false,
            converged: true,
            pivots_used: None,
        }
    }

    /// Dense per-node values (`None` outside scope).
    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    /// Value for one node.
    pub fn value(&self, v: NodeId) -> Option<f64> {
        self.values[v as usize]
    }

    /// Nodes inside the scope, ascending.
    pub fn scope_nodes(&self) -> Vec<NodeId> {
        (0..self.values.len() as NodeId)
            .filter(|&v| self.values[v as usize].is_some())
            .collect()
    }

    /// Number of in-scope nodes.
    pub fn scope_len(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    /// Maximum in-scope value.
    pub fn max_value(&self) -> Option<f64> {
        self.values
            .iter()
            .flatten()
            .copied()
            .fold(None, |m, x| Some(m.map_or(x, |m: f64| m.max(x))))
    }

    /// Rescales values so the maximum is exactly 1.
    ///
    /// A vector whose maximum is zero (possible for betweenness on tiny
    /// graphs) is returned unchanged with `normalized` still false: there is
    /// no scale that satisfies the unit-maximum contract.
    pub fn normalize(mut self) -> Self {
        match self.max_value() {
            Some(m) if m > 0.0 => {
                for v in self.values.iter_mut().flatten() {
                    *v /= m;
                }
                self.normalized = true;
                self
            }
            _ => self,
        }
    }

    /// Re-addresses a vector computed on a subgraph to its parent graph:
    /// local node `i` maps to `to_parent[i]`, all other parent nodes `None`.
    pub fn lift_to_parent(&self, parent_len: usize, to_parent: &[NodeId]) -> Self {
        assert_eq!(self.values.len(), to_parent.len());
        let mut values = vec![None; parent_len];
        for (i, val) in self.values.iter().enumerate() {
            values[to_parent[i] as usize] = *val;
        }
        Self {
            measure: self.measure,
            scope: self.scope.clone(),
            values,
            normalized: self.normalized,
            converged: self.converged,
            pivots_used: self.pivots_used,
        }
    }
}

/// Degree centrality: deg(v) / (n − 1).
pub fn degree_centrality(g: &Graph) -> Result<CentralityVector> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooSmall {
            context: "degree_centrality",
            needed: 2,
            got: n,
        });
    }
    let denom = (n - 1) as f64;
    let values = (0..n as NodeId)
        .map(|v| Some(g.degree(v) as f64 / denom))
        .collect();
    Ok(CentralityVector::new(Measure::Degree, values))
}

pub(crate) fn require_connected(g: &Graph, context: &'static str) -> Result<()> {
    if connected_components(g).count() != 1 {
        return Err(Error::Disconnected { context });
    }
    Ok(())
}

/// Closeness centrality: 1 / Σ_w d(v, w), defined on connected graphs only.
pub fn closeness_centrality(g: &Graph) -> Result<CentralityVector> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooSmall {
            context: "closeness_centrality",
            needed: 2,
            got: n,
        });
    }
    require_connected(g, "closeness_centrality")?;
    let sources: Vec<NodeId> = (0..n as NodeId).collect();
    let values = exec::ordered_map(
        &sources,
        || Bfs::new(n),
        |bfs, &s| {
            let summary = bfs.run(g, s);
            Some(1.0 / summary.dist_sum as f64)
        },
    );
    Ok(CentralityVector::new(Measure::Closeness, values))
}

/// Scratch for one Brandes source sweep.
struct BrandesScratch {
    dist: Vec<u32>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<NodeId>,
}

impl BrandesScratch {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![UNREACHED; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    /// Adds source `s`'s pair dependencies into `acc` (Brandes accumulation;
    /// predecessor sets recovered by level rescanning).
    fn accumulate(&mut self, g: &Graph, s: NodeId, acc: &mut [f64]) {
        self.dist.fill(UNREACHED);
        self.sigma.fill(0.0);
        self.delta.fill(0.0);
        self.order.clear();

        self.dist[s as usize] = 0;
        self.sigma[s as usize] = 1.0;
        self.order.push(s);
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            let dv = self.dist[v as usize];
            for &w in g.neighbors(v) {
                let wi = w as usize;
                if self.dist[wi] == UNREACHED {
                    self.dist[wi] = dv + 1;
                    self.order.push(w);
                }
                if self.dist[wi] == dv + 1 {
                    self.sigma[wi] += self.sigma[v as usize];
                }
            }
        }

        for &w in self.order.iter().rev() {
            let wi = w as usize;
            let dw = self.dist[wi];
            if dw == 0 {
                continue;
            }
            let coeff = (1.0 + self.delta[wi]) / self.sigma[wi];
            for &p in g.neighbors(w) {
                let pi = p as usize;
                if self.dist[pi] + 1 == dw {
                    self.delta[pi] += self.sigma[pi] * coeff;
                }
            }
            acc[wi] += self.delta[wi];
        }
    }
}

/// Betweenness centrality over unordered node pairs, endpoints excluded.
///
/// With `pivots = None` every node is a source (exact). With `Some(k)`,
/// k distinct sources are drawn with the seeded generator and dependency
/// sums are scaled by n/k — an unbiased estimate which at `k = n` equals
/// the exact computation bit-for-bit.
pub fn betweenness_centrality(g: &Graph, pivots: Option<usize>, seed: u64) -> Result<CentralityVector> {
    let n = g.node_count();
    let sources: Vec<NodeId> = match pivots {
        None => (0..n as NodeId).collect(),
        Some(k) => {
            if k > n {
                return Err(Error::TooManyPivots { pivots: k, n });
            }
            sample_distinct(n, k, seed)
        }
    };
    let scale = match pivots {
        Some(k) if k > 0 => n as f64 / k as f64,
        _ => 1.0,
    };

    let acc = exec::chunked_accumulate(
        &sources,
        n,
        || BrandesScratch::new(n),
        |scratch, &s, acc| scratch.accumulate(g, s, acc),
    );
    // Each unordered pair is seen from both endpoints in the full sum.
    let values = acc.into_iter().map(|x| Some(x * scale / 2.0)).collect();
    let mut out = CentralityVector::new(Measure::Betweenness, values);
    out.pivots_used = pivots;
    Ok(out)
}

/// Floyd's algorithm: k distinct values from 0..n, returned sorted.
fn sample_distinct(n: usize, k: usize, seed: u64) -> Vec<NodeId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: HashSet<usize> = HashSet::with_capacity(k);
    for j in (n - k)..n {
        let t = rng.random_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut out: Vec<NodeId> = chosen.into_iter().map(|v| v as NodeId).collect();
    out.sort_unstable();
    out
}

/// Eigenvector centrality by power iteration.
///
/// Starts from values proportional to degree and repeatedly spreads each
/// node's value over its neighbors, rescaling to a unit maximum after every
/// sweep and stopping when the largest per-node change drops to `tol`. The
/// update is damped (each node keeps its own value before adding its
/// neighbors') so the iteration converges on bipartite structures — star and
/// path graphs oscillate forever under the undamped spread — while leaving
/// the limiting direction, the principal eigenvector of the adjacency
/// matrix, unchanged.
pub fn eigenvector_centrality(g: &Graph, tol: f64, max_iters: usize) -> Result<CentralityVector> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooSmall {
            context: "eigenvector_centrality",
            needed: 2,
            got: n,
        });
    }
    require_connected(g, "eigenvector_centrality")?;

    let nodes: Vec<NodeId> = (0..n as NodeId).collect();
    let mut x: Vec<f64> = nodes.iter().map(|&v| g.degree(v) as f64).collect();
    let max0 = x.iter().cloned().fold(0.0f64, f64::max);
    for v in &mut x {
        *v /= max0;
    }

    let mut converged = false;
    for _ in 0..max_iters {
        let mut y = exec::ordered_map(
            &nodes,
            || (),
            |_, &v| {
                let mut s = x[v as usize];
                for &w in g.neighbors(v) {
                    s += x[w as usize];
                }
                s
            },
        );
        let max = y.iter().cloned().fold(0.0f64, f64::max);
        for v in &mut y {
            *v /= max;
        }
        let diff = y
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        x = y;
        if diff <= tol {
            converged = true;
            break;
        }
    }

    let mut out = CentralityVector::new(
        Measure::Eigenvector,
        x.into_iter().map(Some).collect(),
    );
    out.converged = converged;
    Ok(out)
}

/// Computes `measure` over all of `g`.
pub fn centrality(g: &Graph, measure: Measure, opts: &CentralityOptions) -> Result<CentralityVector> {
    match measure {
        Measure::Degree => degree_centrality(g),
        Measure::Closeness => closeness_centrality(g),
        Measure::Betweenness => betweenness_centrality(g, opts.pivots, opts.seed),
        Measure::Eigenvector => eigenvector_centrality(g, opts.tol, opts.max_iters),
    }
}

/// Computes `measure` on the giant component of `g`, re-addressed to `g`'s
/// node ids with `None` outside the giant component.
pub fn centrality_on_giant(g: &Graph, measure: Measure, opts: &CentralityOptions) -> Result<CentralityVector> {
    let giant = extract_giant(g)?;
    let scoped_opts = clamp_pivots(opts, giant.graph.node_count());
    let local = centrality(&giant.graph, measure, &scoped_opts)?;
    Ok(local.lift_to_parent(g.node_count(), &giant.to_parent))
}

/// Computes `measure` on the giant component of the subgraph induced by
/// partition `label`, re-addressed to `g`'s node ids. Partition members
/// outside that giant component (and every other node) get `None`.
pub fn centrality_at_scope(
    g: &Graph,
    label: &str,
    measure: Measure,
    opts: &CentralityOptions,
) -> Result<CentralityVector> {
    let induced = induced_subgraph(g, label)?;
    if induced.graph.node_count() == 0 {
        return Err(Error::TooSmall {
            context: "centrality_at_scope",
            needed: 2,
            got: 0,
        });
    }
    let giant = extract_giant(&induced.graph)?;
    let gn = giant.graph.node_count();
    if gn < 2 {
        return Err(Error::TooSmall {
            context: "centrality_at_scope",
            needed: 2,
            got: gn,
        });
    }
    let scoped_opts = clamp_pivots(opts, gn);
    let mut local = centrality(&giant.graph, measure, &scoped_opts)?;
    local.scope = Scope::Partition(label.to_string());
    // Compose the two mappings: giant-local -> induced -> parent.
    let to_parent: Vec<NodeId> = giant
        .to_parent
        .iter()
        .map(|&i| induced.to_parent[i as usize])
        .collect();
    Ok(local.lift_to_parent(g.node_count(), &to_parent))
}

/// At partition scope a global pivot budget may exceed the subgraph size;
/// cap it there (the estimate becomes exact) instead of erroring.
fn clamp_pivots(opts: &CentralityOptions, n: usize) -> CentralityOptions {
    let mut o = opts.clone();
    if let Some(k) = o.pivots {
        o.pivots = Some(k.min(n));
    }
    o
}
