//! Breadth-first-search kernels shared by the centrality and topology code.
//!
//! All kernels operate on unweighted hops (edge weights are tie
//! multiplicities, not lengths). Scratch buffers are reusable across calls so
//! per-source loops allocate nothing; `PairDistance` additionally uses epoch
//! stamping so each query costs only the nodes it actually touches.

use crate::graph::{Graph, NodeId};

/// Distance sentinel for unreached nodes.
pub(crate) const UNREACHED: u32 = u32::MAX;

/// Reusable single-source BFS state.
pub(crate) struct Bfs {
    pub dist: Vec<u32>,
    queue: Vec<NodeId>,
}

/// Aggregates of one BFS run.
pub(crate) struct BfsSummary {
    /// Maximum finite distance from the source (its eccentricity within its
    /// component).
    pub max_dist: u32,
    /// Sum of finite distances from the source.
    pub dist_sum: u64,
    /// Number of reached nodes, including the source.
    pub reached: usize,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Self {
            dist: vec![UNREACHED; n],
            queue: Vec::with_capacity(n),
        }
    }

    /// Runs a full BFS from `src`, leaving distances in `self.dist`
    /// (`UNREACHED` outside the component).
    pub fn run(&mut self, g: &Graph, src: NodeId) -> BfsSummary {
        self.dist.fill(UNREACHED);
        self.queue.clear();
        self.dist[src as usize] = 0;
        self.queue.push(src);
        let mut head = 0;
        let mut max_dist = 0;
        let mut dist_sum = 0u64;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            let dv = self.dist[v as usize];
            max_dist = dv;
            dist_sum += dv as u64;
            for &w in g.neighbors(v) {
                if self.dist[w as usize] == UNREACHED {
                    self.dist[w as usize] = dv + 1;
                    self.queue.push(w);
                }
            }
        }
        BfsSummary {
            max_dist,
            dist_sum,
            reached: self.queue.len(),
        }
    }
}

/// Reusable bidirectional BFS for single-pair shortest distances.
///
/// Expands the smaller frontier level by level from each endpoint and stops
/// once no undiscovered meeting can beat the best one found. Epoch stamping
/// makes repeated queries O(visited), not O(n).
pub(crate) struct PairDistance {
    dist_a: Vec<u32>,
    dist_b: Vec<u32>,
    stamp_a: Vec<u32>,
    stamp_b: Vec<u32>,
    front_a: Vec<NodeId>,
    front_b: Vec<NodeId>,
    next: Vec<NodeId>,
    epoch: u32,
}

impl PairDistance {
    pub fn new(n: usize) -> Self {
        Self {
            dist_a: vec![0; n],
            dist_b: vec![0; n],
            stamp_a: vec![0; n],
            stamp_b: vec![0; n],
            front_a: Vec::new(),
            front_b: Vec::new(),
            next: Vec::new(),
            epoch: 0,
        }
    }

    /// Exact hop distance between `u` and `v`, or `None` if disconnected.
    pub fn distance(&mut self, g: &Graph, u: NodeId, v: NodeId) -> Option<u32> {
        if u == v {
            return Some(0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            // Wrapped: stale stamps could collide, so reset them all once.
            self.stamp_a.fill(0);
            self.stamp_b.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.stamp_a[u as usize] = epoch;
        self.dist_a[u as usize] = 0;
        self.stamp_b[v as usize] = epoch;
        self.dist_b[v as usize] = 0;
        self.front_a.clear();
        self.front_a.push(u);
        self.front_b.clear();
        self.front_b.push(v);
        let (mut depth_a, mut depth_b) = (0u32, 0u32);
        let mut best = u32::MAX;

        loop {
            if best <= depth_a + depth_b {
                return Some(best);
            }
            if self.front_a.is_empty() && self.front_b.is_empty() {
                return (best != u32::MAX).then_some(best);
            }
            // Expand the cheaper nonempty side one full level.
            let expand_a = !self.front_a.is_empty()
                && (self.front_b.is_empty() || self.front_a.len() <= self.front_b.len());
            self.next.clear();
            if expand_a {
                for &x in &self.front_a {
                    for &nb in g.neighbors(x) {
                        let i = nb as usize;
                        if self.stamp_b[i] == epoch {
                            best = best.min(depth_a + 1 + self.dist_b[i]);
                        }
                        if self.stamp_a[i] != epoch {
                            self.stamp_a[i] = epoch;
                            self.dist_a[i] = depth_a + 1;
                            self.next.push(nb);
                        }
                    }
                }
                std::mem::swap(&mut self.front_a, &mut self.next);
                depth_a += 1;
            } else {
                for &x in &self.front_b {
                    for &nb in g.neighbors(x) {
                        let i = nb as usize;
                        if self.stamp_a[i] == epoch {
                            best = best.min(depth_b + 1 + self.dist_a[i]);
                        }
                        if self.stamp_b[i] != epoch {
                            self.stamp_b[i] = epoch;
                            self.dist_b[i] = depth_b + 1;
                            self.next.push(nb);
                        }
                    }
                }
                std::mem::swap(&mut self.front_b, &mut self.next);
                depth_b += 1;
            }
        }
    }
}
