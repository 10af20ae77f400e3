//! Undirected weighted graph in compressed sparse row form.
//!
//! Nodes carry a stable external string id, an optional partition label, and
//! optional named numeric attributes. Edge weights are tie multiplicities
//! (u32, at least 1); parallel edge insertions accumulate into one weighted
//! edge. Self-loops are rejected. Node ids are dense `u32` indices assigned
//! in first-seen order, so identical input always yields an identical graph.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

/// Dense node index, valid for the graph that produced it.
pub type NodeId = u32;

/// Immutable undirected weighted graph with node metadata.
#[derive(Debug, Clone)]
pub struct Graph {
    /// CSR row offsets; `offsets[v]..offsets[v+1]` spans v's adjacency.
    offsets: Vec<usize>,
    /// Neighbor lists, sorted ascending within each row.
    neighbors: Vec<NodeId>,
    /// Edge weight parallel to `neighbors` (each undirected edge appears twice).
    weights: Vec<u32>,
    /// External string id per node.
    symbols: Vec<String>,
    /// Reverse lookup external id -> node.
    index: HashMap<String, NodeId>,
    /// Interned partition label per node (index into `partition_names`).
    partition_of: Vec<Option<u32>>,
    /// Distinct partition labels, sorted ascending.
    partition_names: Vec<String>,
    /// Named per-node numeric attributes.
    attributes: BTreeMap<String, Vec<Option<f64>>>,
}

impl Graph {
    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.symbols.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Total tie multiplicity over all edges.
    pub fn total_weight(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum::<u64>() / 2
    }

    /// Degree (number of distinct neighbors) of `v`.
    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    /// Neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Weights parallel to [`Graph::neighbors`].
    pub fn neighbor_weights(&self, v: NodeId) -> &[u32] {
        &self.weights[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Whether an edge `u -- v` exists.
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Weight of edge `u -- v`, if present.
    pub fn edge_weight(&self, u: NodeId, v: NodeId) -> Option<u32> {
        self.neighbors(u)
            .binary_search(&v)
            .ok()
            .map(|i| self.neighbor_weights(u)[i])
    }

    /// Iterates each undirected edge once as `(u, v, weight)` with `u < v`,
    /// ordered by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, u32)> + '_ {
        (0..self.node_count() as NodeId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .zip(self.neighbor_weights(u))
                .filter(move |(&v, _)| u < v)
                .map(move |(&v, &w)| (u, v, w))
        })
    }

    /// External string id of `v`.
    pub fn external_id(&self, v: NodeId) -> &str {
        &self.symbols[v as usize]
    }

    /// Node with external id `id`, if present.
    pub fn node(&self, id: &str) -> Option<NodeId> {
        self.index.get(id).copied()
    }

    /// Partition label of `v`, if assigned.
    pub fn partition(&self, v: NodeId) -> Option<&str> {
        self.partition_of[v as usize].map(|i| self.partition_names[i as usize].as_str())
    }

    /// Distinct partition labels present in the graph, sorted ascending.
    pub fn partition_labels(&self) -> &[String] {
        &self.partition_names
    }

    /// Interned index of `v`'s partition label within `partition_labels()`.
    pub(crate) fn partition_idx(&self, v: NodeId) -> Option<u32> {
        self.partition_of[v as usize]
    }

    /// Nodes carrying partition `label`, ascending by node id.
    pub fn partition_members(&self, label: &str) -> Result<Vec<NodeId>> {
        let want = self
            .partition_names
            .binary_search_by(|s| s.as_str().cmp(label))
            .map_err(|_| Error::UnknownPartition(label.to_string()))? as u32;
        Ok((0..self.node_count() as NodeId)
            .filter(|&v| self.partition_of[v as usize] == Some(want))
            .collect())
    }

    /// Count of nodes with no partition label.
    pub fn unlabeled_count(&self) -> usize {
        self.partition_of.iter().filter(|p| p.is_none()).count()
    }

    /// Per-node values of attribute `name`, if it exists.
    pub fn attribute(&self, name: &str) -> Option<&[Option<f64>]> {
        self.attributes.get(name).map(Vec::as_slice)
    }

    /// Attribute names, sorted ascending.
    pub fn attribute_names(&self) -> impl Iterator<Item = &str> {
        self.attributes.keys().map(String::as_str)
    }
}

/// Incremental graph constructor keyed by external string ids.
///
/// Nodes are created on first mention and numbered in that order. Repeated
/// `add_edge` calls for the same pair accumulate multiplicity.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    index: HashMap<String, NodeId>,
    symbols: Vec<String>,
    edge_mult: HashMap<(NodeId, NodeId), u32>,
    partition_of: HashMap<NodeId, String>,
    attributes: BTreeMap<String, HashMap<NodeId, f64>>,
}

impl GraphBuilder {
    /// Empty builder.
    pub fn new() -> Self {
        Self::default()
    }

    /// Node for `id`, creating it if unseen.
    pub fn ensure_node(&mut self, id: &str) -> NodeId {
        if let Some(&v) = self.index.get(id) {
            return v;
        }
        let v = self.symbols.len() as NodeId;
        self.symbols.push(id.to_string());
        self.index.insert(id.to_string(), v);
        v
    }

    /// Whether `id` has been mentioned.
    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    /// Number of nodes mentioned so far.
    pub fn node_count(&self) -> usize {
        self.symbols.len()
    }

    /// Adds `multiplicity` parallel ties between `a` and `b`.
    pub fn add_edge(&mut self, a: &str, b: &str, multiplicity: u32) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        if multiplicity == 0 {
            return Err(Error::BadMultiplicity {
                a: a.to_string(),
                b: b.to_string(),
                got: 0,
            });
        }
        let u = self.ensure_node(a);
        let v = self.ensure_node(b);
        let key = (u.min(v), u.max(v));
        let slot = self.edge_mult.entry(key).or_insert(0);
        *slot = slot.checked_add(multiplicity).ok_or_else(|| Error::WeightOverflow {
            a: a.to_string(),
            b: b.to_string(),
        })?;
        Ok(())
    }

    /// Assigns partition `label` to an existing node.
    pub fn set_partition(&mut self, id: &str, label: &str) -> Result<()> {
        let v = *self
            .index
            .get(id)
            .ok_or_else(|| Error::UnknownPartition(format!("{label}: node '{id}' not in graph")))?;
        self.partition_of.insert(v, label.to_string());
        Ok(())
    }

    /// Registers attribute `name` so the column exists even when no node
    /// receives a value.
    pub fn declare_attribute(&mut self, name: &str) {
        self.attributes.entry(name.to_string()).or_default();
    }

    /// Sets numeric attribute `name` on an existing node.
    pub fn set_attribute(&mut self, id: &str, name: &str, value: f64) -> Result<()> {
        let v = *self
            .index
            .get(id)
            .ok_or_else(|| Error::UnknownAttribute(format!("{name}: node '{id}' not in graph")))?;
        self.attributes
            .entry(name.to_string())
            .or_default()
            .insert(v, value);
        Ok(())
    }

    /// Finalizes into an immutable CSR graph.
    pub fn build(self) -> Result<Graph> {
        let n = self.symbols.len();
        let mut deg = vec![0usize; n];
        for &(u, v) in self.edge_mult.keys() {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap();
        let mut neighbors = vec![0 as NodeId; total];
        let mut weights = vec![0u32; total];
        let mut cursor = offsets[..n].to_vec();
        let mut sorted_edges: Vec<(NodeId, NodeId, u32)> = self
            .edge_mult
            .into_iter()
            .map(|((u, v), w)| (u, v, w))
            .collect();
        sorted_edges.sort_unstable();
        for (u, v, w) in sorted_edges {
            neighbors[cursor[u as usize]] = v;
            weights[cursor[u as usize]] = w;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            weights[cursor[v as usize]] = w;
            cursor[v as usize] += 1;
        }
        // Rows received (neighbor, weight) pairs in ascending u order for the
        // forward direction but arbitrary order overall; sort each row.
        for v in 0..n {
            let (lo, hi) = (offsets[v], offsets[v + 1]);
            let mut row: Vec<(NodeId, u32)> = neighbors[lo..hi]
                .iter()
                .copied()
                .zip(weights[lo..hi].iter().copied())
                .collect();
            row.sort_unstable();
            for (i, (nb, w)) in row.into_iter().enumerate() {
                neighbors[lo + i] = nb;
                weights[lo + i] = w;
            }
        }

        let mut partition_names: Vec<String> = self
            .partition_of
            .values()
            .cloned()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        partition_names.sort_unstable();
        let intern: HashMap<&str, u32> = partition_names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u32))
            .collect();
        let mut partition_of = vec![None; n];
        for (v, label) in &self.partition_of {
            partition_of[*v as usize] = Some(intern[label.as_str()]);
        }

        let attributes = self
            .attributes
            .into_iter()
            .map(|(name, values)| {
                let mut col = vec![None; n];
                for (v, x) in values {
                    col[v as usize] = Some(x);
                }
                (name, col)
            })
            .collect();

        Ok(Graph {
            offsets,
            neighbors,
            weights,
            symbols: self.symbols,
            index: self.index,
            partition_of,
            partition_names,
            attributes,
        })
    }
}

/// Builds a graph from `(a, b, multiplicity)` triples of external ids.
pub fn build_graph<I, S>(edges: I) -> Result<Graph>
where
    I: IntoIterator<Item = (S, S, u32)>,
    S: AsRef<str>,
{
    let mut b = GraphBuilder::new();
    for (x, y, w) in edges {
        b.add_edge(x.as_ref(), y.as_ref(), w)?;
    }
    b.build()
}

/// A graph restricted to a node subset, with the mapping back to its parent.
#[derive(Debug, Clone)]
pub struct Subgraph {
    /// The restricted graph (its own dense node ids).
    pub graph: Graph,
    /// `to_parent[local]` is the parent-graph id of local node `local`.
    pub to_parent: Vec<NodeId>,
}

/// Connected-component labeling of a graph.
#[derive(Debug, Clone)]
pub struct ComponentLabeling {
    /// Component id per node; components are numbered in discovery order.
    pub component_id: Vec<u32>,
    /// Node count per component id.
    pub sizes: Vec<usize>,
}

impl ComponentLabeling {
    /// Number of components.
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Id of the largest component (lowest id wins ties).
    pub fn giant_id(&self) -> Option<u32> {
        (0..self.sizes.len())
            .max_by_key(|&i| (self.sizes[i], std::cmp::Reverse(i)))
            .map(|i| i as u32)
    }

    /// Histogram of component sizes: size -> number of components.
    pub fn size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &s in &self.sizes {
            *h.entry(s).or_insert(0) += 1;
        }
        h
    }
}

/// Labels connected components with iterative breadth-first search.
pub fn connected_components(g: &Graph) -> ComponentLabeling {
    let n = g.node_count();
    const UNSEEN: u32 = u32::MAX;
    let mut component_id = vec![UNSEEN; n];
    let mut sizes = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n as NodeId {
        if component_id[start as usize] != UNSEEN {
            continue;
        }
        let cid = sizes.len() as u32;
        let mut size = 0usize;
        component_id[start as usize] = cid;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in g.neighbors(v) {
                if component_id[w as usize] == UNSEEN {
                    component_id[w as usize] = cid;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    ComponentLabeling { component_id, sizes }
}

/// Restricts `g` to `nodes` (must be sorted ascending, no duplicates),
/// keeping exactly the edges with both endpoints inside.
pub fn subgraph_from_nodes(g: &Graph, nodes: &[NodeId]) -> Subgraph {
    let n = g.node_count();
    const OUT: u32 = u32::MAX;
    let mut local_of = vec![OUT; n];
    for (i, &v) in nodes.iter().enumerate() {
        debug_assert!(i == 0 || nodes[i - 1] < v, "nodes must be sorted and unique");
        local_of[v as usize] = i as u32;
    }

    let mut offsets = Vec::with_capacity(nodes.len() + 1);
    offsets.push(0usize);
    let mut neighbors = Vec::new();
    let mut weights = Vec::new();
    for &p in nodes {
        for (&nb, &w) in g.neighbors(p).iter().zip(g.neighbor_weights(p)) {
            let loc = local_of[nb as usize];
            if loc != OUT {
                neighbors.push(loc);
                weights.push(w);
            }
        }
        offsets.push(neighbors.len());
    }

    let symbols: Vec<String> = nodes.iter().map(|&p| g.external_id(p).to_string()).collect();
    let index = symbols
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i as NodeId))
        .collect();

    // Re-intern partition labels over the surviving nodes only.
    let mut labels: Vec<String> = nodes
        .iter()
        .filter_map(|&p| g.partition(p).map(str::to_string))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    labels.sort_unstable();
    let intern: HashMap<&str, u32> = labels
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i as u32))
        .collect();
    let partition_of = nodes
        .iter()
        .map(|&p| g.partition(p).map(|l| intern[l]))
        .collect();

    let attributes = g
        .attributes
        .iter()
        .map(|(name, col)| {
            (
                name.clone(),
                nodes.iter().map(|&p| col[p as usize]).collect(),
            )
        })
        .collect();

    Subgraph {
        graph: Graph {
            offsets,
            neighbors,
            weights,
            symbols,
            index,
            partition_of,
            partition_names: labels,
            attributes,
        },
        to_parent: nodes.to_vec(),
    }
}

/// Subgraph induced by the nodes carrying partition `label`.
pub fn induced_subgraph(g: &Graph, label: &str) -> Result<Subgraph> {
    let members = g.partition_members(label)?;
    Ok(subgraph_from_nodes(g, &members))
}

/// Extracts the largest connected component as a subgraph.
pub fn extract_giant(g: &Graph) -> Result<Subgraph> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let labeling = connected_components(g);
    let giant = labeling.giant_id().expect("non-empty graph has a component");
    let nodes: Vec<NodeId> = (0..g.node_count() as NodeId)
        .filter(|&v| labeling.component_id[v as usize] == giant)
        .collect();
    Ok(subgraph_from_nodes(g, &nodes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_plus_isolate() -> Graph {
        // a-b, b-c, a-c triangle and a d-e pair.
        build_graph([
            ("a", "b", 1),
            ("b", "c", 2),
            ("a", "c", 1),
            ("d", "e", 3),
        ])
        .unwrap()
    }

    #[test]
    fn builds_csr_with_sorted_rows() {
        let g = triangle_plus_isolate();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.total_weight(), 7);
        let a = g.node("a").unwrap();
        let b = g.node("b").unwrap();
        let c = g.node("c").unwrap();
        assert_eq!(g.neighbors(a), &[b, c]);
        assert_eq!(g.degree(a), 2);
        assert_eq!(g.edge_weight(b, c), Some(2));
        assert_eq!(g.edge_weight(c, b), Some(2));
        assert!(!g.has_edge(a, g.node("d").unwrap()));
    }

    #[test]
    fn parallel_insertions_accumulate() {
        let g = build_graph([("x", "y", 1), ("y", "x", 4)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(
            g.edge_weight(g.node("x").unwrap(), g.node("y").unwrap()),
            Some(5)
        );
    }

    #[test]
    fn rejects_self_loop_and_zero_multiplicity() {
        assert!(matches!(
            build_graph([("a", "a", 1)]),
            Err(Error::SelfLoop(_))
        ));
        assert!(matches!(
            build_graph([("a", "b", 0)]),
            Err(Error::BadMultiplicity { .. })
        ));
    }

    #[test]
    fn node_ids_follow_first_mention() {
        let g = build_graph([("n2", "n1", 1), ("n1", "n0", 1)]).unwrap();
        assert_eq!(g.external_id(0), "n2");
        assert_eq!(g.external_id(1), "n1");
        assert_eq!(g.external_id(2), "n0");
    }

    #[test]
    fn components_and_giant() {
        let g = triangle_plus_isolate();
        let labeling = connected_components(&g);
        assert_eq!(labeling.count(), 2);
        assert_eq!(labeling.sizes, vec![3, 2]);
        assert_eq!(labeling.giant_id(), Some(0));
        assert_eq!(
            labeling.size_histogram(),
            BTreeMap::from([(3usize, 1usize), (2, 1)])
        );

        let giant = extract_giant(&g).unwrap();
        assert_eq!(giant.graph.node_count(), 3);
        assert_eq!(giant.graph.edge_count(), 3);
        let names: Vec<&str> = giant
            .to_parent
            .iter()
            .map(|&p| g.external_id(p))
            .collect();
        assert_eq!(names, vec!["a", "b", "c"]);
        // Weights survive extraction.
        let b = giant.graph.node("b").unwrap();
        let c = giant.graph.node("c").unwrap();
        assert_eq!(giant.graph.edge_weight(b, c), Some(2));
    }

    #[test]
    fn giant_tie_breaks_to_first_component() {
        // Two components of equal size; the one discovered first wins.
        let g = build_graph([("a", "b", 1), ("c", "d", 1)]).unwrap();
        let giant = extract_giant(&g).unwrap();
        let names: Vec<&str> = giant
            .to_parent
            .iter()
            .map(|&p| g.external_id(p))
            .collect();
        assert_eq!(names, vec!["a", "b"]);
    }

    #[test]
    fn partitions_and_attributes_restrict() {
        let mut b = GraphBuilder::new();
        b.add_edge("a", "b", 1).unwrap();
        b.add_edge("b", "c", 1).unwrap();
        b.add_edge("c", "d", 1).unwrap();
        b.set_partition("a", "P1").unwrap();
        b.set_partition("b", "P0").unwrap();
        b.set_partition("c", "P0").unwrap();
        b.set_attribute("a", "size", 10.0).unwrap();
        b.set_attribute("c", "size", 30.0).unwrap();
        let g = b.build().unwrap();

        assert_eq!(g.partition_labels(), &["P0".to_string(), "P1".to_string()]);
        assert_eq!(g.partition(g.node("a").unwrap()), Some("P1"));
        assert_eq!(g.partition(g.node("d").unwrap()), None);
        assert_eq!(g.unlabeled_count(), 1);
        let members = g.partition_members("P0").unwrap();
        let names: Vec<&str> = members.iter().map(|&v| g.external_id(v)).collect();
        assert_eq!(names, vec!["b", "c"]);
        assert!(matches!(
            g.partition_members("XX"),
            Err(Error::UnknownPartition(_))
        ));

        let sub = induced_subgraph(&g, "P0").unwrap();
        assert_eq!(sub.graph.node_count(), 2);
        assert_eq!(sub.graph.edge_count(), 1); // only b--c survives
        assert_eq!(sub.graph.partition_labels(), &["P0".to_string()]);
        let size = sub.graph.attribute("size").unwrap();
        assert_eq!(size, &[None, Some(30.0)]);
    }

    #[test]
    fn empty_graph_errors_on_giant() {
        let g = GraphBuilder::new().build().unwrap();
        assert!(matches!(extract_giant(&g), Err(Error::EmptyGraph)));
    }

    #[test]
    fn edges_iterator_is_sorted_and_complete() {
        let g = triangle_plus_isolate();
        let edges: Vec<(String, String, u32)> = g
            .edges()
            .map(|(u, v, w)| {
                (
                    g.external_id(u).to_string(),
                    g.external_id(v).to_string(),
                    w,
                )
            })
            .collect();
        assert_eq!(
            edges,
            vec![
                ("a".into(), "b".into(), 1),
                ("a".into(), "c".into(), 1),
                ("b".into(), "c".into(), 2),
                ("d".into(), "e".into(), 3),
            ]
        );
    }
}
