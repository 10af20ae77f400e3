//! Multi-scale analysis of partitioned networks.
//!
//! The crate builds undirected weighted graphs from affiliation (two-mode)
//! data or edge lists, computes node centrality at the full-network and
//! per-partition scope, summarizes topology (clustering, distances,
//! eccentricities, cross-partition ties), and quantifies how embedded each
//! partition is in the full network by comparing centrality rankings across
//! scopes.
//!
//! Heavy computations run through [`exec`], which parallelizes over rayon
//! when the `parallel` feature (default) is on and guarantees bitwise
//! reproducible results either way.

mod bfs;
pub mod centrality;
pub mod error;
pub mod exec;
pub mod graph;
pub mod ingest;
pub mod rankcompare;
pub mod report;
pub mod synth;
pub mod topology;
mod util;

pub use centrality::{
    betweenness_centrality, centrality, centrality_at_scope, centrality_on_giant,
    closeness_centrality, degree_centrality, eigenvector_centrality, CentralityOptions,
    CentralityVector, Measure, Scope,
};
pub use error::{Error, Result};
pub use ingest::{
    filter_interlocking, load_dataset, parse_affiliation, parse_edge_list, parse_metadata,
    project, AffiliationList, IngestOptions, IngestReport, IngestStats, InputMode, MetadataTable,
};
pub use graph::{
    build_graph, connected_components, extract_giant, induced_subgraph, ComponentLabeling, Graph,
    GraphBuilder, NodeId, Subgraph,
};
pub use rankcompare::{
    embeddedness_report, kendall_tau, persistence, ranking_dominance, spearman, top_k_overlap,
    EmbeddednessOptions, EmbeddednessRecord, RankVector, TopKOverlap,
};
pub use synth::{synthesize, SyntheticSpec, SYNTH_ATTRIBUTE};
pub use topology::{
    clustering_coefficient, distance_distribution, eccentricity_all, partition_topology,
    topology_report, transitivity, transnational_factor, DistanceDistribution, Eccentricities,
    PartitionTopologyRow, TopologyReport,
};
