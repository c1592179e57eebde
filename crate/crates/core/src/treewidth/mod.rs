//! Graphs of bounded treewidth: decompositions, the blown-up universal
//! graphs and the embedding into them.

pub mod decomposition;
pub mod embed;
pub mod host;

pub use decomposition::{generate_partial_ktree, normalize_decomposition, TreeDecomposition};
pub use embed::{embed_graph_full_tw, embed_graph_tw, host_view, validate_tw_embedding};
pub use host::{
    blowup_accounting_bound, build_universal_tw, build_universal_tw_with, count_edges_tw, lower_bound_edges, BlownAddress,
    BlownLayout, T3Reading, TwHostGraph,
};
