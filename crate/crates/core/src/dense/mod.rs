//! Semi- and half-dense matchings, the anchored bipartite matching, robust
//! hubs in digraphs and the fractional-matching balancer.

mod balance;
mod bipartite;
mod certificate;
mod half;
mod hub;
mod semi;

pub use certificate::{
    mono_dense_subgraph, verify_dense_matching, witness_counts, DenseCheck, DenseMatchingCertificate, DenseMode,
    MonoDenseReport,
};
pub use semi::{find_semi_dense, SemiDenseOutcome, SemiDenseParams, SemiStep};
pub use bipartite::{anchored_bipartite_matching, anchored_degrees, maximum_matching_size, AnchoredMatching, BipartiteGraph};
pub use half::{half_dense_constant, half_dense_from_kgraph, semi_to_half, HalfDenseOutcome, HalfFromKGraph};
pub use hub::{disjoint_paths, robust_hub, vertex_connectivity, Digraph, PathPacking, RobustHub};
pub use balance::{balance_fractional_matching, BalanceInput, BalanceReport, FractionalMatching};
