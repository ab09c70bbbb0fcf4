//! From k-partite k-graphs to edge-coloured multigraphs and back: 2-blow-up
//! counting, cleaning, permutation and colour slicing, and the respects
//! relation.

mod clean;
mod count;
mod family;
mod permutation;
mod respects;
mod slice;

pub use count::{copies_per_edge, count_k2_blowups, BlowupCount};
pub use clean::{clean_to_robust_subgraph, clean_with_order, CleanOutcome};
pub use permutation::{permutation_slice, permutation_statistics, PermutationStats};
pub use slice::{check_sliced_partition, colour_slice, mandated_part_size, DensityRecord, SlicedPartition};
pub use respects::{
    build_respecting_multigraph, rainbow_cycle_to_tight_cycle, verify_respects, ColourReport, EdgeWitness, RespectingOutcome,
    RespectingParams, RespectsCheck, RespectsWitness,
};
pub use family::{build_respecting_family, ColourBlock, FamilyChecks, RespectingFamily};
