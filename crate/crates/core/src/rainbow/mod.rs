//! Rainbow matchings, path systems, U-sets, bowties, (d, g)-partitions and
//! the cycle-system pipeline on edge-coloured multigraphs.

mod bowtie;
mod close;
mod matching;
mod partition;
mod paths;
mod reach;
mod search;
mod system;
mod types;
mod uset;

pub use bowtie::{bowtie_is_g_maximal, bowtie_reach, build_bowtie, side_graph, Bowtie, BowtieBuild};
pub use close::{close_rainbow_path, CloseMode, Closing};
pub use matching::greedy_rainbow_matching;
pub use partition::{
    check_dg_partition, family_colours, family_minus, family_sets, family_vertices, find_dg_partition, BowtieSets, DGPartition,
    PartitionReport,
};
pub use paths::{rainbow_path_system, verify_path_system, RainbowPathSystem};
pub use reach::{rainbow_path_to, reachable, REACH_STATE_LIMIT};
pub use search::find_rainbow_cycles;
pub use system::{
    rainbow_cycle_system, AbsorptionMode, BowtieClass, BowtieRecord, Branch, ClosingRecord, CycleSystemParams, CycleSystemReport, Hypothesis,
    LevelSummary, PropertyCheck, StageLog, StageReport, StagedFailure,
};
pub use uset::{
    check_g_maximal, closed_shadow, expand_uset, find_violation, ExpansionStep, GMaxReport, USet, Violation,
};
pub use types::{verify_cycle_system, verify_rainbow_cycle, verify_rainbow_path, CycleSystem, RainbowCycle, RainbowPath};
