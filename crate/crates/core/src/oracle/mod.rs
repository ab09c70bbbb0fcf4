//! Brute-force ground truth for small instances. Hard size guards: these
//! never approximate.

mod enumerate;
mod partition;
mod rainbow;

pub use enumerate::{enumerate_tight_cycles, ENUMERATE_MAX_N};
pub use partition::{min_mono_partition, PartPiece, PartitionOracleResult, SearchStats, PARTITION_MAX_N};
pub use rainbow::{min_rainbow_cycle_system, RainbowOracleResult, RAINBOW_MAX_COLOURS, RAINBOW_MAX_N};
