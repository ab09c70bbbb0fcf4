//! Tight-cycle search, the greedy monochromatic cover, triangle cycles, the
//! lower-bound construction and the bound calculator.

mod bound;
mod cover;
mod lower_bound;
mod search;
mod triangle;

pub use bound::{theorem_bound, TheoremBound, BOUND_MAX_K};
pub use cover::{greedy_mono_cover, CoverCycle, CoverReport, CoverStep};
pub use lower_bound::{default_sizes, lower_bound_instance};
pub use search::{all_tight_cycles, find_tight_cycle, find_tight_cycle_within, SearchOutcome, SearchResult};
pub use triangle::{build_triangle_cycle, verify_triangle_cycle, TriangleCheck, TriangleCycle, EXHAUSTIVE_MAX_T};
