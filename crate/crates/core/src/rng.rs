//! Seeded randomness. Every consumer derives its stream from one master seed.
//!
//! Splitting rule: the generator for `(master, stream)` is ChaCha8 seeded with
//! `master` and switched to the 64-bit stream id `stream`. Stream ids are fixed
//! per purpose (see [`streams`]) and per-item sub-streams use `stream + index`
//! through [`sub_stream`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub mod streams {
    pub const GENERATOR: u64 = 1 << 32;
    pub const EQUALIZE: u64 = 2 << 32;
    pub const SLICE: u64 = 3 << 32;
    pub const PERMUTATION: u64 = 4 << 32;
    pub const RESPECTING: u64 = 5 << 32;
    pub const CLEANING_ORDER: u64 = 6 << 32;
    pub const PATH_SAMPLES: u64 = 7 << 32;
}

pub fn rng_for(master: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng
}

pub fn sub_stream(stream: u64, index: u64) -> u64 {
    stream.wrapping_add(index)
}
