//! Seeded random streams.
//!
//! One root seed expands into independent named streams so that the draw sequence of
//! each part of the optimizer loop is fixed regardless of what else consumes randomness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Init = 1,
    Update = 2,
    Boundary = 3,
    Leader = 4,
    /// Reserved for diagnostics and tests; never consumed by the optimizer loop.
    Aux = 5,
}

/// Creates the generator for one named stream of `seed`.
pub fn stream(seed: u64, which: Stream) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(which as u64);
    rng
}

/// The four streams consumed by the optimizer loop.
#[derive(Debug, Clone)]
pub struct RngStreams {
    pub init: StreamRng,
    pub update: StreamRng,
    pub boundary: StreamRng,
    pub leader: StreamRng,
}

impl RngStreams {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            init: stream(seed, Stream::Init),
            update: stream(seed, Stream::Update),
            boundary: stream(seed, Stream::Boundary),
            leader: stream(seed, Stream::Leader),
        }
    }
}

/// Uniform draw in `[lower, upper]` from a single `[0, 1)` sample.
///
/// Kept as one sample per call so callers (and tests) can replay the exact sequence.
pub fn uniform_in<R: Rng + ?Sized>(rng: &mut R, lower: f64, upper: f64) -> f64 {
    let u: f64 = rng.random();
    lower + (upper - lower) * u
}
