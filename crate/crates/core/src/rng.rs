//! Counter-based random streams.
//!
//! Every stream is a ChaCha8 keystream addressed by `(seed, stream_id)`.
//! Two streams with different ids never overlap, and a stream's output
//! depends on nothing but its address, so work can be spread over any
//! number of workers and merged by stream id.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng as StreamRng;

/// Opens the stream addressed by `(seed, stream_id)`.
pub fn stream(seed: u64, stream_id: u64) -> StreamRng {
    let mut rng = StreamRng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}

/// Packs a purpose tag, a row index and a chunk index into one stream id.
///
/// Tags occupy the top 16 bits, rows the next 16 and chunks the low 32.
pub fn stream_id(tag: u16, row: u16, chunk: u32) -> u64 {
    (u64::from(tag) << 48) | (u64::from(row) << 32) | u64::from(chunk)
}

/// Uniform draw on the open interval (0, 1).
#[inline]
pub fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Open01)
}
