//! Counter-based random streams keyed by `(master_seed, stream_id)`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A ChaCha8 stream. Equal keys give identical streams; distinct stream ids
/// under one master seed select disjoint ChaCha nonces.
#[derive(Clone, Debug)]
pub struct StreamRng(ChaCha8Rng);

impl StreamRng {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(master_seed);
        inner.set_stream(stream_id);
        Self(inner)
    }
}

impl RngCore for StreamRng {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A seed lane: one master seed plus a lane tag separating independent
/// consumers (e.g. the pair sampler and the ĉ estimator of one run).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seeds {
    pub master: u64,
    pub lane: u64,
}

impl Seeds {
    pub fn new(master: u64) -> Self {
        Self { master, lane: 0 }
    }

    /// A sub-lane; `Seeds::new(s).lane(a).lane(b)` differs from `.lane(b).lane(a)`.
    pub fn lane(self, tag: u64) -> Self {
        Self {
            master: self.master,
            lane: mix64(self.lane ^ mix64(tag)),
        }
    }

    /// Stream id for replicate `index` in this lane.
    pub fn stream_id(&self, index: u64) -> u64 {
        mix64(self.lane.wrapping_mul(0xd6e8_feb8_6659_fd93) ^ index)
    }

    pub fn stream(&self, index: u64) -> StreamRng {
        StreamRng::new(self.master, self.stream_id(index))
    }
}
