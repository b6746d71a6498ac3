//! Seedable random state with counter-style child derivation.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Pseudo-random generator state passed explicitly to every sampler.
///
/// Children derived from the same `(seed, stream)` pair always produce the
/// same draw sequence, independently of how many other children exist or in
/// which order they are consumed.
#[derive(Debug, Clone)]
pub struct RngState(ChaCha8Rng);

const REPLICATION_TAG: u64 = 0x5354_494e_4152_4d43; // "STINARMC"

impl RngState {
    pub fn from_seed(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Independent child state for `(seed, stream)`.
    pub fn stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self(rng)
    }

    /// State for replication `rep` of Monte Carlo cell `cell`.
    pub fn for_replication(seed: u64, cell: u64, rep: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&cell.to_le_bytes());
        key[16..24].copy_from_slice(&REPLICATION_TAG.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(rep);
        Self(rng)
    }
}

impl RngCore for RngState {
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
