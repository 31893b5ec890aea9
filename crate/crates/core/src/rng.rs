use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator behind every randomized builder: ChaCha8 keyed by
/// `seed_from_u64`. Its output stream is fixed across platforms.
pub type SeededRng = ChaCha8Rng;

pub(crate) fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}
