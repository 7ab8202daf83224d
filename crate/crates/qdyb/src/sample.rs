//! Seeded sampling of generic rational points.

use qdyb_core::exact::{rat, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Attempts per verification before giving up on genericity.
pub const MAX_ATTEMPTS: usize = 8;

/// Independent streams of points derived from one seed.
pub struct Sampler {
    rng: ChaCha20Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    /// Coordinates `p/q` with `|p| ≤ 10^6` and `1 ≤ q ≤ 10^3`.
    pub fn draw(&mut self, rank: usize) -> Vec<Rat> {
        (0..rank)
            .map(|_| {
                let p = self.rng.random_range(-1_000_000i64..=1_000_000);
                let q = self.rng.random_range(1i64..=1000);
                rat(p, q)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = Sampler::new(42, 0).draw(2);
        assert_eq!(a, Sampler::new(42, 0).draw(2));
        assert_ne!(a, Sampler::new(42, 1).draw(2));
    }
}
