//! Seeded randomness. Every sampler in the crate draws from a ChaCha stream
//! derived from a user seed so runs are reproducible bit for bit.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream seed for the `index`-th sub-task of `seed`.
pub fn derive(seed: u64, index: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn gaussian(rng: &mut Rng, n: usize) -> DVector<f64> {
    DVector::from_iterator(n, (0..n).map(|_| StandardNormal.sample(rng)))
}

/// Uniform direction on the unit sphere. `n` must be at least one.
pub fn unit_vector(rng: &mut Rng, n: usize) -> DVector<f64> {
    loop {
        let g = gaussian(rng, n);
        let norm = g.norm();
        if norm > 1e-12 {
            return g / norm;
        }
    }
}
