//! Seedable, platform-independent random streams.
//!
//! Every run uses xoshiro256** seeded through SplitMix64 (the reference
//! `seed_from_u64` expansion). Uniform variates take the top 53 bits of each
//! output, so a given seed yields the same doubles in any language that
//! implements the two reference generators.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

/// Stream index used for path-selection draws within one run.
pub const STREAM_SELECTION: u64 = 0;
/// Stream index used for photon arrival times within one run.
pub const STREAM_ARRIVAL: u64 = 1;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const TWO_POW_NEG_53: f64 = 1.0 / (1u64 << 53) as f64;

/// SplitMix64 output function applied to a single state value.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent child seed from `(base, index)`.
///
/// Used for replica and sweep-point seeds so that concurrent runs never
/// share a stream.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base) ^ index.wrapping_mul(GOLDEN_GAMMA))
}

/// The simulator's random source.
#[derive(Debug, Clone)]
pub struct SimRng {
    inner: Xoshiro256StarStar,
}

impl SimRng {
    pub fn seed_from_u64(seed: u64) -> Self {
        Self {
            inner: Xoshiro256StarStar::seed_from_u64(seed),
        }
    }

    /// Child stream `index` of `seed`.
    pub fn stream(seed: u64, index: u64) -> Self {
        Self::seed_from_u64(derive_seed(seed, index))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform double on `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * TWO_POW_NEG_53
    }

    /// Uniform double on the open interval `(0, 1)`.
    pub fn unit_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * TWO_POW_NEG_53
    }

    /// Exponential variate with the given rate, by inversion.
    pub fn exponential(&mut self, rate: f64) -> f64 {
        -self.unit_open().ln() / rate
    }
}
