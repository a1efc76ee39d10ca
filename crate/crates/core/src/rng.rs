//! Deterministic pseudo-random streams.
//!
//! Everything that is sampled in this crate goes through [`SplitMix64`], and
//! the exact bit-level behaviour is part of the public contract: a hypergraph
//! file or sweep CSV produced from a given seed must be reproducible on any
//! machine and any thread count.
//!
//! * Generator: SplitMix64 (Steele, Lea, Flood 2014). The state advances by
//!   `0x9E3779B97F4A7C15`, the output is the state passed through [`mix64`].
//! * Uniforms: [`SplitMix64::next_open01`] returns `((x >> 11) + 1) * 2^-53`,
//!   a double in `(0, 1]`, so `ln` of it is always finite.
//! * Streams: [`derive_seed`] folds `(master, cell, trial)` into one 64-bit
//!   seed by chained mixing, see its docs for the exact formula.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial` in sweep cell `cell` under `master`:
///
/// ```text
/// a = mix64(master + GOLDEN)
/// b = mix64((a ^ cell) + GOLDEN)
/// seed = mix64((b ^ trial) + GOLDEN)
/// ```
///
/// with wrapping addition and `GOLDEN = 0x9E3779B97F4A7C15`.
pub fn derive_seed(master: u64, cell: u64, trial: u64) -> u64 {
    let a = mix64(master.wrapping_add(GOLDEN_GAMMA));
    let b = mix64((a ^ cell).wrapping_add(GOLDEN_GAMMA));
    mix64((b ^ trial).wrapping_add(GOLDEN_GAMMA))
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform double in `(0, 1]`.
    #[inline]
    pub fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..bound` by rejection; `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = u64::MAX - u64::MAX.wrapping_rem(bound) - 1;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }
}
