//! The single seeded generator behind every randomised run.
//!
//! SplitMix64, with the state update and output mix fixed as follows so that
//! other implementations can reproduce trial sequences bit for bit:
//!
//! ```text
//! state  = state + 0x9E3779B97F4A7C15            (wrapping)
//! z      = state
//! z      = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  (wrapping)
//! z      = (z ^ (z >> 27)) * 0x94D049BB133111EB  (wrapping)
//! output = z ^ (z >> 31)
//! ```
//!
//! Bounded draws use rejection sampling on the top of the range: a value
//! `x` is rejected while `x >= 2^64 - (2^64 mod bound)`, then `x mod bound`
//! is returned.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound`. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }
}
