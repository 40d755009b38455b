//! Seeded pseudo-randomness.
//!
//! Every randomized routine in the workspace draws from [`SplitMix64`],
//! Steele–Lea–Flood's 64-bit mixer. It is tiny, allocation-free and fully
//! specified by the constants below, so corpora generated from a seed are
//! reproducible on any platform: same seed, same stream, byte for byte.

/// SplitMix64 generator. `next_u64` advances the state by the odd constant
/// `0x9e3779b97f4a7c15` and mixes the result with two xor-shift-multiply
/// rounds (`0xbf58476d1ce4e5b9`, `0x94d049bb133111eb`).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` by rejection sampling (no modulo bias).
    /// `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        let bound = bound as u64;
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return (x % bound) as usize;
            }
        }
    }

    /// Bernoulli draw: true with probability `num / den`.
    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        debug_assert!(den > 0 && num <= den);
        (self.below(den as usize) as u32) < num
    }

    /// Fisher–Yates shuffle, back to front.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}
