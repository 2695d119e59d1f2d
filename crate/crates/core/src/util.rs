//! Small internal helpers shared across modules.

/// SplitMix64: tiny deterministic generator for seeded test data. Hand-rolled
/// so that seeds reproduce the same configurations on every platform and
/// toolchain.
pub(crate) struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..bound`. Modulo bias is irrelevant at the
    /// bounds used here.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Signed draw in `-half..=half`.
    pub fn signed(&mut self, half: u64) -> i64 {
        self.below(2 * half + 1) as i64 - half as i64
    }
}

/// n choose 2 as a u32; the sizes in this crate keep this comfortably small.
pub(crate) fn choose2(n: u8) -> u32 {
    u32::from(n) * (u32::from(n) - 1) / 2
}
