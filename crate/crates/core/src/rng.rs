//! Deterministic random streams.
//!
//! Every random quantity in the crate comes from a master seed through
//! [`stream`]: the stream with index `i` is a xoshiro256++ generator whose
//! 256-bit state is filled by SplitMix64 (the `seed_from_u64` procedure of
//! `rand_xoshiro`) started at `derive_seed(master, i)`, where
//!
//! ```text
//! derive_seed(master, i) = splitmix64(master + (i + 1) * 0x9E3779B97F4A7C15)   (mod 2^64)
//! splitmix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//!                z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31
//! ```
//!
//! Rademacher signs take bit 63 of successive `next_u64` outputs
//! (1 -> +1, 0 -> -1). Bounded integers use the widening multiply
//! `(next_u64 * n) >> 64`.

use num_bigint::BigInt;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub type LabRng = Xoshiro256PlusPlus;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Generator seeded directly from `seed`.
pub fn seeded(seed: u64) -> LabRng {
    LabRng::seed_from_u64(seed)
}

/// Independent sub-stream `index` of `master`.
pub fn stream(master: u64, index: u64) -> LabRng {
    seeded(derive_seed(master, index))
}

/// Uniform integer in `[0, n)`.
pub fn below<R: RngCore>(rng: &mut R, n: u64) -> u64 {
    ((rng.next_u64() as u128 * n as u128) >> 64) as u64
}

/// Uniform float in `[0, 1)` with 53 random bits.
pub fn unit_f64<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

/// Uniform point of the circle with 192 random bits (three successive
/// outputs, most significant first).
pub fn unit_phase<R: RngCore>(rng: &mut R) -> crate::numeric::Phase {
    crate::numeric::Phase::from_limbs([rng.next_u64(), rng.next_u64(), rng.next_u64()])
}

/// Uniform integer in `[0, bound)` for a big bound, using 64 extra bits so
/// the modulo bias is below `2^-64`.
pub fn below_big<R: RngCore>(rng: &mut R, bound: &BigInt) -> BigInt {
    let words = bound.bits().div_ceil(64) + 1;
    let mut acc = BigInt::from(0);
    for _ in 0..words {
        acc = (acc << 64u32) + BigInt::from(rng.next_u64());
    }
    acc % bound
}

/// Uniform dyadic in `[0, 1)` with `bits` fractional bits.
pub fn unit_fixed<R: RngCore>(rng: &mut R, bits: u32) -> crate::numeric::Fixed {
    crate::numeric::Fixed::from_mantissa(below_big(rng, &(BigInt::from(1) << bits)), bits)
}

/// I.i.d. fair signs; `complemented` flips every sign of the same stream.
#[derive(Clone, Debug)]
pub struct RademacherStream {
    rng: LabRng,
    complemented: bool,
}

impl RademacherStream {
    pub fn new(seed: u64) -> Self {
        RademacherStream { rng: seeded(seed), complemented: false }
    }

    /// The same draws with every sign negated.
    pub fn complemented(mut self) -> Self {
        self.complemented = !self.complemented;
        self
    }

    #[inline]
    pub fn next_sign(&mut self) -> i64 {
        let bit = (self.rng.next_u64() >> 63) == 1;
        if bit != self.complemented {
            1
        } else {
            -1
        }
    }
}

impl Iterator for RademacherStream {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        Some(self.next_sign())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_value() {
        // First output of the reference SplitMix64 generator seeded with 0.
        assert_eq!(splitmix64(GOLDEN_GAMMA), 0xE220_A839_7B1D_CDAF);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| 0).scan(stream(7, 0), |r, _: u64| Some(r.next_u64())).collect();
        let b: Vec<u64> = (0..4).map(|_| 0).scan(stream(7, 0), |r, _: u64| Some(r.next_u64())).collect();
        let c: Vec<u64> = (0..4).map(|_| 0).scan(stream(7, 1), |r, _: u64| Some(r.next_u64())).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn complement_negates() {
        let a: Vec<i64> = RademacherStream::new(3).take(64).collect();
        let b: Vec<i64> = RademacherStream::new(3).complemented().take(64).collect();
        assert!(a.iter().zip(&b).all(|(x, y)| *x == -*y));
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = seeded(1);
        assert!((0..1000).all(|_| below(&mut r, 17) < 17));
    }
}
