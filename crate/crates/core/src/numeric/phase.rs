use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// A point of `R/Z` as a 192-bit binary fraction, most significant limb first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Phase([u64; 3]);

impl Phase {
    pub const ZERO: Phase = Phase([0, 0, 0]);
    pub const HALF: Phase = Phase([1 << 63, 0, 0]);

    pub const fn from_limbs(limbs: [u64; 3]) -> Self {
        Phase(limbs)
    }

    pub fn limbs(&self) -> [u64; 3] {
        self.0
    }

    /// Low 192 bits of a non-negative integer.
    pub fn from_bigint(v: &BigInt) -> Self {
        let mask = BigInt::from(u64::MAX);
        let lo = (v & &mask).to_u64().unwrap_or(0);
        let mid = ((v >> 64u32) & &mask).to_u64().unwrap_or(0);
        let hi = ((v >> 128u32) & &mask).to_u64().unwrap_or(0);
        Phase([hi, mid, lo])
    }

    pub fn to_bigint(&self) -> BigInt {
        let [hi, mid, lo] = self.0;
        (BigInt::from(hi) << 128u32) + (BigInt::from(mid) << 64u32) + BigInt::from(lo)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    /// Sum modulo one; the flag reports whether the sum wrapped past 1.
    #[inline]
    pub fn overflowing_add(self, rhs: Phase) -> (Phase, bool) {
        let (lo, c0) = self.0[2].overflowing_add(rhs.0[2]);
        let (mid, c1a) = self.0[1].overflowing_add(rhs.0[1]);
        let (mid, c1b) = mid.overflowing_add(c0 as u64);
        let (hi, c2a) = self.0[0].overflowing_add(rhs.0[0]);
        let (hi, c2b) = hi.overflowing_add((c1a || c1b) as u64);
        (Phase([hi, mid, lo]), c2a || c2b)
    }

    #[inline]
    pub fn wrapping_add(self, rhs: Phase) -> Phase {
        self.overflowing_add(rhs).0
    }

    #[inline]
    pub fn wrapping_neg(self) -> Phase {
        let inv = Phase([!self.0[0], !self.0[1], !self.0[2]]);
        inv.wrapping_add(Phase([0, 0, 1]))
    }

    #[inline]
    pub fn wrapping_sub(self, rhs: Phase) -> Phase {
        self.wrapping_add(rhs.wrapping_neg())
    }

    /// `n * self mod 1`.
    #[inline]
    pub fn wrapping_mul(self, n: u64) -> Phase {
        let n = n as u128;
        let lo = self.0[2] as u128 * n;
        let mid = self.0[1] as u128 * n + (lo >> 64);
        let hi = (self.0[0] as u128).wrapping_mul(n).wrapping_add(mid >> 64);
        Phase([hi as u64, mid as u64, lo as u64])
    }

    /// `n * self mod 1` for a signed multiplier.
    #[inline]
    pub fn wrapping_mul_signed(self, n: i64) -> Phase {
        let p = self.wrapping_mul(n.unsigned_abs());
        if n < 0 {
            p.wrapping_neg()
        } else {
            p
        }
    }

    /// The fraction as a float in `[0, 1]` (values within 2^-54 of one may
    /// round up to 1.0).
    #[inline]
    pub fn to_f64(&self) -> f64 {
        const TWO_M64: f64 = 1.0 / 18_446_744_073_709_551_616.0;
        (self.0[0] as f64 + self.0[1] as f64 * TWO_M64) * TWO_M64
    }

    /// Sawtooth value `frac - 1/2` as a float. Computed from the signed
    /// offset to one half so that the result stays in `[-1/2, 1/2)`.
    #[inline]
    pub fn psi_f64(&self) -> f64 {
        const TWO_M64: f64 = 1.0 / 18_446_744_073_709_551_616.0;
        let shifted = self.wrapping_sub(Phase::HALF);
        // interpret as a signed 192-bit fraction in [-1/2, 1/2)
        let hi = shifted.0[0] as i64 as f64;
        (hi + shifted.0[1] as f64 * TWO_M64) * TWO_M64
    }
}

impl From<Phase> for f64 {
    fn from(p: Phase) -> f64 {
        p.to_f64()
    }
}

impl Phase {
    /// Nearest phase (to about 2^-116) of a float, reduced mod 1.
    pub fn from_f64(x: f64) -> Phase {
        const TWO_64: f64 = 18_446_744_073_709_551_616.0;
        let x = x - x.floor();
        let scaled = x * TWO_64;
        let hi = scaled as u64;
        let rest = (scaled - hi as f64) * TWO_64;
        Phase([hi, rest as u64, 0])
    }
}
