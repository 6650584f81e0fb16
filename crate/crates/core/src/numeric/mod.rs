//! Number representations shared by the rest of the crate.
//!
//! * [`Fixed`] is an arbitrary-precision binary fixed-point number used for
//!   extended-precision real arithmetic and for outward-rounded enclosures.
//! * [`Phase`] is a point of the circle `R/Z` stored as a 192-bit fraction.
//!   Additions wrap exactly, so orbits `n*theta mod 1` can be streamed with
//!   an error of at most `n * 2^-192` coming from the truncation of `theta`.
//! * [`Surd`] is an exact element `(p + q*sqrt(d)) / r` of a real quadratic
//!   field (rationals are the `q = 0` case).
//! * [`Real`] combines exact surds with certified intervals.

mod fixed;
mod phase;
mod real;
mod sum;
mod surd;

pub use fixed::{Fixed, Round};
pub use phase::Phase;
pub use real::{Enclosure, Real};
pub use sum::{ComplexSum, NeumaierSum};
pub use surd::Surd;

/// Number of fractional bits needed to carry `digits` significant decimal
/// digits, plus 32 guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    // log2(10) = 3.3219...; round up generously.
    (digits as u64 * 33_220 / 10_000) as u32 + 33
}

/// Fractional bits used when an exact value has to be turned into a
/// [`Phase`] or a floating approximation.
pub const EXACT_EVAL_BITS: u32 = 256;

pub(crate) use surd::{is_square as surd_is_square, sign_surd};
