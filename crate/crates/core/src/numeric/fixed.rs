use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Phase;

/// Direction used when a result is not representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
}

/// Binary fixed-point number `mant / 2^bits`.
///
/// Values taking part in one operation must share the same `bits`; mixing
/// scales is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fixed {
    mant: BigInt,
    bits: u32,
}

fn div_round(num: &BigInt, den: &BigInt, round: Round) -> BigInt {
    match round {
        Round::Floor => num.div_floor(den),
        Round::Ceil => num.div_ceil(den),
    }
}

impl Fixed {
    pub fn from_mantissa(mant: BigInt, bits: u32) -> Self {
        Fixed { mant, bits }
    }

    pub fn zero(bits: u32) -> Self {
        Fixed { mant: BigInt::zero(), bits }
    }

    pub fn from_int<T: Into<BigInt>>(value: T, bits: u32) -> Self {
        Fixed { mant: value.into() << bits, bits }
    }

    /// `num / den` rounded in the requested direction. `den` must be nonzero.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32, round: Round) -> Self {
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        Fixed { mant: div_round(&(num << bits), &den, round), bits }
    }

    /// `sqrt(d)` for a non-negative integer `d`, rounded as requested.
    pub fn sqrt_int(d: &BigInt, bits: u32, round: Round) -> Self {
        assert!(!d.is_negative(), "square root of a negative integer");
        let scaled: BigInt = d << (2 * bits);
        let mut root = scaled.sqrt();
        if round == Round::Ceil && &root * &root != scaled {
            root += 1;
        }
        Fixed { mant: root, bits }
    }

    /// Parses a decimal literal such as `-12.5e-3` exactly when it is
    /// dyadic, otherwise rounded in the requested direction.
    pub fn from_decimal_parts(significand: &BigInt, exp10: i64, bits: u32, round: Round) -> Self {
        if exp10 >= 0 {
            let scale = num_traits::pow(BigInt::from(10), exp10 as usize);
            Fixed::from_int(significand * scale, bits)
        } else {
            let den = num_traits::pow(BigInt::from(10), (-exp10) as usize);
            Fixed::from_ratio(significand, &den, bits, round)
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    fn check(&self, other: &Fixed) {
        assert_eq!(self.bits, other.bits, "fixed-point scale mismatch");
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        self.check(other);
        Fixed { mant: &self.mant + &other.mant, bits: self.bits }
    }

    pub fn sub(&self, other: &Fixed) -> Fixed {
        self.check(other);
        Fixed { mant: &self.mant - &other.mant, bits: self.bits }
    }

    pub fn neg(&self) -> Fixed {
        Fixed { mant: -&self.mant, bits: self.bits }
    }

    pub fn mul_int(&self, k: &BigInt) -> Fixed {
        Fixed { mant: &self.mant * k, bits: self.bits }
    }

    pub fn mul(&self, other: &Fixed, round: Round) -> Fixed {
        self.check(other);
        let prod = &self.mant * &other.mant;
        let one = BigInt::one() << self.bits;
        Fixed { mant: div_round(&prod, &one, round), bits: self.bits }
    }

    /// Division; panics when `other` is zero.
    pub fn div(&self, other: &Fixed, round: Round) -> Fixed {
        self.check(other);
        assert!(!other.mant.is_zero(), "fixed-point division by zero");
        let num: BigInt = &self.mant << self.bits;
        let (num, den) = if other.mant.is_negative() {
            (-num, -&other.mant)
        } else {
            (num, other.mant.clone())
        };
        Fixed { mant: div_round(&num, &den, round), bits: self.bits }
    }

    /// Changes the number of fractional bits.
    pub fn rescale(&self, bits: u32, round: Round) -> Fixed {
        if bits >= self.bits {
            Fixed { mant: &self.mant << (bits - self.bits), bits }
        } else {
            let den = BigInt::one() << (self.bits - bits);
            Fixed { mant: div_round(&self.mant, &den, round), bits }
        }
    }

    pub fn floor(&self) -> BigInt {
        self.mant.div_floor(&(BigInt::one() << self.bits))
    }

    pub fn ceil(&self) -> BigInt {
        self.mant.div_ceil(&(BigInt::one() << self.bits))
    }

    /// `t - floor(t)`, always in `[0, 1)`.
    pub fn frac(&self) -> Fixed {
        let one = BigInt::one() << self.bits;
        Fixed { mant: self.mant.mod_floor(&one), bits: self.bits }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        match self.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    pub fn abs(&self) -> Fixed {
        Fixed { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let shift = self.mant.bits().saturating_sub(64);
        let top = (&self.mant >> shift).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(shift as i32 - self.bits as i32)
    }

    /// The fractional part as a circle point, truncated to 192 bits.
    pub fn to_phase(&self) -> Phase {
        let f = self.frac().mant;
        let f = if self.bits >= 192 { f >> (self.bits - 192) } else { f << (192 - self.bits) };
        Phase::from_bigint(&f)
    }

    /// Writes `self` as a decimal string with `digits` digits after the point
    /// (truncated toward negative infinity).
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = (&self.mant * scale).div_floor(&(BigInt::one() << self.bits));
        let neg = scaled.is_negative();
        let s = scaled.abs().to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.check(other);
        self.mant.cmp(&other.mant)
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.bits as usize * 3) / 10;
        f.write_str(&self.to_decimal_string(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fx(v: f64) -> Fixed {
        // exact for dyadic test values
        Fixed::from_ratio(&BigInt::from((v * 1024.0) as i64), &BigInt::from(1024), 64, Round::Floor)
    }

    #[test]
    fn frac_of_negative_and_positive() {
        assert_eq!(fx(2.25).frac(), fx(0.25));
        assert_eq!(fx(-0.25).frac(), fx(0.75));
        assert!(fx(0.0).frac().is_zero());
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(fx(-0.25).floor(), BigInt::from(-1));
        assert_eq!(fx(-0.25).ceil(), BigInt::from(0));
        assert_eq!(fx(3.0).ceil(), BigInt::from(3));
    }

    #[test]
    fn sqrt_brackets_value() {
        let lo = Fixed::sqrt_int(&BigInt::from(2), 100, Round::Floor);
        let hi = Fixed::sqrt_int(&BigInt::from(2), 100, Round::Ceil);
        assert_eq!(hi.mantissa() - lo.mantissa(), BigInt::one());
        assert!((lo.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        let four = Fixed::sqrt_int(&BigInt::from(4), 50, Round::Ceil);
        assert_eq!(four, Fixed::from_int(2, 50));
    }

    #[test]
    fn decimal_string_round_trip() {
        let third = Fixed::from_ratio(&BigInt::from(1), &BigInt::from(3), 128, Round::Floor);
        assert_eq!(third.to_decimal_string(10), "0.3333333333");
        assert_eq!(third.neg().to_decimal_string(3), "-0.334");
        assert_eq!(Fixed::from_int(7, 10).to_decimal_string(0), "7");
    }

    #[test]
    fn division_rounding_directions() {
        let one = Fixed::from_int(1, 64);
        let three = Fixed::from_int(3, 64);
        let lo = one.div(&three, Round::Floor);
        let hi = one.div(&three, Round::Ceil);
        assert_eq!(hi.mantissa() - lo.mantissa(), BigInt::one());
    }
}
