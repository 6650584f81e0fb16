//! Exact real parameters and Beatty-set membership.
//!
//! A parameter (`alpha`, `beta` or `lambda`) is an [`AlphaValue`]: a reduced
//! rational, a quadratic irrational `(p + q*sqrt(d))/r`, or a decimal literal
//! known to a stated number of significant digits. Rational and quadratic
//! values are compared with integer arithmetic only; decimal values are
//! compared through certified enclosures and report
//! [`Error::AmbiguousComparison`](crate::Error::AmbiguousComparison) instead
//! of guessing.
//!
//! Command-line grammar: `rat:p/q`, `quad:p,q,d,r`, `dec:<literal>`, or a
//! bare integer.

mod membership;
mod rotation;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand_core::RngCore;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use membership::{beatty_enumerate, beatty_member, value_compare, BeattyWindow, LinearForm};
pub use rotation::{Angle, Orbit, Rotation};

use crate::error::{Error, Result};
use crate::numeric::{bits_for_digits, Enclosure, Fixed, Real, Round, Surd};
use crate::rng;

/// Significant digits used for decimal literals unless overridden.
pub const DEFAULT_PRECISION: u32 = 50;
/// Smallest accepted decimal precision.
pub const MIN_PRECISION: u32 = 30;

/// A decimal literal rounded to `precision` significant digits.
///
/// The represented real is only known to lie within half a unit of the last
/// retained digit: `significand * 10^exp10 +- 10^exp10 / 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecimalValue {
    literal: String,
    precision: u32,
    significand: BigInt,
    exp10: i64,
}

impl DecimalValue {
    pub fn new(literal: &str, precision: u32) -> Result<Self> {
        if precision < MIN_PRECISION {
            return Err(Error::InvalidValue(format!(
                "decimal precision {precision} is below the minimum of {MIN_PRECISION} digits"
            )));
        }
        let (negative, digits, exp10) = split_decimal(literal)?;
        let digits = digits.trim_start_matches('0');
        let (significand, exp10) = if digits.is_empty() {
            (BigInt::zero(), 0)
        } else {
            let n = digits.len() as i64;
            let p = precision as i64;
            let (mut sig, mut exp) = if n > p {
                let (keep, rest) = digits.split_at(p as usize);
                let mut sig: BigInt = keep.parse().expect("ascii digits");
                if rest.as_bytes()[0] >= b'5' {
                    sig += 1;
                }
                (sig, exp10 + (n - p))
            } else {
                let sig: BigInt = digits.parse().expect("ascii digits");
                (sig * num_traits::pow(BigInt::from(10), (p - n) as usize), exp10 - (p - n))
            };
            // rounding may have produced precision + 1 digits
            if sig.to_string().len() as i64 > p {
                sig /= 10;
                exp += 1;
            }
            (if negative { -sig } else { sig }, exp)
        };
        Ok(DecimalValue { literal: literal.to_string(), precision, significand, exp10 })
    }

    pub fn literal(&self) -> &str {
        &self.literal
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    fn is_zero(&self) -> bool {
        self.significand.is_zero()
    }

    /// Fractional bits sufficient to resolve the last retained digit.
    pub fn working_bits(&self) -> u32 {
        let frac_digits = (-self.exp10).max(0) as u32;
        bits_for_digits(frac_digits.max(self.precision) + 4)
    }

    pub fn enclosure(&self) -> Enclosure {
        let bits = self.working_bits();
        if self.is_zero() {
            return Enclosure::new(Fixed::zero(bits), Fixed::zero(bits), Some(self.precision));
        }
        let two_c: BigInt = &self.significand * 2;
        let (lo_num, hi_num) = (&two_c - 1, &two_c + 1);
        let (lo, hi) = if self.exp10 >= 0 {
            let s = num_traits::pow(BigInt::from(10), self.exp10 as usize);
            let two = BigInt::from(2);
            (
                Fixed::from_ratio(&(lo_num * &s), &two, bits, Round::Floor),
                Fixed::from_ratio(&(hi_num * &s), &two, bits, Round::Ceil),
            )
        } else {
            let den = num_traits::pow(BigInt::from(10), (-self.exp10) as usize) * 2;
            (
                Fixed::from_ratio(&lo_num, &den, bits, Round::Floor),
                Fixed::from_ratio(&hi_num, &den, bits, Round::Ceil),
            )
        };
        Enclosure::new(lo, hi, Some(self.precision))
    }
}

/// Splits a literal into (negative, digit string, exponent of the last digit).
fn split_decimal(literal: &str) -> Result<(bool, String, i64)> {
    let bad = |why: &str| Error::parse(literal, why);
    let s = literal.trim();
    let (negative, s) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad("bad exponent"))?),
        None => (s, 0),
    };
    let (int, frac) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return Err(bad("no digits"));
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad("expected decimal digits"));
    }
    Ok((negative, format!("{int}{frac}"), exp - frac.len() as i64))
}

/// A real parameter used as a Beatty modulus `alpha`, a shift `beta`, or a
/// rotation `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlphaValue {
    /// `p/q`, reduced, `q >= 1`.
    Rational { p: i64, q: i64 },
    /// `(p + q*sqrt(d))/r`, `d` not a square, `q != 0`, `r >= 1`, `gcd(p,q,r) = 1`.
    Quadratic { p: i64, q: i64, d: i64, r: i64 },
    Decimal(DecimalValue),
}

impl AlphaValue {
    pub fn integer(n: i64) -> Self {
        AlphaValue::Rational { p: n, q: 1 }
    }

    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidValue("rational with zero denominator".into()));
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(AlphaValue::Rational { p, q })
    }

    pub fn quadratic(p: i64, q: i64, d: i64, r: i64) -> Result<Self> {
        if d <= 0 || crate::numeric::surd_is_square(d as u64) {
            return Err(Error::InvalidValue(format!("radicand {d} must be a positive non-square")));
        }
        if q == 0 || r == 0 {
            return Err(Error::InvalidValue("quadratic value needs q != 0 and r != 0".into()));
        }
        let g = p.gcd(&q).gcd(&r);
        let sign = if r < 0 { -1 } else { 1 };
        Ok(AlphaValue::Quadratic { p: sign * p / g, q: sign * q / g, d, r: sign * r / g })
    }

    pub fn decimal(literal: &str, precision: u32) -> Result<Self> {
        Ok(AlphaValue::Decimal(DecimalValue::new(literal, precision)?))
    }

    fn from_surd(s: &Surd) -> Result<Self> {
        let (p, q, d, r) = s
            .to_i64_parts()
            .ok_or_else(|| Error::CapacityExceeded(format!("{s} does not fit 64-bit coefficients")))?;
        if q == 0 {
            AlphaValue::rational(p, r)
        } else {
            AlphaValue::quadratic(p, q, d, r)
        }
    }

    /// Parses the command-line grammar, giving decimals `precision` digits.
    pub fn parse_with_precision(s: &str, precision: u32) -> Result<Self> {
        let s = s.trim();
        let int = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::parse(s, format!("{t:?} is not an integer")));
        if let Some(rest) = s.strip_prefix("rat:") {
            match rest.split_once('/') {
                Some((p, q)) => AlphaValue::rational(int(p)?, int(q)?),
                None => Ok(AlphaValue::integer(int(rest)?)),
            }
        } else if let Some(rest) = s.strip_prefix("quad:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 4 {
                return Err(Error::parse(s, "expected quad:p,q,d,r"));
            }
            AlphaValue::quadratic(int(parts[0])?, int(parts[1])?, int(parts[2])?, int(parts[3])?)
        } else if let Some(rest) = s.strip_prefix("dec:") {
            AlphaValue::decimal(rest, precision)
        } else if let Ok(n) = s.parse::<i64>() {
            Ok(AlphaValue::integer(n))
        } else {
            Err(Error::parse(s, "expected rat:p/q, quad:p,q,d,r, dec:<literal> or an integer"))
        }
    }

    pub fn to_real(&self) -> Real {
        match self {
            AlphaValue::Rational { p, q } => Real::Exact(Surd::rational(*p, *q).expect("validated")),
            AlphaValue::Quadratic { p, q, d, r } => {
                Real::Exact(Surd::new((*p).into(), (*q).into(), *d as u64, (*r).into()).expect("validated"))
            }
            AlphaValue::Decimal(dv) => Real::Interval(dv.enclosure()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            AlphaValue::Rational { p, q } => *p as f64 / *q as f64,
            AlphaValue::Quadratic { p, q, d, r } => (*p as f64 + *q as f64 * (*d as f64).sqrt()) / *r as f64,
            AlphaValue::Decimal(_) => self.to_real().to_f64(),
        }
    }

    /// Extended-precision point value.
    pub fn approx(&self, bits: u32) -> Fixed {
        self.to_real().approx(bits)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlphaValue::Rational { .. })
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, AlphaValue::Decimal(_))
    }

    /// Significant digits of a decimal value.
    pub fn precision(&self) -> Option<u32> {
        match self {
            AlphaValue::Decimal(dv) => Some(dv.precision),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self {
            AlphaValue::Rational { p, q: 1 } => Some(*p),
            _ => None,
        }
    }

    /// `1/self`. Decimal reciprocals are recomputed to the same precision.
    pub fn recip(&self) -> Result<AlphaValue> {
        match self {
            AlphaValue::Rational { p, q } => AlphaValue::rational(*q, *p),
            AlphaValue::Quadratic { .. } => match self.to_real().recip()? {
                Real::Exact(s) => AlphaValue::from_surd(&s),
                Real::Interval(_) => unreachable!("exact reciprocal"),
            },
            AlphaValue::Decimal(dv) => {
                if dv.is_zero() {
                    return Err(Error::InvalidValue("reciprocal of zero".into()));
                }
                let bits = dv.working_bits() + 64;
                let value = Fixed::from_decimal_parts(&dv.significand, dv.exp10, bits, Round::Floor);
                let inv = Fixed::from_int(1, bits).div(&value, Round::Floor);
                let magnitude = inv.abs().floor().to_string().len();
                let literal = inv.to_decimal_string(dv.precision as usize + 10 + magnitude);
                AlphaValue::decimal(&literal, dv.precision)
            }
        }
    }

    /// `(p, q, d, r)` with value `(p + q*sqrt(d))/r` for exact variants
    /// (`q = d = 0` for rationals).
    pub(crate) fn exact_parts(&self) -> Option<(i128, i128, i128, i128)> {
        match *self {
            AlphaValue::Rational { p, q } => Some((p.into(), 0, 0, q.into())),
            AlphaValue::Quadratic { p, q, d, r } => Some((p.into(), q.into(), d.into(), r.into())),
            AlphaValue::Decimal(_) => None,
        }
    }

    /// Certified comparison with another parameter.
    pub fn cmp_value(&self, other: &AlphaValue) -> Result<Ordering> {
        // machine-integer path for exact values in a common field
        if let (Some((p1, q1, d1, r1)), Some((p2, q2, d2, r2))) = (self.exact_parts(), other.exact_parts()) {
            if d1 == d2 || d1 == 0 || d2 == 0 {
                let ord = membership::sign_small(p1 * r2 - p2 * r1, q1 * r2 - q2 * r1, d1.max(d2));
                if let Some(ord) = ord {
                    return Ok(ord);
                }
            }
        }
        self.to_real().cmp_real(&other.to_real())
    }

    /// Certified comparison with a float, taken as the exact dyadic rational it stores.
    pub fn cmp_f64(&self, x: f64) -> Result<Ordering> {
        self.to_real().cmp_real(&Real::Exact(f64_to_surd(x)?))
    }

    /// Checks the modulus condition `alpha > 1`.
    pub fn check_modulus(&self) -> Result<()> {
        if self.cmp_value(&AlphaValue::integer(1))? != Ordering::Greater {
            return Err(Error::out_of_range("alpha", format!("{self} must exceed 1")));
        }
        Ok(())
    }

    /// Checks the rotation condition `0 < lambda < 1`.
    pub fn check_rotation(&self) -> Result<()> {
        let pos = self.cmp_value(&AlphaValue::integer(0))? == Ordering::Greater;
        let below_one = self.cmp_value(&AlphaValue::integer(1))? == Ordering::Less;
        if !(pos && below_one) {
            return Err(Error::out_of_range("lambda", format!("{self} must lie in (0, 1)")));
        }
        Ok(())
    }

    /// Checks the shift condition `beta >= 0`.
    pub fn check_shift(&self) -> Result<()> {
        if self.cmp_value(&AlphaValue::integer(0))? == Ordering::Less {
            return Err(Error::out_of_range("beta", format!("{self} must be non-negative")));
        }
        Ok(())
    }

    /// Orbit generator for `n * self mod 1`.
    pub fn rotation(&self) -> Rotation {
        Rotation::of(self)
    }
}

pub(crate) fn f64_to_surd(x: f64) -> Result<Surd> {
    if !x.is_finite() {
        return Err(Error::InvalidValue(format!("{x} is not finite")));
    }
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let mut mant = bits & ((1u64 << 52) - 1);
    let exp = if raw_exp == 0 {
        -1074
    } else {
        mant |= 1 << 52;
        raw_exp - 1075
    };
    let m = if negative { -BigInt::from(mant) } else { BigInt::from(mant) };
    if exp >= 0 {
        Ok(Surd::from_int(m << exp as u32))
    } else {
        Surd::rational(m, BigInt::one() << (-exp) as u32)
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaValue::Rational { p, q: 1 } => write!(f, "rat:{p}"),
            AlphaValue::Rational { p, q } => write!(f, "rat:{p}/{q}"),
            AlphaValue::Quadratic { p, q, d, r } => write!(f, "quad:{p},{q},{d},{r}"),
            AlphaValue::Decimal(dv) => write!(f, "dec:{}", dv.literal),
        }
    }
}

impl FromStr for AlphaValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlphaValue::parse_with_precision(s, DEFAULT_PRECISION)
    }
}

impl Serialize for AlphaValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlphaValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Extended-precision fractional part `t - floor(t)`.
pub fn frac_part(t: &Fixed) -> Fixed {
    t.frac()
}

/// Draws a quadratic irrational strictly inside `(lo, hi)`.
///
/// Coefficient ranges: `d` uniform over the non-squares in `[2, 1000]`,
/// `q` uniform in `[1, 8]`, `r` uniform in `[1, 16]`, and `p` the nearest
/// integer placing the value at a uniform target in `(lo, hi)`; draws falling
/// outside the open interval are rejected. The result is canonicalised.
pub fn sample_alpha<R: RngCore>(rng: &mut R, lo: f64, hi: f64) -> Result<AlphaValue> {
    if !(lo.is_finite() && hi.is_finite() && 1.0 <= lo && lo < hi) {
        return Err(Error::out_of_range("sample interval", format!("need 1 <= lo < hi, got ({lo}, {hi})")));
    }
    loop {
        let d = loop {
            let d = 2 + rng::below(rng, 999);
            if !crate::numeric::surd_is_square(d) {
                break d as i64;
            }
        };
        let q = 1 + rng::below(rng, 8) as i64;
        let r = 1 + rng::below(rng, 16) as i64;
        let target = lo + (hi - lo) * rng::unit_f64(rng);
        let p = (target * r as f64 - q as f64 * (d as f64).sqrt()).round() as i64;
        let v = AlphaValue::quadratic(p, q, d, r)?;
        if v.cmp_f64(lo)? == Ordering::Greater && v.cmp_f64(hi)? == Ordering::Less {
            return Ok(v);
        }
    }
}

/// Draws `lambda` uniformly from `(0, 1)` as a decimal with `digits`
/// significant digits (the endpoints are excluded).
pub fn sample_unit_decimal<R: RngCore>(rng: &mut R, digits: u32) -> Result<AlphaValue> {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let k: BigInt = rng::below_big(rng, &(&scale - 1)) + 1;
    let s = k.to_string();
    let literal = format!("0.{}{}", "0".repeat(digits as usize - s.len()), s);
    AlphaValue::decimal(&literal, digits.max(MIN_PRECISION))
}
