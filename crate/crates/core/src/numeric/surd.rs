use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Enclosure, Fixed, Round};
use crate::error::{Error, Result};

/// Exact real quadratic number `(p + q*sqrt(d)) / r`.
///
/// Kept in canonical form: `r > 0`, `gcd(p, q, r) = 1`, and `d = 0` exactly
/// when `q = 0` (the rational case). A non-zero `d` is never a perfect square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    p: BigInt,
    q: BigInt,
    d: u64,
    r: BigInt,
}

pub(crate) fn is_square(d: u64) -> bool {
    let s = d.isqrt();
    s * s == d
}

/// Sign of `p + q*sqrt(d)` using integer arithmetic only.
pub(crate) fn sign_surd(p: &BigInt, q: &BigInt, d: u64) -> Ordering {
    if q.is_zero() || d == 0 {
        return p.sign().cmp_zero();
    }
    if p.is_zero() {
        return q.sign().cmp_zero();
    }
    let (sp, sq) = (p.is_positive(), q.is_positive());
    if sp == sq {
        return if sp { Ordering::Greater } else { Ordering::Less };
    }
    let c = (p * p).cmp(&(q * q * BigInt::from(d)));
    if sp {
        c
    } else {
        c.reverse()
    }
}

trait SignExt {
    fn cmp_zero(self) -> Ordering;
}

impl SignExt for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

/// `floor(q * sqrt(d))`.
fn floor_q_sqrt_d(q: &BigInt, d: u64) -> BigInt {
    if q.is_zero() || d == 0 {
        return BigInt::zero();
    }
    let v = q * q * BigInt::from(d);
    let s = v.sqrt();
    if q.is_positive() {
        s
    } else if &s * &s == v {
        -s
    } else {
        -s - 1
    }
}

impl Surd {
    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Surd { p: v.into(), q: BigInt::zero(), d: 0, r: BigInt::one() }
    }

    pub fn rational<T: Into<BigInt>>(p: T, r: T) -> Result<Self> {
        Surd::new(p.into(), BigInt::zero(), 0, r.into())
    }

    /// Builds `(p + q*sqrt(d))/r`; a perfect-square `d` is folded into `p`.
    pub fn new(p: BigInt, q: BigInt, d: u64, r: BigInt) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::InvalidValue("zero denominator".into()));
        }
        let (mut p, mut q, mut d) = (p, q, d);
        if !q.is_zero() && is_square(d) {
            p += &q * BigInt::from(d.isqrt());
            q = BigInt::zero();
        }
        if q.is_zero() {
            d = 0;
        }
        Ok(Surd { p, q, d, r }.normalized())
    }

    fn normalized(mut self) -> Self {
        if self.r.is_negative() {
            self.p = -self.p;
            self.q = -self.q;
            self.r = -self.r;
        }
        let g = self.p.gcd(&self.q).gcd(&self.r);
        if !g.is_zero() && !g.is_one() {
            self.p /= &g;
            self.q /= &g;
            self.r /= &g;
        }
        if self.q.is_zero() {
            self.d = 0;
        }
        self
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, u64, &BigInt) {
        (&self.p, &self.q, self.d, &self.r)
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    fn common_radicand(&self, other: &Surd) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::MixedRadicands(a, b)),
        }
    }

    pub fn add(&self, other: &Surd) -> Result<Surd> {
        let d = self.common_radicand(other)?;
        Surd::new(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            d,
            &self.r * &other.r,
        )
    }

    pub fn neg(&self) -> Surd {
        Surd { p: -&self.p, q: -&self.q, d: self.d, r: self.r.clone() }
    }

    pub fn sub(&self, other: &Surd) -> Result<Surd> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Surd) -> Result<Surd> {
        let d = self.common_radicand(other)?;
        let dd = BigInt::from(d);
        Surd::new(
            &self.p * &other.p + &self.q * &other.q * dd,
            &self.p * &other.q + &other.p * &self.q,
            d,
            &self.r * &other.r,
        )
    }

    pub fn mul_int<T: Into<BigInt>>(&self, k: T) -> Surd {
        let k = k.into();
        Surd { p: &self.p * &k, q: &self.q * &k, d: self.d, r: self.r.clone() }.normalized()
    }

    pub fn add_int<T: Into<BigInt>>(&self, k: T) -> Surd {
        let k = k.into();
        Surd { p: &self.p + &k * &self.r, q: self.q.clone(), d: self.d, r: self.r.clone() }.normalized()
    }

    /// `1/self`, rationalising the denominator.
    pub fn recip(&self) -> Result<Surd> {
        if self.sign() == Ordering::Equal {
            return Err(Error::InvalidValue("reciprocal of zero".into()));
        }
        let norm = &self.p * &self.p - &self.q * &self.q * BigInt::from(self.d);
        Surd::new(&self.r * &self.p, -(&self.r * &self.q), self.d, norm)
    }

    pub fn sign(&self) -> Ordering {
        sign_surd(&self.p, &self.q, self.d)
    }

    pub fn cmp_exact(&self, other: &Surd) -> Result<Ordering> {
        Ok(self.sub(other)?.sign())
    }

    pub fn floor(&self) -> BigInt {
        (&self.p + floor_q_sqrt_d(&self.q, self.d)).div_floor(&self.r)
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Outward-rounded enclosure with `bits` fractional bits.
    pub fn enclose(&self, bits: u32) -> Enclosure {
        if self.q.is_zero() {
            return Enclosure::new(
                Fixed::from_ratio(&self.p, &self.r, bits, Round::Floor),
                Fixed::from_ratio(&self.p, &self.r, bits, Round::Ceil),
                None,
            );
        }
        let d = BigInt::from(self.d);
        let s_lo = Fixed::sqrt_int(&d, bits, Round::Floor);
        let s_hi = Fixed::sqrt_int(&d, bits, Round::Ceil);
        let (qs_lo, qs_hi) = if self.q.is_positive() {
            (s_lo.mantissa() * &self.q, s_hi.mantissa() * &self.q)
        } else {
            (s_hi.mantissa() * &self.q, s_lo.mantissa() * &self.q)
        };
        let p: BigInt = &self.p << bits;
        let lo = Fixed::from_mantissa((&p + qs_lo).div_floor(&self.r), bits);
        let hi = Fixed::from_mantissa((&p + qs_hi).div_ceil(&self.r), bits);
        Enclosure::new(lo, hi, None)
    }

    /// Point approximation accurate to a few units of `2^-bits`.
    pub fn approx(&self, bits: u32) -> Fixed {
        self.enclose(bits).lower().clone()
    }

    pub fn to_f64(&self) -> f64 {
        self.approx(80).to_f64()
    }

    pub fn to_i64_parts(&self) -> Option<(i64, i64, i64, i64)> {
        Some((self.p.to_i64()?, self.q.to_i64()?, self.d.to_i64()?, self.r.to_i64()?))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}/{}", self.p, self.r)
        } else {
            write!(f, "({} + {}*sqrt({}))/{}", self.p, self.q, self.d, self.r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sqrt2() -> Surd {
        Surd::new(0.into(), 1.into(), 2, 1.into()).unwrap()
    }

    #[test]
    fn floors_of_multiples_of_sqrt2() {
        let s = sqrt2();
        let floors: Vec<i64> = (1..=7).map(|n| s.mul_int(n).floor().to_i64().unwrap()).collect();
        assert_eq!(floors, vec![1, 2, 4, 5, 7, 8, 9]);
        assert_eq!(s.neg().floor(), BigInt::from(-2));
        assert_eq!(s.neg().ceil(), BigInt::from(-1));
    }

    #[test]
    fn square_radicand_folds_to_rational() {
        let v = Surd::new(1.into(), 3.into(), 4, 2.into()).unwrap();
        assert!(v.is_rational());
        assert_eq!(v, Surd::rational(7, 2).unwrap());
    }

    #[test]
    fn recip_of_sqrt2() {
        let inv = sqrt2().recip().unwrap();
        assert_eq!(inv, Surd::new(0.into(), 1.into(), 2, 2.into()).unwrap());
        assert_eq!(inv.mul(&sqrt2()).unwrap(), Surd::from_int(1));
    }

    #[test]
    fn mixed_radicands_rejected() {
        let s3 = Surd::new(0.into(), 1.into(), 3, 1.into()).unwrap();
        assert!(matches!(sqrt2().add(&s3), Err(Error::MixedRadicands(2, 3))));
    }

    #[test]
    fn enclosure_brackets() {
        let v = Surd::new((-3).into(), 2.into(), 7, 5.into()).unwrap();
        let e = v.enclose(120);
        let x = (-3.0 + 2.0 * 7f64.sqrt()) / 5.0;
        assert!(e.lower().to_f64() <= x + 1e-15 && e.upper().to_f64() >= x - 1e-15);
        assert!(e.upper().sub(e.lower()).to_f64() < 1e-30);
    }

    proptest! {
        #[test]
        fn sign_matches_float(p in -10_000i64..10_000, q in -100i64..100, d in 2u64..200) {
            prop_assume!(!is_square(d));
            let s = sign_surd(&p.into(), &q.into(), d);
            let x = p as f64 + q as f64 * (d as f64).sqrt();
            if x.abs() > 1e-6 {
                prop_assert_eq!(s, x.partial_cmp(&0.0).unwrap());
            }
        }

        #[test]
        fn floor_brackets(p in -1000i64..1000, q in -50i64..50, d in 2u64..100, r in 1i64..40) {
            prop_assume!(!is_square(d));
            let v = Surd::new(p.into(), q.into(), d, r.into()).unwrap();
            let fl = v.floor();
            prop_assert!(v.sub(&Surd::from_int(fl.clone())).unwrap().sign() != Ordering::Less);
            prop_assert!(v.sub(&Surd::from_int(fl + 1)).unwrap().sign() == Ordering::Less);
        }
    }
}
