use std::cmp::Ordering;

use num_bigint::BigInt;

use super::{Fixed, Round, Surd};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` certified to contain a real value.
///
/// `digits` records the decimal precision the interval came from, so that an
/// undecidable comparison can report it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: Fixed,
    hi: Fixed,
    digits: Option<u32>,
}

fn merge_digits(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

impl Enclosure {
    pub fn new(lo: Fixed, hi: Fixed, digits: Option<u32>) -> Self {
        debug_assert!(lo <= hi, "inverted enclosure");
        Enclosure { lo, hi, digits }
    }

    pub fn lower(&self) -> &Fixed {
        &self.lo
    }

    pub fn upper(&self) -> &Fixed {
        &self.hi
    }

    pub fn bits(&self) -> u32 {
        self.lo.bits()
    }

    pub fn digits(&self) -> Option<u32> {
        self.digits
    }

    fn ambiguous(&self) -> Error {
        Error::AmbiguousComparison { digits: self.digits.unwrap_or(0) }
    }

    pub fn midpoint(&self) -> Fixed {
        let two = BigInt::from(2);
        Fixed::from_mantissa((self.lo.mantissa() + self.hi.mantissa()) / two, self.bits())
    }

    /// Outward rescaling to `bits` fractional bits.
    pub fn rescale(&self, bits: u32) -> Enclosure {
        Enclosure::new(self.lo.rescale(bits, Round::Floor), self.hi.rescale(bits, Round::Ceil), self.digits)
    }

    fn aligned(&self, other: &Enclosure) -> Option<(Enclosure, Enclosure)> {
        if self.bits() == other.bits() {
            return None;
        }
        let bits = self.bits().max(other.bits());
        Some((self.rescale(bits), other.rescale(bits)))
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        if let Some((a, b)) = self.aligned(other) {
            return a.add(&b);
        }
        Enclosure::new(self.lo.add(&other.lo), self.hi.add(&other.hi), merge_digits(self.digits, other.digits))
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure::new(self.hi.neg(), self.lo.neg(), self.digits)
    }

    pub fn mul_int(&self, k: &BigInt) -> Enclosure {
        let (a, b) = (self.lo.mul_int(k), self.hi.mul_int(k));
        if a <= b {
            Enclosure::new(a, b, self.digits)
        } else {
            Enclosure::new(b, a, self.digits)
        }
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        if let Some((a, b)) = self.aligned(other) {
            return a.mul(&b);
        }
        let cands_lo = [
            self.lo.mul(&other.lo, Round::Floor),
            self.lo.mul(&other.hi, Round::Floor),
            self.hi.mul(&other.lo, Round::Floor),
            self.hi.mul(&other.hi, Round::Floor),
        ];
        let cands_hi = [
            self.lo.mul(&other.lo, Round::Ceil),
            self.lo.mul(&other.hi, Round::Ceil),
            self.hi.mul(&other.lo, Round::Ceil),
            self.hi.mul(&other.hi, Round::Ceil),
        ];
        let lo = cands_lo.into_iter().min().expect("four candidates");
        let hi = cands_hi.into_iter().max().expect("four candidates");
        Enclosure::new(lo, hi, merge_digits(self.digits, other.digits))
    }

    pub fn recip(&self) -> Result<Enclosure> {
        if self.lo.signum() != self.hi.signum() || self.lo.is_zero() {
            return Err(self.ambiguous());
        }
        let one = Fixed::from_int(1, self.bits());
        Ok(Enclosure::new(one.div(&self.hi, Round::Floor), one.div(&self.lo, Round::Ceil), self.digits))
    }

    pub fn sign(&self) -> Result<Ordering> {
        match (self.lo.signum(), self.hi.signum()) {
            (Ordering::Greater, _) => Ok(Ordering::Greater),
            (_, Ordering::Less) => Ok(Ordering::Less),
            (Ordering::Equal, Ordering::Equal) => Ok(Ordering::Equal),
            _ => Err(self.ambiguous()),
        }
    }

    pub fn floor(&self) -> Result<BigInt> {
        let (a, b) = (self.lo.floor(), self.hi.floor());
        if a == b {
            Ok(a)
        } else {
            Err(self.ambiguous())
        }
    }

    pub fn ceil(&self) -> Result<BigInt> {
        let (a, b) = (self.lo.ceil(), self.hi.ceil());
        if a == b {
            Ok(a)
        } else {
            Err(self.ambiguous())
        }
    }
}

/// A real number that is either known exactly or known to lie in a
/// certified interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Real {
    Exact(Surd),
    Interval(Enclosure),
}

impl Real {
    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Real::Exact(Surd::from_int(v))
    }

    /// Exact dyadic value of a fixed-point number.
    pub fn from_fixed(t: &Fixed) -> Self {
        let den = BigInt::from(1) << t.bits();
        Real::Exact(Surd::new(t.mantissa().clone(), BigInt::from(0), 0, den).expect("nonzero denominator"))
    }

    fn enclose_at(&self, bits: u32) -> Enclosure {
        match self {
            Real::Exact(s) => s.enclose(bits),
            Real::Interval(e) => e.clone(),
        }
    }

    fn binary(
        &self,
        other: &Real,
        exact: impl FnOnce(&Surd, &Surd) -> Result<Surd>,
        interval: impl FnOnce(&Enclosure, &Enclosure) -> Result<Enclosure>,
    ) -> Result<Real> {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Ok(Real::Exact(exact(a, b)?)),
            (Real::Interval(a), b) => Ok(Real::Interval(interval(a, &b.enclose_at(a.bits()))?)),
            (a, Real::Interval(b)) => Ok(Real::Interval(interval(&a.enclose_at(b.bits()), b)?)),
        }
    }

    pub fn add(&self, other: &Real) -> Result<Real> {
        self.binary(other, |a, b| a.add(b), |a, b| Ok(a.add(b)))
    }

    pub fn sub(&self, other: &Real) -> Result<Real> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Real) -> Result<Real> {
        self.binary(other, |a, b| a.mul(b), |a, b| Ok(a.mul(b)))
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Exact(s) => Real::Exact(s.neg()),
            Real::Interval(e) => Real::Interval(e.neg()),
        }
    }

    pub fn mul_int<T: Into<BigInt>>(&self, k: T) -> Real {
        let k = k.into();
        match self {
            Real::Exact(s) => Real::Exact(s.mul_int(k)),
            Real::Interval(e) => Real::Interval(e.mul_int(&k)),
        }
    }

    pub fn add_int<T: Into<BigInt>>(&self, k: T) -> Real {
        self.add(&Real::from_int(k)).expect("integers combine with any field")
    }

    pub fn recip(&self) -> Result<Real> {
        match self {
            Real::Exact(s) => Ok(Real::Exact(s.recip()?)),
            Real::Interval(e) => Ok(Real::Interval(e.recip()?)),
        }
    }

    pub fn sign(&self) -> Result<Ordering> {
        match self {
            Real::Exact(s) => Ok(s.sign()),
            Real::Interval(e) => e.sign(),
        }
    }

    pub fn cmp_real(&self, other: &Real) -> Result<Ordering> {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) if !a.is_rational() && !b.is_rational() && a.radicand() != b.radicand() => {
                // distinct quadratic fields: the values differ, so refinement terminates
                let mut bits = 128;
                loop {
                    if let Ok(ord) = a.enclose(bits).add(&b.enclose(bits).neg()).sign() {
                        return Ok(ord);
                    }
                    bits *= 2;
                }
            }
            _ => self.sub(other)?.sign(),
        }
    }

    pub fn floor(&self) -> Result<BigInt> {
        match self {
            Real::Exact(s) => Ok(s.floor()),
            Real::Interval(e) => e.floor(),
        }
    }

    pub fn ceil(&self) -> Result<BigInt> {
        match self {
            Real::Exact(s) => Ok(s.ceil()),
            Real::Interval(e) => e.ceil(),
        }
    }

    /// Point value with `bits` fractional bits (interval midpoints are
    /// rescaled).
    pub fn approx(&self, bits: u32) -> Fixed {
        match self {
            Real::Exact(s) => s.approx(bits),
            Real::Interval(e) => e.midpoint().rescale(bits, Round::Floor),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(s) => s.to_f64(),
            Real::Interval(e) => e.midpoint().to_f64(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval(lo: f64, hi: f64) -> Real {
        let f = |x: f64| Fixed::from_ratio(&BigInt::from((x * 65536.0) as i64), &BigInt::from(65536), 40, Round::Floor);
        Real::Interval(Enclosure::new(f(lo), f(hi), Some(30)))
    }

    #[test]
    fn interval_sign_and_ambiguity() {
        assert_eq!(interval(0.5, 0.75).sign().unwrap(), Ordering::Greater);
        assert!(matches!(interval(-0.5, 0.75).sign(), Err(Error::AmbiguousComparison { digits: 30 })));
    }

    #[test]
    fn exact_plus_interval_promotes() {
        let s = Real::Exact(Surd::rational(1, 2).unwrap());
        let r = s.add(&interval(1.0, 1.25)).unwrap();
        assert!(!r.is_exact());
        assert_eq!(r.floor().unwrap(), BigInt::from(1));
        assert!(interval(0.75, 1.25).floor().is_err());
    }

    #[test]
    fn interval_recip_contains_true_value() {
        let r = interval(2.0, 4.0).recip().unwrap();
        if let Real::Interval(e) = r {
            assert!(e.lower().to_f64() <= 0.25 && e.upper().to_f64() >= 0.5);
        } else {
            unreachable!();
        }
        assert!(interval(-1.0, 1.0).recip().is_err());
    }
}
