use std::f64::consts::TAU;

use num_complex::Complex64;

use super::AlphaValue;
use crate::numeric::{Fixed, Phase, Round, EXACT_EVAL_BITS};

/// A point of the circle `R/Z`.
///
/// Rational points are stored exactly; irrational ones as a 192-bit
/// [`Phase`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Angle {
    /// `num/den` with `0 <= num < den`.
    Rational { num: u64, den: u64 },
    Phase(Phase),
}

impl Angle {
    pub fn is_zero(&self) -> bool {
        match self {
            Angle::Rational { num, .. } => *num == 0,
            Angle::Phase(p) => p.is_zero(),
        }
    }

    /// Representative in `[0, 1)`.
    pub fn frac_f64(&self) -> f64 {
        match self {
            Angle::Rational { num, den } => *num as f64 / *den as f64,
            Angle::Phase(p) => p.to_f64(),
        }
    }

    /// Representative in `[-1/2, 1/2)`.
    pub fn centered_f64(&self) -> f64 {
        match self {
            Angle::Rational { num, den } => {
                let (n, d) = (*num as i128, *den as i128);
                let c = if 2 * n >= d { n - d } else { n };
                c as f64 / d as f64
            }
            Angle::Phase(p) => {
                let f = p.to_f64();
                if *p >= Phase::HALF {
                    f - 1.0
                } else {
                    f
                }
            }
        }
    }

    /// Sawtooth `psi(t) = t - floor(t) - 1/2` at this point.
    pub fn psi_f64(&self) -> f64 {
        match self {
            Angle::Rational { num, den } => (2 * *num as i128 - *den as i128) as f64 / (2 * *den as i128) as f64,
            Angle::Phase(p) => p.psi_f64(),
        }
    }

    /// `exp(2*pi*i*t)`.
    pub fn cis(&self) -> Complex64 {
        let theta = TAU * self.centered_f64();
        Complex64::new(theta.cos(), theta.sin())
    }

    /// `self + other`, and whether the sum wrapped past 1.
    pub fn overflowing_add(self, other: Angle) -> (Angle, bool) {
        match (self, other) {
            (Angle::Phase(a), Angle::Phase(b)) => {
                let (s, w) = a.overflowing_add(b);
                (Angle::Phase(s), w)
            }
            (Angle::Rational { num: a, den }, Angle::Rational { num: b, den: e }) if den == e => {
                let s = a as u128 + b as u128;
                if s >= den as u128 {
                    (Angle::Rational { num: (s - den as u128) as u64, den }, true)
                } else {
                    (Angle::Rational { num: s as u64, den }, false)
                }
            }
            (a, b) => {
                let (s, w) = a.to_phase().overflowing_add(b.to_phase());
                (Angle::Phase(s), w)
            }
        }
    }

    /// Nearest-below 192-bit phase.
    pub fn to_phase(&self) -> Phase {
        match self {
            Angle::Rational { num, den } => {
                Fixed::from_ratio(&(*num).into(), &(*den).into(), EXACT_EVAL_BITS, Round::Floor).to_phase()
            }
            Angle::Phase(p) => *p,
        }
    }
}

/// Generator of the orbit `n * theta mod 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rotation {
    step: Angle,
}

impl Rotation {
    /// Rotation by the fractional part of `v`. Decimal values use their
    /// literal; quadratic values are truncated to 192 bits.
    pub fn of(v: &AlphaValue) -> Rotation {
        let step = match v {
            AlphaValue::Rational { p, q } => Angle::Rational { num: p.rem_euclid(*q) as u64, den: *q as u64 },
            _ => {
                let bits = match v {
                    AlphaValue::Decimal(dv) => dv.working_bits().max(EXACT_EVAL_BITS),
                    _ => EXACT_EVAL_BITS,
                };
                Angle::Phase(v.to_real().approx(bits).to_phase())
            }
        };
        Rotation { step }
    }

    pub fn from_angle(step: Angle) -> Rotation {
        Rotation { step }
    }

    pub fn step(&self) -> Angle {
        self.step
    }

    /// `n * theta mod 1`.
    pub fn angle_at(&self, n: i64) -> Angle {
        match self.step {
            Angle::Rational { num, den } => {
                let r = (num as i128 * n as i128).rem_euclid(den as i128);
                Angle::Rational { num: r as u64, den }
            }
            Angle::Phase(p) => Angle::Phase(p.wrapping_mul_signed(n)),
        }
    }

    /// Orbit `n*theta, (n+1)*theta, ...` starting at `n = start`.
    pub fn orbit(&self, start: i64) -> Orbit {
        Orbit { step: self.step, current: self.angle_at(start), index: start }
    }
}

/// Incremental walk along `n * theta mod 1`.
///
/// Each step is one exact addition on the circle, so after `k` steps the
/// angle equals `angle_at(start + k)` bit for bit.
#[derive(Clone, Debug)]
pub struct Orbit {
    step: Angle,
    current: Angle,
    index: i64,
}

impl Orbit {
    pub fn current(&self) -> Angle {
        self.current
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    /// Moves to the next index; returns whether the angle wrapped past 1.
    pub fn advance(&mut self) -> bool {
        let (next, wrapped) = self.current.overflowing_add(self.step);
        self.current = next;
        self.index += 1;
        wrapped
    }
}

impl Iterator for Orbit {
    type Item = Angle;

    fn next(&mut self) -> Option<Angle> {
        let a = self.current;
        self.advance();
        Some(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rotation_is_exact() {
        let r = Rotation::of(&AlphaValue::rational(2, 3).unwrap());
        let mut o = r.orbit(0);
        let seen: Vec<_> = (0..4).map(|_| o.next().unwrap().frac_f64()).collect();
        assert_eq!(seen, vec![0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0]);
        assert!(r.angle_at(3).is_zero());
        assert_eq!(r.angle_at(-1), Angle::Rational { num: 1, den: 3 });
    }

    #[test]
    fn incremental_matches_direct() {
        let r = Rotation::of(&"quad:0,1,2,1".parse().unwrap());
        let mut o = r.orbit(5);
        for k in 0..1000 {
            assert_eq!(o.current(), r.angle_at(5 + k));
            o.advance();
        }
        let f = r.angle_at(7).frac_f64();
        assert!((f - (7.0 * 2f64.sqrt()).fract()).abs() < 1e-14);
    }

    #[test]
    fn psi_values() {
        let half = Angle::Rational { num: 1, den: 2 };
        assert_eq!(half.psi_f64(), 0.0);
        assert_eq!(Angle::Rational { num: 0, den: 5 }.psi_f64(), -0.5);
        let c = Angle::Rational { num: 1, den: 4 }.cis();
        assert!(c.re.abs() < 1e-15 && (c.im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn wrap_flag() {
        let r = Rotation::of(&AlphaValue::rational(3, 4).unwrap());
        let mut o = r.orbit(0);
        let wraps: Vec<bool> = (0..4).map(|_| o.advance()).collect();
        assert_eq!(wraps, vec![false, true, true, true]);
    }
}
