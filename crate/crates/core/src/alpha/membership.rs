use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::AlphaValue;
use crate::error::{Error, Result};
use crate::numeric::{sign_surd, Enclosure, Real, Surd};

/// The affine map `n -> n*alpha + beta`, prepared for repeated exact
/// comparisons against integers.
#[derive(Clone, Debug)]
pub struct LinearForm {
    kind: Kind,
    alpha_f64: f64,
    beta_f64: f64,
}

#[derive(Clone, Debug)]
enum Kind {
    /// `(n*a0 + b0 + (n*a1 + b1)*sqrt(d)) / r` with machine integers.
    Small { a0: i128, a1: i128, b0: i128, b1: i128, r: i128, d: i128 },
    /// Same field, unbounded integers.
    Big { alpha: Surd, beta: Surd },
    /// Quadratic values over different radicands; never hits an integer
    /// exactly, so refining enclosures always terminates.
    Mixed { alpha: Surd, beta: Surd },
    Interval { alpha: Real, beta: Real },
}

fn small_parts(s: &Surd) -> Option<(i128, i128, i128)> {
    let (p, q, _, r) = s.parts();
    Some((p.to_i128()?, q.to_i128()?, r.to_i128()?))
}

fn isqrt_u128(v: u128) -> u128 {
    let mut s = (v as f64).sqrt() as u128;
    while s.checked_mul(s).is_none_or(|sq| sq > v) {
        s -= 1;
    }
    while (s + 1).checked_mul(s + 1).is_some_and(|sq| sq <= v) {
        s += 1;
    }
    s
}

/// Sign of `p + q*sqrt(d)`, or `None` on overflow.
pub(crate) fn sign_small(p: i128, q: i128, d: i128) -> Option<Ordering> {
    if q == 0 || d == 0 {
        return Some(p.cmp(&0));
    }
    if p == 0 || (p > 0) == (q > 0) {
        return Some(q.cmp(&0));
    }
    let lhs = p.checked_mul(p)?;
    let rhs = q.checked_mul(q)?.checked_mul(d)?;
    let c = lhs.cmp(&rhs);
    Some(if p > 0 { c } else { c.reverse() })
}

/// `floor(q*sqrt(d))` for non-square `d`, or `None` on overflow.
fn floor_q_sqrt(q: i128, d: i128) -> Option<i128> {
    if q == 0 || d == 0 {
        return Some(0);
    }
    let sq = (q.unsigned_abs()).checked_mul(q.unsigned_abs())?.checked_mul(d as u128)?;
    let s = isqrt_u128(sq) as i128;
    Some(if q > 0 { s } else { -s - 1 })
}

impl LinearForm {
    pub fn new(alpha: &AlphaValue, beta: &AlphaValue) -> Result<Self> {
        if let (Some((pa, qa, da, ra)), Some((pb, qb, db, rb))) = (alpha.exact_parts(), beta.exact_parts()) {
            if da == db || da == 0 || db == 0 {
                // i64 parts, so every product below fits in i128
                let kind = Kind::Small { a0: pa * rb, a1: qa * rb, b0: pb * ra, b1: qb * ra, r: ra * rb, d: da.max(db) };
                return Ok(LinearForm { kind, alpha_f64: alpha.to_f64(), beta_f64: beta.to_f64() });
            }
        }
        Ok(Self::from_reals(alpha.to_real(), beta.to_real()))
    }

    /// Same as [`LinearForm::new`] for values already in [`Real`] form.
    pub fn from_reals(alpha: Real, beta: Real) -> Self {
        let (alpha_f64, beta_f64) = (alpha.to_f64(), beta.to_f64());
        let kind = match (alpha, beta) {
            (Real::Exact(a), Real::Exact(b)) => {
                let (da, db) = (a.radicand(), b.radicand());
                if da != 0 && db != 0 && da != db {
                    Kind::Mixed { alpha: a, beta: b }
                } else {
                    let d = da.max(db) as i128;
                    match (small_parts(&a), small_parts(&b)) {
                        (Some((pa, qa, ra)), Some((pb, qb, rb))) if ra < 1 << 40 && rb < 1 << 40 => Kind::Small {
                            a0: pa * rb,
                            a1: qa * rb,
                            b0: pb * ra,
                            b1: qb * ra,
                            r: ra * rb,
                            d,
                        },
                        _ => Kind::Big { alpha: a, beta: b },
                    }
                }
            }
            (a, b) => Kind::Interval { alpha: a, beta: b },
        };
        LinearForm { kind, alpha_f64, beta_f64 }
    }

    fn big_value(alpha: &Surd, beta: &Surd, n: i64) -> Result<Surd> {
        alpha.mul_int(n).add(beta)
    }

    fn real_value(alpha: &Real, beta: &Real, n: i64) -> Result<Real> {
        alpha.mul_int(n).add(beta)
    }

    fn mixed_enclosure(alpha: &Surd, beta: &Surd, n: i64, bits: u32) -> Enclosure {
        alpha.enclose(bits).mul_int(&BigInt::from(n)).add(&beta.enclose(bits))
    }

    /// Exact ordering of `n*alpha + beta` against the integer `m`.
    pub fn compare(&self, n: i64, m: i64) -> Result<Ordering> {
        match &self.kind {
            Kind::Small { a0, a1, b0, b1, r, d } => {
                let (n, m) = (n as i128, m as i128);
                let parts = (|| {
                    let p = n.checked_mul(*a0)?.checked_add(*b0)?.checked_sub(m.checked_mul(*r)?)?;
                    let q = n.checked_mul(*a1)?.checked_add(*b1)?;
                    sign_small(p, q, *d)
                })();
                match parts {
                    Some(ord) => Ok(ord),
                    None => {
                        let (n, m) = (BigInt::from(n), BigInt::from(m));
                        let p = &n * a0 + b0 - &m * r;
                        let q = &n * a1 + b1;
                        Ok(sign_surd(&p, &q, *d as u64))
                    }
                }
            }
            Kind::Big { alpha, beta } => Ok(Self::big_value(alpha, beta, n)?.add_int(-m).sign()),
            Kind::Mixed { alpha, beta } => {
                let mut bits = 128;
                loop {
                    let e = Self::mixed_enclosure(alpha, beta, n, bits).add(&Surd::from_int(-m).enclose(bits));
                    if let Ok(ord) = e.sign() {
                        return Ok(ord);
                    }
                    bits *= 2;
                }
            }
            Kind::Interval { alpha, beta } => Self::real_value(alpha, beta, n)?.add_int(-m).sign(),
        }
    }

    /// Exact `floor(n*alpha + beta)`.
    pub fn floor(&self, n: i64) -> Result<i64> {
        let big = match &self.kind {
            Kind::Small { a0, a1, b0, b1, r, d } => {
                let n128 = n as i128;
                let fast = (|| {
                    let p = n128.checked_mul(*a0)?.checked_add(*b0)?;
                    let q = n128.checked_mul(*a1)?.checked_add(*b1)?;
                    p.checked_add(floor_q_sqrt(q, *d)?).map(|t| t.div_euclid(*r))
                })();
                if let Some(v) = fast {
                    return v.to_i64().ok_or_else(|| Error::CapacityExceeded(format!("floor at n = {n}")));
                }
                let a = Surd::new((*a0).into(), (*a1).into(), *d as u64, (*r).into())?;
                let b = Surd::new((*b0).into(), (*b1).into(), *d as u64, (*r).into())?;
                Self::big_value(&a, &b, n)?.floor()
            }
            Kind::Big { alpha, beta } => Self::big_value(alpha, beta, n)?.floor(),
            Kind::Mixed { alpha, beta } => {
                let mut bits = 128;
                loop {
                    if let Ok(f) = Self::mixed_enclosure(alpha, beta, n, bits).floor() {
                        break f;
                    }
                    bits *= 2;
                }
            }
            Kind::Interval { alpha, beta } => Self::real_value(alpha, beta, n)?.floor()?,
        };
        big.to_i64().ok_or_else(|| Error::CapacityExceeded(format!("floor at n = {n}")))
    }

    /// Whether `m = floor(n*alpha + beta)` for some `n >= 1`.
    ///
    /// Requires `alpha > 1`. Above the threshold `m > alpha + beta - 1` the
    /// only candidate is `n = ceil((m - beta)/alpha)`; below it a short
    /// direct search is used.
    pub fn is_member(&self, m: i64) -> Result<bool> {
        if m < 0 {
            return Ok(false);
        }
        if self.compare(1, m + 1)? != Ordering::Less {
            // m <= alpha + beta - 1
            for n in 1..=m.saturating_add(2) {
                let f = self.floor(n)?;
                if f == m {
                    return Ok(true);
                }
                if f > m {
                    break;
                }
            }
            return Ok(false);
        }
        let guess = ((m as f64 - self.beta_f64) / self.alpha_f64).ceil();
        let mut n = if guess.is_finite() { (guess as i64).max(1) } else { 1 };
        // smallest n >= 1 with n*alpha + beta >= m
        while self.compare(n, m)? == Ordering::Less {
            n += 1;
        }
        while n > 1 && self.compare(n - 1, m)? != Ordering::Less {
            n -= 1;
        }
        Ok(self.compare(n, m + 1)? == Ordering::Less)
    }
}

/// Exact ordering of `n*alpha + beta` against `m`.
pub fn value_compare(n: i64, alpha: &AlphaValue, beta: &AlphaValue, m: i64) -> Result<Ordering> {
    LinearForm::new(alpha, beta)?.compare(n, m)
}

/// Whether `m` belongs to the Beatty set `{floor(n*alpha + beta) : n >= 1}`.
pub fn beatty_member(m: i64, alpha: &AlphaValue, beta: &AlphaValue) -> Result<bool> {
    alpha.check_modulus()?;
    beta.check_shift()?;
    LinearForm::new(alpha, beta)?.is_member(m)
}

/// The elements of a Beatty set up to `x`.
#[derive(Clone, Debug, Serialize)]
pub struct BeattyWindow {
    pub alpha: AlphaValue,
    pub beta: AlphaValue,
    pub x: u64,
    elements: Vec<u64>,
}

impl BeattyWindow {
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: u64) -> bool {
        self.elements.binary_search(&m).is_ok()
    }

    pub fn gaps(&self) -> impl Iterator<Item = u64> + '_ {
        self.elements.windows(2).map(|w| w[1] - w[0])
    }

    /// 0/1 membership vector indexed by `m` in `0..=x`.
    pub fn indicator(&self) -> Vec<bool> {
        let mut v = vec![false; self.x as usize + 1];
        for &m in &self.elements {
            v[m as usize] = true;
        }
        v
    }
}

/// Lists `floor(n*alpha + beta)` for `n = 1, 2, ...` while it stays `<= x`,
/// evaluating every floor exactly.
pub fn beatty_enumerate(alpha: &AlphaValue, beta: &AlphaValue, x: u64) -> Result<BeattyWindow> {
    if alpha.cmp_value(&AlphaValue::integer(1))? == Ordering::Less {
        return Err(Error::out_of_range("alpha", format!("{alpha} must be at least 1")));
    }
    beta.check_shift()?;
    if x == 0 || x > i64::MAX as u64 / 2 {
        return Err(Error::out_of_range("x", format!("{x} must be a positive integer")));
    }
    let form = LinearForm::new(alpha, beta)?;
    let mut elements = Vec::with_capacity((x as f64 / alpha.to_f64()) as usize + 2);
    for n in 1.. {
        let f = form.floor(n)?;
        if f > x as i64 {
            break;
        }
        if f >= 1 && elements.last() != Some(&(f as u64)) {
            elements.push(f as u64);
        }
    }
    Ok(BeattyWindow { alpha: alpha.clone(), beta: beta.clone(), x, elements })
}
