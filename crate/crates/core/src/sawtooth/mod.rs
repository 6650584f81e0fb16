//! The sawtooth `psi(t) = t - floor(t) - 1/2`, its Fourier partial sums,
//! the indicator identity, and the shifted sums
//! `Sigma^(l)(f, x) = sum_{m <= x} f(m) psi((m + l)/alpha)`.

mod decomp;

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;

pub use decomp::{
    decomposition_curve, decomposition_report, error_curve, residual_closed_with, DecompositionReport, ErrorCurveRow,
};

use crate::alpha::{AlphaValue, Angle, LinearForm, Rotation};
use crate::arith::FunctionTable;
use crate::error::{Error, Result};
use crate::numeric::{ComplexSum, Fixed, NeumaierSum, Real, Round, Surd, EXACT_EVAL_BITS};

/// `psi(t)` in double precision.
pub fn psi(t: f64) -> f64 {
    t - t.floor() - 0.5
}

/// `psi(t)` at the precision of `t`.
pub fn psi_fixed(t: &Fixed) -> Fixed {
    t.frac().sub(&Fixed::from_ratio(&BigInt::from(1), &BigInt::from(2), t.bits(), Round::Floor))
}

/// `psi(t)` for an exact or enclosed real.
pub fn psi_real(t: &Real) -> Result<Real> {
    let half = Real::Exact(Surd::rational(1, 2)?);
    t.add_int(-t.floor()?).sub(&half)
}

/// `sum_{1 <= |j| <= J} c_j e(jt)` with `c_j = -1/(2 pi i j)`, which is the
/// real sum `-sum_{j=1}^{J} sin(2 pi j t)/(pi j)`.
pub fn psi_partial_sum(t: f64, j_max: u32) -> f64 {
    let t = t - t.floor();
    let mut s = NeumaierSum::new();
    for j in 1..=j_max {
        let j = j as f64;
        s.add(-(2.0 * PI * j * t).sin() / (PI * j));
    }
    s.value()
}

/// `sum_{|j| > J} |c_j|^2 = (1/(2 pi^2)) sum_{j > J} 1/j^2`, the squared L2
/// distance between `psi` and its partial sum of order `J`.
pub fn psi_tail_l2(j_max: u32) -> f64 {
    // Euler-Maclaurin for the trigamma tail beyond a direct head of 64 terms.
    let head_end = j_max.max(64) as f64;
    let mut head = NeumaierSum::new();
    for j in (j_max + 1)..=(j_max.max(64)) {
        head.add(1.0 / (j as f64 * j as f64));
    }
    let n = head_end;
    let tail = 1.0 / n - 1.0 / (2.0 * n * n) + 1.0 / (6.0 * n.powi(3)) - 1.0 / (30.0 * n.powi(5)) + 1.0 / (42.0 * n.powi(7));
    (head.value() + tail) / (2.0 * PI * PI)
}

/// Which endpoint of the arc of length `1/alpha` ending at `0 mod 1` is
/// included in the indicator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndicatorConvention {
    /// `(-1/alpha, 0]`: the membership criterion for Beatty sets.
    UpperClosed,
    /// `[-1/alpha, 0)`: the exact value of `1/alpha + psi(t) - psi(t + 1/alpha)`.
    LowerClosed,
}

/// The indicator of `t` in the arc given by `conv`, with `inv_alpha = 1/alpha`.
pub fn indicator_with(t: &Real, inv_alpha: &Real, conv: IndicatorConvention) -> Result<bool> {
    let shifted = t.add(inv_alpha)?;
    let v = match conv {
        IndicatorConvention::UpperClosed => shifted.ceil()? - t.ceil()?,
        IndicatorConvention::LowerClosed => shifted.floor()? - t.floor()?,
    };
    Ok(v == BigInt::from(1))
}

/// `1` iff `frac(t)` lies in `(1 - 1/alpha, 1)` or equals `0`.
pub fn indicator_alpha(t: &Real, alpha: &AlphaValue) -> Result<bool> {
    alpha.check_modulus()?;
    indicator_with(t, &alpha.to_real().recip()?, IndicatorConvention::UpperClosed)
}

/// `1/alpha + psi(t) - psi(t + 1/alpha)`, evaluated without rounding for
/// exact inputs and as an enclosure otherwise.
pub fn sawtooth_identity(t: &Real, alpha: &AlphaValue) -> Result<Real> {
    let inv = alpha.to_real().recip()?;
    inv.add(&psi_real(t)?)?.sub(&psi_real(&t.add(&inv)?)?)
}

/// Rotation by `1/alpha`. Decimal moduli are inverted as enclosures and the
/// midpoint is used.
pub fn inverse_rotation(alpha: &AlphaValue) -> Result<Rotation> {
    match alpha {
        AlphaValue::Decimal(dv) => {
            let inv = alpha.to_real().recip()?;
            let bits = dv.working_bits().max(EXACT_EVAL_BITS);
            Ok(Rotation::from_angle(Angle::Phase(inv.approx(bits).to_phase())))
        }
        _ => Ok(alpha.recip()?.rotation()),
    }
}

/// Running sums `Sigma^(l)(f, x)` for `x = 0..=X`, entry 0 being the empty
/// sum, for the rotation `theta = 1/alpha`.
pub fn sigma_ell_prefix_rotation(f: &FunctionTable, rot: &Rotation, ell: i64, x_max: usize) -> Result<Vec<Complex64>> {
    f.require(x_max)?;
    let mut out = Vec::with_capacity(x_max + 1);
    out.push(Complex64::new(0.0, 0.0));
    let mut orbit = rot.orbit(1 + ell);
    if let Some(v) = f.int_values() {
        let mut s = NeumaierSum::new();
        for &fm in &v[1..=x_max] {
            if fm != 0 {
                s.add(fm as f64 * orbit.current().psi_f64());
            }
            orbit.advance();
            out.push(Complex64::new(s.value(), 0.0));
        }
    } else {
        let mut s = ComplexSum::new();
        for m in 1..=x_max {
            s.add(f.value(m) * orbit.current().psi_f64());
            orbit.advance();
            out.push(s.value());
        }
    }
    Ok(out)
}

/// Running sums `Sigma^(l)(f, x) = sum_{m <= x} f(m) psi((m + l)/alpha)` for
/// `x = 0..=X`.
pub fn sigma_ell_prefix(f: &FunctionTable, alpha: &AlphaValue, ell: i64, x_max: usize) -> Result<Vec<Complex64>> {
    if alpha.cmp_value(&AlphaValue::integer(0))? != std::cmp::Ordering::Greater {
        return Err(Error::out_of_range("alpha", format!("{alpha} must be positive")));
    }
    sigma_ell_prefix_rotation(f, &inverse_rotation(alpha)?, ell, x_max)
}

/// `sum_{m <= x} f(m)`.
pub fn plain_sum(f: &FunctionTable, x: usize) -> Result<Complex64> {
    f.require(x)?;
    Ok(f.plain_sum(x))
}

/// `S_{alpha,beta}(f, x)`: the sum of `f(m)` over Beatty elements `m <= x`,
/// deciding each `m` by an exact membership test.
pub fn beatty_sum(f: &FunctionTable, alpha: &AlphaValue, beta: &AlphaValue, x: usize) -> Result<Complex64> {
    f.require(x)?;
    alpha_at_least_one(alpha)?;
    beta.check_shift()?;
    let form = LinearForm::new(alpha, beta)?;
    let mut s = ComplexSum::new();
    let is_one = alpha.as_integer() == Some(1);
    for m in 1..=x {
        let member = if is_one { m as i64 > beta_floor(beta)? } else { form.is_member(m as i64)? };
        if member {
            s.add(f.value(m));
        }
    }
    Ok(s.value())
}

/// The same sum computed by enumerating `floor(n alpha + beta)`.
pub fn beatty_sum_enumerated(f: &FunctionTable, alpha: &AlphaValue, beta: &AlphaValue, x: usize) -> Result<Complex64> {
    f.require(x)?;
    let w = crate::alpha::beatty_enumerate(alpha, beta, x as u64)?;
    let mut s = ComplexSum::new();
    for &m in w.elements() {
        s.add(f.value(m as usize));
    }
    Ok(s.value())
}

fn alpha_at_least_one(alpha: &AlphaValue) -> Result<()> {
    if alpha.cmp_value(&AlphaValue::integer(1))? == std::cmp::Ordering::Less {
        return Err(Error::out_of_range("alpha", format!("{alpha} must be at least 1")));
    }
    Ok(())
}

fn beta_floor(beta: &AlphaValue) -> Result<i64> {
    use num_traits::ToPrimitive;
    beta.to_real().floor()?.to_i64().ok_or_else(|| Error::out_of_range("beta", "too large"))
}
