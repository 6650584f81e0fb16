use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::alpha::{AlphaValue, LinearForm};
use crate::arith::FunctionTable;
use crate::error::{Error, Result};
use crate::numeric::{ComplexSum, Real};

use super::{inverse_rotation, IndicatorConvention};

/// `S_{alpha,beta}(f, x)` split into its main term, the two shifted sawtooth
/// sums, and the residual.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionReport {
    pub alpha: AlphaValue,
    pub beta: i64,
    pub x: u64,
    pub epsilon: f64,
    /// `S_{alpha,beta}(f, x)`.
    pub s_beatty: Complex64,
    /// `S(f, x)`.
    pub s_plain: Complex64,
    /// `Sigma^(-beta)(f, x)`.
    pub sigma0: Complex64,
    /// `Sigma^(1-beta)(f, x)`.
    pub sigma1: Complex64,
    /// `S_beatty - S_plain/alpha - sigma0 + sigma1`.
    pub residual_def: Complex64,
    /// `-sum_{m <= min(x, alpha+beta-1)} f(m) 1*((m - beta)/alpha)` with
    /// the lower-closed arc `[-1/alpha, 0)`.
    pub residual_closed: Complex64,
    /// `S_beatty - S_plain/alpha`.
    pub error: Complex64,
    /// `||f|_x||_2`.
    pub l2norm: f64,
    /// `(alpha + beta) M(f, ceil(alpha + beta))`.
    pub residual_bound: f64,
    /// `|error| / (||f|_x||_2 (log x)^{1/2} (log log x)^{3/2 + eps})`, for `x >= 8`.
    pub normalized_error: Option<f64>,
    /// `|error| / (x^{3/4 + eps} M(f, x))`, for `x >= 8`.
    pub abs_normalized_error: Option<f64>,
}

impl DecompositionReport {
    pub fn residual_gap(&self) -> f64 {
        (self.residual_def - self.residual_closed).norm()
    }
}

fn safe_ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

fn validate(f: &FunctionTable, alpha: &AlphaValue, beta: &AlphaValue, x_max: usize) -> Result<i64> {
    if alpha.is_rational() {
        return Err(Error::RationalAlpha(alpha.to_string()));
    }
    let b = beta.as_integer().ok_or_else(|| Error::BetaNotInteger(beta.to_string()))?;
    if b < 0 {
        return Err(Error::out_of_range("beta", format!("{b} must be non-negative")));
    }
    alpha.check_modulus()?;
    if x_max == 0 {
        return Err(Error::out_of_range("x", "must be positive"));
    }
    f.require(x_max)?;
    Ok(b)
}

/// `-sum_{1 <= m <= min(x, alpha+beta-1)} f(m) 1((m - beta)/alpha)` under
/// the chosen arc convention.
pub fn residual_closed_with(
    f: &FunctionTable,
    alpha: &AlphaValue,
    beta: i64,
    x: usize,
    conv: IndicatorConvention,
) -> Result<Complex64> {
    let form = LinearForm::new(alpha, &AlphaValue::integer(beta))?;
    let inv = LinearForm::from_reals(alpha.to_real().recip()?, Real::from_int(0));
    let mut s = ComplexSum::new();
    let mut m = 1i64;
    // m <= alpha + beta - 1  <=>  1*alpha + beta >= m + 1
    while m as usize <= x.min(f.n()) && form.compare(1, m + 1)? != std::cmp::Ordering::Less {
        let k = m - beta;
        let hit = match conv {
            IndicatorConvention::LowerClosed => inv.floor(k + 1)? - inv.floor(k)?,
            IndicatorConvention::UpperClosed => ceil_of(&inv, k + 1)? - ceil_of(&inv, k)?,
        };
        if hit == 1 {
            s.add(-f.value(m as usize));
        }
        m += 1;
    }
    Ok(s.value())
}

fn ceil_of(form: &LinearForm, n: i64) -> Result<i64> {
    // ceil(t) = -floor(-t), and -n/alpha is the form at -n
    Ok(-form.floor(-n)?)
}

/// Decomposition of `S_{alpha,beta}(f, x)` at a single `x`.
pub fn decomposition_report(
    f: &FunctionTable,
    alpha: &AlphaValue,
    beta: &AlphaValue,
    x: usize,
    epsilon: f64,
) -> Result<DecompositionReport> {
    Ok(decomposition_curve(f, alpha, beta, &[x as u64], epsilon)?.pop().expect("one checkpoint"))
}

/// Decomposition reports at increasing checkpoints, in one pass over `m`.
///
/// Requires irrational `alpha > 1` and an integer `beta >= 0`.
pub fn decomposition_curve(
    f: &FunctionTable,
    alpha: &AlphaValue,
    beta: &AlphaValue,
    checkpoints: &[u64],
    epsilon: f64,
) -> Result<Vec<DecompositionReport>> {
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidValue("checkpoints must be strictly increasing".into()));
    }
    let x_max = checkpoints.last().copied().unwrap_or(0) as usize;
    let b = validate(f, alpha, beta, x_max)?;
    if checkpoints[0] == 0 {
        return Err(Error::out_of_range("x", "checkpoints must be positive"));
    }
    let form = LinearForm::new(alpha, beta)?;
    let inv_real = alpha.to_real().recip()?;
    let inv = inv_real.to_f64();
    let residual_full = residual_closed_with(f, alpha, b, x_max, IndicatorConvention::LowerClosed)?;
    // number of small m that enter the closed residual
    let small_m = {
        let mut m = 0i64;
        while form.compare(1, m + 2)? != std::cmp::Ordering::Less {
            m += 1;
        }
        m as usize
    };
    let alpha_plus_beta = alpha.to_f64() + b as f64;
    let shift_arg = form.floor(1)? + 1; // ceil(alpha + beta) for irrational alpha
    let residual_bound = alpha_plus_beta * f.m_bound(shift_arg.to_usize().unwrap_or(usize::MAX));

    let rot = inverse_rotation(alpha)?;
    let mut orbit = rot.orbit(1 - b);
    let mut psi_here = orbit.current().psi_f64();
    let (mut s_beatty, mut s_plain, mut sigma0, mut sigma1) =
        (ComplexSum::new(), ComplexSum::new(), ComplexSum::new(), ComplexSum::new());
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = checkpoints.iter().peekable();
    for m in 1..=x_max {
        orbit.advance();
        let psi_next = orbit.current().psi_f64();
        let fm = f.value(m);
        if fm != Complex64::new(0.0, 0.0) {
            s_plain.add(fm);
            if form.is_member(m as i64)? {
                s_beatty.add(fm);
            }
            sigma0.add(fm * psi_here);
            sigma1.add(fm * psi_next);
        }
        psi_here = psi_next;
        if next.peek().is_some_and(|&&c| c as usize == m) {
            next.next();
            let residual_closed = if m >= small_m {
                residual_full
            } else {
                residual_closed_with(f, alpha, b, m, IndicatorConvention::LowerClosed)?
            };
            let (sb, sp, s0, s1) = (s_beatty.value(), s_plain.value(), sigma0.value(), sigma1.value());
            let error = sb - sp * inv;
            let l2norm = f.l2_norm(m);
            let (normalized_error, abs_normalized_error) =
                normalisations(error.norm(), l2norm, f.m_bound(m), m as u64, epsilon);
            out.push(DecompositionReport {
                alpha: alpha.clone(),
                beta: b,
                x: m as u64,
                epsilon,
                s_beatty: sb,
                s_plain: sp,
                sigma0: s0,
                sigma1: s1,
                residual_def: error - s0 + s1,
                residual_closed,
                error,
                l2norm,
                residual_bound,
                normalized_error,
                abs_normalized_error,
            });
        }
    }
    Ok(out)
}

/// One row of an error curve: `S_{alpha,beta}(f, x)` against `S(f, x)/alpha`
/// and both normalisations of the difference.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorCurveRow {
    pub x: u64,
    pub s_beatty: Complex64,
    pub s_plain: Complex64,
    pub error: Complex64,
    pub l2norm: f64,
    pub normalized_error: Option<f64>,
    pub abs_normalized_error: Option<f64>,
}

fn normalisations(error: f64, l2norm: f64, m_bound: f64, x: u64, epsilon: f64) -> (Option<f64>, Option<f64>) {
    if x < 8 {
        return (None, None);
    }
    let xf = x as f64;
    let lx = xf.ln();
    (
        Some(safe_ratio(error, l2norm * lx.sqrt() * lx.ln().powf(1.5 + epsilon))),
        Some(safe_ratio(error, xf.powf(0.75 + epsilon) * m_bound)),
    )
}

/// `S_{alpha,beta}(f, x) - S(f, x)/alpha` at increasing checkpoints, for any
/// `alpha >= 1` and real `beta >= 0` (rational `alpha` included).
pub fn error_curve(
    f: &FunctionTable,
    alpha: &AlphaValue,
    beta: &AlphaValue,
    checkpoints: &[u64],
    epsilon: f64,
) -> Result<Vec<ErrorCurveRow>> {
    if checkpoints.is_empty() || checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidValue("checkpoints must be positive and strictly increasing".into()));
    }
    if alpha.cmp_value(&AlphaValue::integer(1))? == std::cmp::Ordering::Less {
        return Err(Error::out_of_range("alpha", format!("{alpha} must be at least 1")));
    }
    beta.check_shift()?;
    let x_max = *checkpoints.last().expect("non-empty") as usize;
    f.require(x_max)?;
    let window = crate::alpha::beatty_enumerate(alpha, beta, x_max as u64)?;
    let member = window.indicator();
    let inv = alpha.to_real().recip()?.to_f64();
    let (mut s_beatty, mut s_plain) = (ComplexSum::new(), ComplexSum::new());
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = checkpoints.iter().peekable();
    for (m, &inside) in member.iter().enumerate().take(x_max + 1).skip(1) {
        let fm = f.value(m);
        s_plain.add(fm);
        if inside {
            s_beatty.add(fm);
        }
        if next.peek().is_some_and(|&&c| c as usize == m) {
            next.next();
            let (sb, sp) = (s_beatty.value(), s_plain.value());
            let error = sb - sp * inv;
            let l2norm = f.l2_norm(m);
            let (normalized_error, abs_normalized_error) =
                normalisations(error.norm(), l2norm, f.m_bound(m), m as u64, epsilon);
            out.push(ErrorCurveRow {
                x: m as u64,
                s_beatty: sb,
                s_plain: sp,
                error,
                l2norm,
                normalized_error,
                abs_normalized_error,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{constant_table, identity_table, rademacher_table, sieve_tau_k, zero_table};
    use crate::rng;

    fn v(s: &str) -> AlphaValue {
        s.parse().unwrap()
    }

    const PI50: &str = "dec:3.1415926535897932384626433832795028841971693993751";

    #[test]
    fn sqrt2_has_no_residual() {
        let f = sieve_tau_k(1000, 2).unwrap();
        let r = decomposition_report(&f, &v("quad:0,1,2,1"), &AlphaValue::integer(0), 1000, 0.0).unwrap();
        assert_eq!(r.residual_closed, Complex64::new(0.0, 0.0));
        assert!(r.residual_def.norm() < 1e-8 * (1.0 + r.s_plain.norm()), "{}", r.residual_def);
    }

    #[test]
    fn pi_tau_residual_is_zero() {
        let f = sieve_tau_k(100, 2).unwrap();
        let r = decomposition_report(&f, &v(PI50), &AlphaValue::integer(0), 100, 0.0).unwrap();
        assert_eq!(r.residual_closed, Complex64::new(0.0, 0.0));
        assert!(r.residual_gap() < 1e-9);
    }

    #[test]
    fn zero_function_gives_zero_report() {
        let rows = error_curve(&zero_table(50), &AlphaValue::integer(2), &AlphaValue::integer(0), &[10, 50], 0.0).unwrap();
        assert!(rows.iter().all(|r| r.error.norm() == 0.0 && r.normalized_error == Some(0.0)));
        let r = decomposition_report(&zero_table(50), &v("quad:0,1,3,1"), &AlphaValue::integer(2), 50, 0.0).unwrap();
        for z in [r.s_beatty, r.s_plain, r.sigma0, r.sigma1, r.residual_def, r.residual_closed, r.error] {
            assert_eq!(z.norm(), 0.0);
        }
        assert_eq!(r.normalized_error, Some(0.0));
    }

    #[test]
    fn rejects_bad_parameters() {
        let f = constant_table(20, 1);
        let zero = AlphaValue::integer(0);
        assert!(matches!(decomposition_report(&f, &v("rat:3/2"), &zero, 10, 0.0), Err(Error::RationalAlpha(_))));
        assert!(matches!(
            decomposition_report(&f, &v("quad:0,1,2,1"), &v("rat:1/2"), 10, 0.0),
            Err(Error::BetaNotInteger(_))
        ));
        assert!(decomposition_report(&f, &v("quad:0,1,2,1"), &zero, 21, 0.0).is_err());
    }

    #[test]
    fn small_x_omits_normalisation() {
        let f = constant_table(20, 1);
        let rows = decomposition_curve(&f, &v("quad:0,1,2,1"), &AlphaValue::integer(0), &[3, 8, 20], 0.0).unwrap();
        assert_eq!(rows[0].normalized_error, None);
        assert!(rows[1].normalized_error.is_some());
    }

    #[test]
    fn integer_shift_conventions_differ_by_boundary_terms() {
        // The literal upper-closed arc counts m = beta and skips m = beta - 1.
        let f = identity_table(200);
        let a = v("quad:0,1,2,1");
        for beta in 0..4i64 {
            let lower = residual_closed_with(&f, &a, beta, 200, IndicatorConvention::LowerClosed).unwrap();
            let upper = residual_closed_with(&f, &a, beta, 200, IndicatorConvention::UpperClosed).unwrap();
            let fv = |m: i64| if m >= 1 { m as f64 } else { 0.0 };
            assert_eq!((lower - upper).re, fv(beta) - fv(beta - 1));
            let r = decomposition_report(&f, &a, &AlphaValue::integer(beta), 200, 0.0).unwrap();
            assert!(r.residual_gap() < 1e-6, "beta {beta}: {}", r.residual_gap());
        }
    }

    #[test]
    fn error_curve_examples() {
        // primes on the even numbers: only 2 survives
        let p = crate::arith::sieve_prime_indicator(10_000).unwrap();
        let rows = error_curve(&p, &AlphaValue::integer(2), &AlphaValue::integer(0), &[100, 10_000], 0.0).unwrap();
        for r in &rows {
            assert_eq!(r.s_beatty.re, 1.0);
            assert_eq!(r.error.re, 1.0 - r.s_plain.re / 2.0);
        }
        // agrees with the decomposition report for irrational alpha
        let f = sieve_tau_k(3000, 3).unwrap();
        let a = v("quad:1,1,7,3");
        let beta = AlphaValue::integer(1);
        let cps = [10, 100, 3000];
        let e = error_curve(&f, &a, &beta, &cps, 0.25).unwrap();
        let d = decomposition_curve(&f, &a, &beta, &cps, 0.25).unwrap();
        for (x, y) in e.iter().zip(&d) {
            assert_eq!((x.s_beatty, x.s_plain, x.error), (y.s_beatty, y.s_plain, y.error));
            assert_eq!(x.normalized_error, y.normalized_error);
        }
    }

    #[test]
    fn curve_matches_single_reports() {
        let f = rademacher_table(5000, 9);
        let a = crate::alpha::sample_alpha(&mut rng::seeded(2), 1.0, 10.0).unwrap();
        let beta = AlphaValue::integer(2);
        let cps = crate::grid::geometric_grid(1, 5000, 1.5);
        let rows = decomposition_curve(&f, &a, &beta, &cps, 0.0).unwrap();
        for r in rows.iter().step_by(4) {
            let single = decomposition_report(&f, &a, &beta, r.x as usize, 0.0).unwrap();
            assert_eq!(&single, r);
            assert!(r.residual_gap() < 1e-6 * (1.0 + r.s_plain.norm()));
            assert!(r.residual_closed.norm() <= r.residual_bound);
        }
    }
}
