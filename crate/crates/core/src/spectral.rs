//! The trigonometric polynomial
//! `Q(f, x)(lambda) = sum_k a_k e(k lambda)`, `a_k = sum_{m j = k} g(m) c_x(j)`,
//! its L2 energy, and Monte Carlo estimates of maximal L2 norms.
//!
//! Here `g(m)` are the differences of `f` (see [`g_coeffs`]) and `c_x(j)` the
//! sawtooth Fourier coefficients `-1/(2 pi i j)` truncated at `|j| <= sqrt(x)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand_core::RngCore;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::alpha::{sample_unit_decimal, AlphaValue, Angle, Rotation};
use crate::arith::FunctionTable;
use crate::error::{Error, Result};
use crate::numeric::{ComplexSum, NeumaierSum};
use crate::rng;
use crate::sawtooth::inverse_rotation;

/// Largest admissible degree `K` of `Q(f, x)`.
pub const MAX_DEGREE: u64 = 1 << 26;

/// `g(1) = f(1)`, `g(m) = f(m) - f(m-1)` for `2 <= m <= x`, `g(x+1) = -f(x)`.
/// The result has length `x + 2` with an unused zero at index 0.
pub fn g_coeffs(f: &FunctionTable, x: usize) -> Result<Vec<Complex64>> {
    if x == 0 {
        return Err(Error::out_of_range("x", "must be positive"));
    }
    f.require(x)?;
    let mut g = vec![Complex64::new(0.0, 0.0); x + 2];
    for (m, gm) in g.iter_mut().enumerate().take(x + 1).skip(1) {
        *gm = f.value(m) - f.value(m - 1);
    }
    g[x + 1] = -f.value(x);
    Ok(g)
}

/// `c_x(j) = -1/(2 pi i j) = i/(2 pi j)` for `1 <= |j| <= floor(sqrt(x))`,
/// zero otherwise (including `j = 0`).
pub fn c_truncated(j: i64, x: u64) -> Complex64 {
    if j == 0 || j.unsigned_abs() > x.isqrt() {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::new(0.0, 1.0 / (2.0 * PI * j as f64))
}

/// Coefficients `a_k` of `Q(f, x)` and their energy `sum |a_k|^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralEnergy {
    pub x: u64,
    /// Truncation `J = floor(sqrt(x))`.
    pub j: u64,
    /// Degree bound `K = (x + 1) J`.
    pub k: u64,
    /// Non-zero `a_k`, sorted by `k`.
    pub coeffs: Vec<(i64, Complex64)>,
    pub energy: f64,
}

impl SpectralEnergy {
    pub fn coefficient(&self, k: i64) -> Complex64 {
        match self.coeffs.binary_search_by_key(&k, |&(i, _)| i) {
            Ok(i) => self.coeffs[i].1,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Largest `|a_{-k} - conj(a_k)|`.
    pub fn hermitian_defect(&self) -> f64 {
        self.coeffs.iter().map(|&(k, a)| (self.coefficient(-k) - a.conj()).norm()).fold(0.0, f64::max)
    }
}

/// Assembles `a_k` from the double sum over `m <= x + 1`, `1 <= |j| <= J`.
pub fn q_coefficients(f: &FunctionTable, x: usize) -> Result<SpectralEnergy> {
    let g = g_coeffs(f, x)?;
    let xu = x as u64;
    let jmax = xu.isqrt();
    let k = (xu + 1) * jmax;
    if k > MAX_DEGREE {
        return Err(Error::CapacityExceeded(format!("degree {k} exceeds the limit {MAX_DEGREE}")));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut pos = vec![zero; k as usize + 1];
    let mut neg = vec![zero; k as usize + 1];
    let c: Vec<Complex64> = (0..=jmax as i64).map(|j| c_truncated(j, xu)).collect();
    for (m, &gm) in g.iter().enumerate().skip(1) {
        if gm == zero {
            continue;
        }
        for j in 1..=jmax as usize {
            let t = gm * c[j];
            pos[m * j] += t;
            // c(-j) = -c(j)
            neg[m * j] -= t;
        }
    }
    let mut coeffs = Vec::new();
    for kk in (1..=k as usize).rev() {
        if neg[kk] != zero {
            coeffs.push((-(kk as i64), neg[kk]));
        }
    }
    for (kk, &a) in pos.iter().enumerate().skip(1) {
        if a != zero {
            coeffs.push((kk as i64, a));
        }
    }
    let energy: f64 = coeffs.iter().map(|(_, a)| a.norm_sqr()).collect::<NeumaierSum>().value();
    Ok(SpectralEnergy { x: xu, j: jmax, k, coeffs, energy })
}

/// `Q(f, x)` at `1/alpha`: `sum_k a_k e(k/alpha)`, each phase `k/alpha` reduced
/// mod 1 in 192-bit arithmetic.
pub fn q_eval(energy: &SpectralEnergy, alpha: &AlphaValue) -> Result<Complex64> {
    Ok(q_eval_rotation(energy, &inverse_rotation(alpha)?))
}

pub fn q_eval_rotation(energy: &SpectralEnergy, rot: &Rotation) -> Complex64 {
    let mut s = ComplexSum::new();
    for &(k, a) in &energy.coeffs {
        s.add(a * rot.angle_at(k).cis());
    }
    s.value()
}

/// Mean of `|Q(i / N)|^2` over `i = 0..N` via one inverse FFT. Exact for
/// `N > 2K`, so it reproduces the energy.
pub fn q_l2_quadrature(energy: &SpectralEnergy, n_grid: usize) -> Result<f64> {
    if (n_grid as u64) <= 2 * energy.k + 1 {
        return Err(Error::GridTooCoarse { n_grid, degree: energy.k });
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); n_grid];
    for &(k, a) in &energy.coeffs {
        buf[k.rem_euclid(n_grid as i64) as usize] += a;
    }
    FftPlanner::new().plan_fft_inverse(n_grid).process(&mut buf);
    let total: NeumaierSum = buf.iter().map(|z| z.norm_sqr()).collect();
    Ok(total.value() / n_grid as f64)
}

/// `energy / (x (log x)^3 M(f, x)^2)`.
pub fn abs_energy_ratio(f: &FunctionTable, x: usize) -> Result<f64> {
    if x < 8 {
        return Err(Error::out_of_range("x", format!("energy ratio needs x >= 8, got {x}")));
    }
    let e = q_coefficients(f, x)?;
    let xf = x as f64;
    Ok(e.energy / (xf * xf.ln().powi(3) * f.m_bound(x).powi(2)))
}

/// `max_{1 <= x <= X} |Sigma^(l)(f, x)|` for `alpha = 1/lambda`, i.e. with
/// sawtooth arguments `(m + l) lambda`.
pub fn maximal_sigma(f: &FunctionTable, lambda: &AlphaValue, x_max: usize, ell: i64) -> Result<f64> {
    lambda.check_rotation()?;
    f.require(x_max)?;
    Ok(maximal_sigma_rotation(f, &lambda.rotation(), x_max, ell))
}

fn maximal_sigma_rotation(f: &FunctionTable, rot: &Rotation, x_max: usize, ell: i64) -> f64 {
    let mut orbit = rot.orbit(1 + ell);
    let mut best = 0f64;
    if let Some(v) = f.int_values() {
        let mut s = NeumaierSum::new();
        for &fm in &v[1..=x_max] {
            if fm != 0 {
                s.add(fm as f64 * orbit.current().psi_f64());
            }
            orbit.advance();
            best = best.max(s.value().abs());
        }
    } else {
        let mut s = ComplexSum::new();
        for m in 1..=x_max {
            s.add(f.value(m) * orbit.current().psi_f64());
            orbit.advance();
            best = best.max(s.value().norm());
        }
    }
    best
}

/// Monte Carlo estimate of `int_0^1 max_x |Sigma^(l)_{1/lambda}(f, x)|^2 d lambda`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaximalEstimate {
    pub x_max: u64,
    pub ell: i64,
    pub n_samples: usize,
    pub seed: u64,
    pub integral_estimate: f64,
    pub standard_error: f64,
    /// `||f|_X||_2^2`.
    pub l2norm_sq: f64,
    /// `(log log X)^2`.
    pub loglog_sq: f64,
    /// `integral_estimate / ((log log X)^2 ||f|_X||_2^2)`.
    pub normalized_ratio: f64,
}

/// Sample mean and standard error of a sequence, in index order.
pub fn mean_and_stderr(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().copied().collect::<NeumaierSum>().value() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|s| (s - mean).powi(2)).collect::<NeumaierSum>().value() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Draws `lambda_i` (decimal, `digits` significant digits) from stream `i`
/// of `seed` for `i < n_samples` and averages the squared maxima.
pub fn mc_maximal_l2(
    f: &FunctionTable,
    x_max: usize,
    ell: i64,
    n_samples: usize,
    seed: u64,
    digits: u32,
) -> Result<MaximalEstimate> {
    if x_max < 8 {
        return Err(Error::out_of_range("X", format!("needs X >= 8, got {x_max}")));
    }
    if n_samples < 2 {
        return Err(Error::out_of_range("samples", "need at least 2 samples"));
    }
    f.require(x_max)?;
    let mut values = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let lambda = sample_unit_decimal(&mut rng::stream(seed, i as u64), digits)?;
        let m = maximal_sigma_rotation(f, &lambda.rotation(), x_max, ell);
        values.push(m * m);
    }
    let (mean, se) = mean_and_stderr(&values);
    let l2 = f.prefix_sq(x_max);
    let ll = (x_max as f64).ln().ln().powi(2);
    let ratio = if mean == 0.0 { 0.0 } else { mean / (ll * l2) };
    Ok(MaximalEstimate {
        x_max: x_max as u64,
        ell,
        n_samples,
        seed,
        integral_estimate: mean,
        standard_error: se,
        l2norm_sq: l2,
        loglog_sq: ll,
        normalized_ratio: ratio,
    })
}

/// Coefficients `c_k` for `1 <= |k| <= Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierCoefficients {
    /// `c_1, ..., c_Y`.
    pub pos: Vec<Complex64>,
    /// `c_{-1}, ..., c_{-Y}`.
    pub neg: Vec<Complex64>,
}

impl FourierCoefficients {
    pub fn new(pos: Vec<Complex64>, neg: Vec<Complex64>) -> Result<Self> {
        if pos.len() != neg.len() || pos.is_empty() {
            return Err(Error::InvalidValue("need equally many positive and negative coefficients, at least one".into()));
        }
        Ok(FourierCoefficients { pos, neg })
    }

    pub fn degree(&self) -> usize {
        self.pos.len()
    }

    /// `sum |c_k|^2`.
    pub fn energy(&self) -> f64 {
        self.pos.iter().chain(&self.neg).map(|c| c.norm_sqr()).collect::<NeumaierSum>().value()
    }

    /// Sawtooth coefficients `-1/(2 pi i k)`.
    pub fn sawtooth(y: usize) -> Self {
        let pos = (1..=y as i64).map(|k| c_truncated(k, u64::MAX)).collect();
        let neg = (1..=y as i64).map(|k| c_truncated(-k, u64::MAX)).collect();
        FourierCoefficients { pos, neg }
    }

    /// Independent fair signs from stream 0 (positive side) and 1
    /// (negative side) of `seed`.
    pub fn random_signs(y: usize, seed: u64) -> Self {
        let draw = |i| {
            let mut r = rng::stream(seed, i);
            (0..y).map(|_| Complex64::new(if r.next_u64() >> 63 == 1 { 1.0 } else { -1.0 }, 0.0)).collect()
        };
        FourierCoefficients { pos: draw(0), neg: draw(1) }
    }
}

/// Monte Carlo estimate of `int_0^1 (max_{y <= Y} |sum_{|k| <= y} c_k e(k lambda)|)^2`
/// next to `sum |c_k|^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CarlesonEstimate {
    pub degree: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub lhs_estimate: f64,
    pub standard_error: f64,
    pub rhs: f64,
}

pub fn carleson_hunt_check(c: &FourierCoefficients, n_samples: usize, seed: u64) -> Result<CarlesonEstimate> {
    if n_samples == 0 {
        return Err(Error::out_of_range("samples", "need at least one sample"));
    }
    let mut values = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let lambda = rng::unit_phase(&mut rng::stream(seed, i as u64));
        let rot = Rotation::from_angle(Angle::Phase(lambda));
        let mut orbit = rot.orbit(1);
        let mut s = Complex64::new(0.0, 0.0);
        let mut best = 0f64;
        for (cp, cn) in c.pos.iter().zip(&c.neg) {
            let e = orbit.current().cis();
            s += cp * e + cn * e.conj();
            best = best.max(s.norm());
            orbit.advance();
        }
        values.push(best * best);
    }
    let (mean, se) = mean_and_stderr(&values);
    Ok(CarlesonEstimate {
        degree: c.degree(),
        n_samples,
        seed,
        lhs_estimate: mean,
        standard_error: se,
        rhs: c.energy(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{constant_table, rademacher_table, sieve_tau_k, zero_table};

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn g_examples() {
        let tau = sieve_tau_k(10, 2).unwrap();
        let g = g_coeffs(&tau, 3).unwrap();
        let re: Vec<f64> = g[1..].iter().map(|z| z.re).collect();
        assert_eq!(re, vec![1.0, 1.0, 0.0, -2.0]);
        assert!(g_coeffs(&zero_table(10), 10).unwrap().iter().all(|z| z.norm() == 0.0));
        let r = rademacher_table(500, 1);
        for x in [1, 7, 500] {
            let s: Complex64 = g_coeffs(&r, x).unwrap().iter().sum();
            assert_eq!(s.norm(), 0.0);
        }
    }

    #[test]
    fn c_examples() {
        assert!((c_truncated(1, 100).norm() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        for j in 1..=10 {
            assert_eq!(c_truncated(-j, 100), c_truncated(j, 100).conj());
            // -1/(2 pi i j)
            assert!(close(c_truncated(j, 100), -Complex64::new(1.0, 0.0) / Complex64::new(0.0, 2.0 * PI * j as f64)));
        }
        assert_eq!(c_truncated(11, 100).norm(), 0.0);
        assert_eq!(c_truncated(0, 100).norm(), 0.0);
    }

    #[test]
    fn coefficient_examples() {
        let z = q_coefficients(&zero_table(20), 20).unwrap();
        assert!(z.coeffs.is_empty());
        assert_eq!(z.energy, 0.0);
        let tau = sieve_tau_k(10, 2).unwrap();
        let e = q_coefficients(&tau, 3).unwrap();
        assert_eq!((e.j, e.k), (1, 4));
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        assert!(close(e.coefficient(1), -1.0 / two_pi_i));
        assert!(close(e.coefficient(4), 2.0 / two_pi_i));
        assert!(close(e.coefficient(4), 1.0 / Complex64::new(0.0, PI)));
        assert_eq!(e.coefficient(3).norm(), 0.0);
        assert!(e.hermitian_defect() < 1e-15);
    }

    #[test]
    fn eval_examples() {
        let tau = sieve_tau_k(10, 2).unwrap();
        let e = q_coefficients(&tau, 3).unwrap();
        let two = AlphaValue::integer(2);
        let q = q_eval(&e, &two).unwrap();
        // hand evaluation at lambda = 1/2: a_k e(k/2) = a_k (-1)^k
        let direct: Complex64 = e.coeffs.iter().map(|&(k, a)| if k % 2 == 0 { a } else { -a }).sum();
        assert!(close(q, direct));
        assert!(q.im.abs() < 1e-12);
        assert_eq!(q_eval(&q_coefficients(&zero_table(10), 10).unwrap(), &two).unwrap().norm(), 0.0);
        let s2: AlphaValue = "quad:0,1,2,1".parse().unwrap();
        let e = q_coefficients(&tau, 9).unwrap();
        assert!(q_eval(&e, &s2).unwrap().im.abs() < 1e-10 * e.energy.sqrt());
    }

    #[test]
    fn quadrature_is_parseval() {
        for f in [constant_table(600, 1), sieve_tau_k(600, 2).unwrap(), rademacher_table(600, 5)] {
            for x in [64, 256] {
                let e = q_coefficients(&f, x).unwrap();
                let n = 2 * e.k as usize + 2;
                let q = q_l2_quadrature(&e, n).unwrap();
                assert!((q - e.energy).abs() <= 1e-8 * e.energy, "{} x={x}: {q} vs {}", f.name(), e.energy);
                assert!(matches!(q_l2_quadrature(&e, n - 1), Err(Error::GridTooCoarse { .. })));
            }
        }
        let z = q_coefficients(&zero_table(64), 64).unwrap();
        assert_eq!(q_l2_quadrature(&z, 2 * z.k as usize + 2).unwrap(), 0.0);
    }

    #[test]
    fn energy_ratio_behaviour() {
        assert_eq!(abs_energy_ratio(&zero_table(300), 256).unwrap(), 0.0);
        let tau = sieve_tau_k(300, 2).unwrap();
        let r = abs_energy_ratio(&tau, 256).unwrap();
        assert!(r.is_finite() && r > 0.0);
        // inflating M lowers the ratio
        let mut vals: Vec<i64> = (1..=300).map(|m| tau.int_value(m).unwrap()).collect();
        vals[299] = 1000;
        let inflated = FunctionTable::from_int_values("tau*", crate::arith::TableKind::Other, vals);
        assert!(abs_energy_ratio(&inflated, 300).unwrap() < abs_energy_ratio(&tau, 300).unwrap());
    }

    #[test]
    fn maximal_examples() {
        let half = AlphaValue::rational(1, 2).unwrap();
        let one = constant_table(10, 1);
        assert_eq!(maximal_sigma(&one, &half, 4, 0).unwrap(), 1.0);
        assert_eq!(maximal_sigma(&zero_table(10), &half, 10, 0).unwrap(), 0.0);
        let tau = sieve_tau_k(10, 2).unwrap();
        let l: AlphaValue = "quad:0,1,2,2".parse().unwrap();
        let single = maximal_sigma(&tau, &l, 1, 3).unwrap();
        assert!((single - (crate::sawtooth::psi(4.0 / 2f64.sqrt()))).abs() < 1e-15);
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let tau = sieve_tau_k(1 << 10, 2).unwrap();
        let a = mc_maximal_l2(&tau, 1 << 10, 0, 20, 42, 50).unwrap();
        let b = mc_maximal_l2(&tau, 1 << 10, 0, 20, 42, 50).unwrap();
        assert_eq!(a, b);
        let z = mc_maximal_l2(&zero_table(64), 64, 1, 5, 1, 50).unwrap();
        assert_eq!((z.integral_estimate, z.normalized_ratio), (0.0, 0.0));
    }

    #[test]
    fn carleson_examples() {
        let zero = Complex64::new(0.0, 0.0);
        let unit = FourierCoefficients::new(vec![Complex64::new(1.0, 0.0)], vec![zero]).unwrap();
        let r = carleson_hunt_check(&unit, 50, 3).unwrap();
        assert!((r.lhs_estimate - 1.0).abs() < 1e-12 && r.rhs == 1.0);
        let z = FourierCoefficients::new(vec![zero; 4], vec![zero; 4]).unwrap();
        let r = carleson_hunt_check(&z, 10, 3).unwrap();
        assert_eq!((r.lhs_estimate, r.rhs), (0.0, 0.0));
        let s = FourierCoefficients::random_signs(64, 9);
        let r = carleson_hunt_check(&s, 200, 9).unwrap();
        assert_eq!(r.rhs, 128.0);
        let q = r.lhs_estimate / r.rhs;
        assert!(q >= 0.5 && q <= 1.0 + (64f64).ln().powi(2), "{q}");
    }
}
