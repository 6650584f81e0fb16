//! Rademacher-weighted sawtooth walks
//! `S_x = sum_{m <= x} f_m (psi(m lambda) - psi((m+1) lambda))`.
//!
//! Each increment equals `-lambda` or `1 - lambda`, the latter exactly when
//! `frac(m lambda) + frac(lambda)` wraps past 1. Walks therefore track two
//! integers, the signed wrap count `A = sum f_m [wrap_m]` and `B = sum f_m`,
//! and report `S = A - lambda B`; the variance `s_x^2` is
//! `W (1 - lambda)^2 + (x - W) lambda^2` with `W` the number of wraps.

use serde::Serialize;

use crate::alpha::AlphaValue;
use crate::error::{Error, Result};
use crate::grid::{geometric_grid, DEFAULT_RATIO};
use crate::rng::{derive_seed, RademacherStream};

/// Smallest `s_x^2` at which the iterated-logarithm statistic is reported.
pub const LIL_MIN_VARIANCE: f64 = 8.0;
/// First checkpoint of witness searches.
pub const WITNESS_START: u64 = 16;

fn lambda_f64(lambda: &AlphaValue) -> Result<f64> {
    lambda.check_rotation()?;
    Ok(lambda.to_f64())
}

/// `psi(m lambda) - psi((m+1) lambda)`.
pub fn increment(m: i64, lambda: &AlphaValue) -> Result<f64> {
    let l = lambda_f64(lambda)?;
    let rot = lambda.rotation();
    let (_, wrapped) = rot.angle_at(m).overflowing_add(rot.step());
    Ok(if wrapped { 1.0 - l } else { -l })
}

/// `s_x^2 = sum_{m <= x} (psi(m lambda) - psi((m+1) lambda))^2`.
pub fn s_squared(lambda: &AlphaValue, x: u64) -> Result<f64> {
    let l = lambda_f64(lambda)?;
    let mut orbit = lambda.rotation().orbit(1);
    let mut wraps = 0u64;
    for _ in 0..x {
        wraps += orbit.advance() as u64;
    }
    Ok(variance_from_wraps(l, wraps, x))
}

fn variance_from_wraps(l: f64, wraps: u64, x: u64) -> f64 {
    wraps as f64 * (1.0 - l) * (1.0 - l) + (x - wraps) as f64 * l * l
}

/// `S / sqrt(2 s^2 log log s^2)` when `s^2 >= 8`.
pub fn lil_statistic(s: f64, s_sq: f64) -> Option<f64> {
    (s_sq >= LIL_MIN_VARIANCE).then(|| s / (2.0 * s_sq * s_sq.ln().ln()).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkPoint {
    pub x: u64,
    pub s: f64,
    pub s_sq: f64,
    pub lil_stat: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkTrajectory {
    pub lambda: AlphaValue,
    pub seed: u64,
    pub x_max: u64,
    pub points: Vec<WalkPoint>,
}

/// Runs the walk with signs from `signs` and records the given checkpoints.
pub fn walk_with_signs(
    lambda: &AlphaValue,
    checkpoints: &[u64],
    mut signs: impl Iterator<Item = i64>,
) -> Result<Vec<WalkPoint>> {
    let l = lambda_f64(lambda)?;
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) || checkpoints.first() == Some(&0) {
        return Err(Error::InvalidValue("checkpoints must be positive and strictly increasing".into()));
    }
    let mut orbit = lambda.rotation().orbit(1);
    let (mut a, mut b, mut wraps) = (0i64, 0i64, 0u64);
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut x = 0u64;
    for &cp in checkpoints {
        while x < cp {
            let f = signs.next().expect("sign streams are infinite");
            if orbit.advance() {
                a += f;
                wraps += 1;
            }
            b += f;
            x += 1;
        }
        let s = a as f64 - l * b as f64;
        let s_sq = variance_from_wraps(l, wraps, x);
        out.push(WalkPoint { x, s, s_sq, lil_stat: lil_statistic(s, s_sq) });
    }
    Ok(out)
}

/// Walk driven by [`RademacherStream::new`]`(seed)`, the same signs as
/// `rademacher_table(_, seed)`.
pub fn walk(lambda: &AlphaValue, x_max: u64, seed: u64, checkpoints: &[u64]) -> Result<WalkTrajectory> {
    if x_max == 0 {
        return Err(Error::out_of_range("X", "must be positive"));
    }
    let owned;
    let cps = if checkpoints.is_empty() {
        owned = geometric_grid(1, x_max, DEFAULT_RATIO);
        &owned[..]
    } else {
        checkpoints
    };
    if cps.last().is_some_and(|&c| c > x_max) {
        return Err(Error::out_of_range("checkpoints", format!("beyond X = {x_max}")));
    }
    let points = walk_with_signs(lambda, cps, RademacherStream::new(seed))?;
    Ok(WalkTrajectory { lambda: lambda.clone(), seed, x_max, points })
}

/// Seed of walk `i` under a master seed.
pub fn walk_seed(master: u64, i: u64) -> u64 {
    derive_seed(master, i)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub seed: u64,
    pub x_star: u64,
    pub witness_value: f64,
}

fn witness_of(points: &[WalkPoint]) -> (u64, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for p in points {
        let xf = p.x as f64;
        let v = p.s.abs() / (xf.sqrt() * xf.ln().ln().sqrt());
        if v > best.1 {
            best = (p.x, v);
        }
    }
    best
}

/// `max |S_x| / (sqrt(x) sqrt(log log x))` over the geometric checkpoints
/// `16 <= x <= X`, and where it is attained.
pub fn lower_bound_witness(lambda: &AlphaValue, x_max: u64, seed: u64) -> Result<Witness> {
    lower_bound_witness_signs(lambda, x_max, seed, RademacherStream::new(seed))
}

/// As [`lower_bound_witness`] with every sign flipped.
pub fn lower_bound_witness_complement(lambda: &AlphaValue, x_max: u64, seed: u64) -> Result<Witness> {
    lower_bound_witness_signs(lambda, x_max, seed, RademacherStream::new(seed).complemented())
}

fn lower_bound_witness_signs(
    lambda: &AlphaValue,
    x_max: u64,
    seed: u64,
    signs: RademacherStream,
) -> Result<Witness> {
    if x_max < WITNESS_START {
        return Err(Error::out_of_range("X", format!("witness search needs X >= {WITNESS_START}")));
    }
    let points = walk_with_signs(lambda, &geometric_grid(WITNESS_START, x_max, DEFAULT_RATIO), signs)?;
    let (x_star, witness_value) = witness_of(&points);
    Ok(Witness { seed, x_star, witness_value })
}

/// Sample mean and variance of `S_x` over walks `0..n_seeds` of `master`,
/// next to the exact `s_x^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarianceStudy {
    pub x: u64,
    pub n_seeds: u64,
    pub mean: f64,
    pub sample_variance: f64,
    pub s_sq: f64,
}

pub fn variance_study(lambda: &AlphaValue, x: u64, n_seeds: u64, master: u64) -> Result<VarianceStudy> {
    if n_seeds < 2 || x == 0 {
        return Err(Error::out_of_range("seeds", "need x >= 1 and at least two seeds"));
    }
    let values: Vec<f64> = (0..n_seeds)
        .map(|i| Ok(walk_with_signs(lambda, &[x], RademacherStream::new(walk_seed(master, i)))?[0].s))
        .collect::<Result<_>>()?;
    let (mean, se) = crate::spectral::mean_and_stderr(&values);
    let n = n_seeds as f64;
    Ok(VarianceStudy { x, n_seeds, mean, sample_variance: se * se * n, s_sq: s_squared(lambda, x)? })
}
