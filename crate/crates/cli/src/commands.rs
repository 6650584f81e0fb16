use beatty_core::alpha::MIN_PRECISION;
use beatty_core::grid::geometric_grid;
use beatty_core::sawtooth::error_curve;
use beatty_core::spectral::FourierCoefficients;
use beatty_core::{
    abs_energy_ratio, beatty_enumerate, beatty_member, carleson_hunt_check, decomposition_report, growth_ratios,
    lil, lower_bound_witness, mc_maximal_l2, q_coefficients, q_l2_quadrature, walk, AlphaValue, Error, FunctionSpec,
    Result,
};

use crate::args::*;
use crate::output::{Cell, Table};
use crate::tables;

/// Canonical `--flag value` list of a run, defaults included.
#[derive(Default)]
pub struct Canon(Vec<String>);

impl Canon {
    fn flag(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.0.push(format!("--{name} {}", value.to_string()));
        self
    }

    fn switch(&mut self, name: &str, on: bool) -> &mut Self {
        if on {
            self.0.push(format!("--{name}"));
        }
        self
    }

    pub fn join(&self) -> String {
        self.0.join(" ")
    }
}

/// Everything the dispatcher needs to emit a run.
pub struct Run {
    pub table: Table,
    /// Subcommand name followed by its canonical flags.
    pub canonical: String,
    /// The encoded table, for `sieve` when [`Ctx::binary`] is set.
    pub binary: Option<Vec<u8>>,
}

pub struct Ctx {
    pub seed: u64,
    pub precision: u32,
    /// Whether `sieve` should encode its table.
    pub binary: bool,
}

impl Ctx {
    fn value(&self, s: &str) -> Result<AlphaValue> {
        AlphaValue::parse_with_precision(s, self.precision)
    }

    fn function(&self, s: &str) -> Result<FunctionSpec> {
        s.parse()
    }
}

fn positive(what: &'static str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::OutOfRange { what, detail: "must be positive".into() });
    }
    Ok(())
}

fn usize_of(what: &'static str, v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::OutOfRange { what, detail: format!("{v} does not fit in memory") })
}

fn check_ratio(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 1.0) {
        return Err(Error::OutOfRange { what: "ratio", detail: format!("{r} must exceed 1") });
    }
    Ok(())
}

fn check_epsilon(e: f64) -> Result<()> {
    if !(e.is_finite() && e >= 0.0) {
        return Err(Error::OutOfRange { what: "epsilon", detail: format!("{e} must be a non-negative number") });
    }
    Ok(())
}

/// Irrational `alpha > 1` and integer `beta >= 0`, as the decomposition needs.
fn decomposition_inputs(alpha: &AlphaValue, beta: &AlphaValue) -> Result<()> {
    alpha.check_modulus()?;
    if alpha.is_rational() {
        return Err(Error::RationalAlpha(alpha.to_string()));
    }
    beta.check_shift()?;
    if beta.as_integer().is_none() {
        return Err(Error::BetaNotInteger(beta.to_string()));
    }
    Ok(())
}

pub fn check_precision(p: u32) -> Result<()> {
    if p < MIN_PRECISION {
        return Err(Error::OutOfRange { what: "precision", detail: format!("{p} is below the minimum {MIN_PRECISION}") });
    }
    Ok(())
}

pub fn run(cmd: &Command, ctx: &Ctx) -> Result<Run> {
    let mut canon = Canon::default();
    let mut binary = None;
    let (name, table) = match cmd {
        Command::Sieve(a) => ("sieve", sieve(a, ctx, &mut canon, &mut binary)?),
        Command::Membership(a) => ("membership", membership(a, ctx, &mut canon)?),
        Command::Decompose(a) => ("decompose", decompose(a, ctx, &mut canon)?),
        Command::ErrorCurve(a) => ("error-curve", curve(a, ctx, &mut canon)?),
        Command::QEnergy(a) => ("q-energy", q_energy(a, ctx, &mut canon)?),
        Command::MaximalL2(a) => ("maximal-l2", maximal(a, ctx, &mut canon)?),
        Command::Lil(a) => ("lil", lil_walks(a, ctx, &mut canon)?),
        Command::LowerBound(a) => ("lower-bound", lower_bound(a, ctx, &mut canon)?),
        Command::CarlesonCheck(a) => ("carleson-check", carleson(a, ctx, &mut canon)?),
    };
    let flags = canon.join();
    let canonical = if flags.is_empty() { name.to_string() } else { format!("{name} {flags}") };
    Ok(Run { table, canonical, binary })
}

fn sieve(a: &SieveArgs, ctx: &Ctx, canon: &mut Canon, binary: &mut Option<Vec<u8>>) -> Result<Table> {
    let spec = ctx.function(&a.f)?;
    positive("N", a.n as u64)?;
    canon.flag("f", &spec).flag("n", a.n).switch("growth", a.growth);
    let f = tables::load(&spec, a.n, ctx.seed)?;
    if ctx.binary {
        *binary = Some(beatty_core::cache::encode(&f)?);
    }
    if a.growth {
        let mut t = Table::new(&["r", "ratio"]);
        for g in growth_ratios(&f)? {
            t.push(vec![Cell::Int(g.r.into()), g.ratio.into()]);
        }
        return Ok(t);
    }
    let mut t = Table::new(&["f", "N", "sum", "sum_sq", "M"]);
    let sum = match f.plain_sum_exact(a.n) {
        Some(s) => Cell::Int(s),
        None => Cell::Complex(f.plain_sum(a.n)),
    };
    let sum_sq = match f.prefix_sq_exact(a.n).and_then(|s| i128::try_from(s).ok()) {
        Some(s) => Cell::Int(s),
        None => Cell::Float(f.prefix_sq(a.n)),
    };
    t.push(vec![Cell::Text(spec.to_string()), Cell::Int(a.n as i128), sum, sum_sq, Cell::Float(f.m_bound(a.n))]);
    Ok(t)
}

fn membership(a: &MembershipArgs, ctx: &Ctx, canon: &mut Canon) -> Result<Table> {
    let alpha = ctx.value(&a.alpha)?;
    let beta = ctx.value(&a.beta)?;
    alpha.check_modulus()?;
    beta.check_shift()?;
    canon.flag("alpha", &alpha).flag("beta", &beta);
    let mut t = Table::new(&["m", "member"]);
    match a.x {
        Some(x) => {
            positive("x", x)?;
            canon.flag("x", x);
            let window = beatty_enumerate(&alpha, &beta, x)?;
            for (m, &inside) in window.indicator().iter().enumerate().skip(1) {
                t.push(vec![Cell::Int(m as i128), Cell::Bool(inside)]);
            }
        }
        None => {
            let list: Vec<String> = a.m.iter().map(i64::to_string).collect();
            canon.flag("m", list.join(","));
            for &m in &a.m {
                t.push(vec![Cell::Int(m.into()), Cell::Bool(beatty_member(m, &alpha, &beta)?)]);
            }
        }
    }
    Ok(t)
}

pub const DECOMPOSE_HEADER: [&str; 13] = [
    "alpha",
    "beta",
    "x",
    "S_beatty",
    "S_plain",
    "sigma0",
    "sigma1",
    "residual_def",
    "residual_closed",
    "error",
    "l2norm",
    "normalized_error",
    "abs_normalized_error",
];

fn decompose(a: &DecomposeArgs, ctx: &Ctx, canon: &mut Canon) -> Result<Table> {
    let spec = ctx.function(&a.f)?;
    let alpha = ctx.value(&a.alpha)?;
    let beta = ctx.value(&a.beta)?;
    positive("x", a.x)?;
    check_epsilon(a.epsilon)?;
    decomposition_inputs(&alpha, &beta)?;
    let x = usize_of("x", a.x)?;
    canon.flag("f", &spec).flag("alpha", &alpha).flag("beta", &beta).flag("x", a.x).flag("epsilon", a.epsilon);
    let f = tables::load(&spec, x, ctx.seed)?;
    let r = decomposition_report(&f, &alpha, &beta, x, a.epsilon)?;
    let mut t = Table::new(&DECOMPOSE_HEADER);
    t.push(vec![
        Cell::Text(r.alpha.to_string()),
        Cell::Int(r.beta.into()),
        Cell::Int(r.x.into()),
        Cell::Complex(r.s_beatty),
        Cell::Complex(r.s_plain),
        Cell::Complex(r.sigma0),
        Cell::Complex(r.sigma1),
        Cell::Complex(r.residual_def),
        Cell::Complex(r.residual_closed),
        Cell::Complex(r.error),
        Cell::Float(r.l2norm),
        r.normalized_error.into(),
        r.abs_normalized_error.into(),
    ]);
    Ok(t)
}

pub const ERROR_CURVE_HEADER: [&str; 8] =
    ["x", "S_beatty", "S_plain", "error_re", "error_im", "l2norm", "normalized_error", "abs_normalized_error"];

fn curve(a: &ErrorCurveArgs, ctx: &Ctx, canon: &mut Canon) -> Result<Table> {
    let spec = ctx.function(&a.f)?;
    let alpha = ctx.value(&a.alpha)?;
    let beta = ctx.value(&a.beta)?;
    positive("xmin", a.xmin)?;
    if a.xmin > a.xmax {
        return Err(Error::OutOfRange { what: "xmax", detail: format!("{} is below xmin = {}", a.xmax, a.xmin) });
    }
    check_ratio(a.ratio)?;
    check_epsilon(a.epsilon)?;
    if alpha.cmp_value(&AlphaValue::integer(1))?.is_lt() {
        return Err(Error::OutOfRange { what: "alpha", detail: format!("{alpha} must be at least 1") });
    }
    beta.check_shift()?;
    let x_max = usize_of("xmax", a.xmax)?;
    canon
        .flag("f", &spec)
        .flag("alpha", &alpha)
        .flag("beta", &beta)
        .flag("xmin", a.xmin)
        .flag("xmax", a.xmax)
        .flag("ratio", a.ratio)
        .flag("epsilon", a.epsilon);
    let f = tables::load(&spec, x_max, ctx.seed)?;
    let grid = geometric_grid(a.xmin, a.xmax, a.ratio);
    let mut t = Table::new(&ERROR_CURVE_HEADER);
    for r in error_curve(&f, &alpha, &beta, &grid, a.epsilon)? {
        t.push(vec![
            Cell::Int(r.x.into()),
            Cell::Complex(r.s_beatty),
            Cell::Complex(r.s_plain),
            Cell::Float(r.error.re),
            Cell::Float(r.error.im),
            Cell::Float(r.l2norm),
            r.normalized_error.into(),
            r.abs_normalized_error.into(),
        ]);
    }
    Ok(t)
}

pub const Q_ENERGY_HEADER: [&str; 8] = ["x", "J", "K", "nonzero", "energy", "quadrature", "rel_diff", "abs_energy_ratio"];

fn q_energy(a: &QEnergyArgs, ctx: &Ctx, canon: &mut Canon) -> Result<Table> {
    let spec = ctx.function(&a.f)?;
    positive("x", a.x)?;
    let x = usize_of("x", a.x)?;
    let degree = (a.x + 1).checked_mul(a.x.isqrt()).filter(|&k| k <= beatty_core::spectral::MAX_DEGREE).ok_or_else(
        || Error::OutOfRange { what: "x", detail: format!("degree of Q(f, {}) exceeds the supported limit", a.x) },
    )?;
    let n_grid = a.grid.unwrap_or(2 * degree as usize + 2);
    if (n_grid as u64) <= 2 * degree + 1 {
        return Err(Error::GridTooCoarse { n_grid, degree });
    }
    canon.flag("f", &spec).flag("x", a.x).flag("grid", n_grid);
    let f = tables::load(&spec, x, ctx.seed)?;
    let e = q_coefficients(&f, x)?;
    let quad = q_l2_quadrature(&e, n_grid)?;
    let rel = if e.energy == 0.0 { (quad - e.energy).abs() } else { (quad - e.energy).abs() / e.energy };
    let ratio = if x >= 8 { Cell::Float(abs_energy_ratio(&f, x)?) } else { Cell::Empty };
    let mut t = Table::new(&Q_ENERGY_HEADER);
    t.push(vec![
        Cell::Int(e.x.into()),
        Cell::Int(e.j.into()),
        Cell::Int(e.k.into()),
        Cell::Int(e.coeffs.len() as i128),
        Cell::Float(e.energy),
        Cell::Float(quad),
        Cell::Float(rel),
        ratio,
    ]);
    Ok(t)
}

pub const MAXIMAL_HEADER: [&str; 8] = ["X", "ell", "samples", "integral", "stderr", "l2norm_sq", "loglogX_sq", "ratio"];

fn maximal(a: &MaximalArgs, ctx: &Ctx, canon: &mut Canon) -> Result<Table> {
    let spec = ctx.function(&a.f)?;
    if a.x_max < 8 {
        return Err(Error::OutOfRange { what: "X", detail: format!("needs X >= 8, got {}", a.x_max) });
    }
    if a.samples < 2 {
        return Err(Error::OutOfRange { what: "samples", detail: "need at least 2 samples".into() });
    }
    let x = usize_of("X", a.x_max)?;
    canon.flag("f", &spec).flag("X", a.x_max).flag("ell", a.ell).flag("samples", a.samples);
    let f = tables::load(&spec, x, ctx.seed)?;
    let m = mc_maximal_l2(&f, x, a.ell, a.samples, ctx.seed, ctx.precision)?;
    let mut t = Table::new(&MAXIMAL_HEADER);
    t.push(vec![
        Cell::Int(m.x_max.into()),
        Cell::Int(m.ell.into()),
        Cell::Int(m.n_samples as i128),
        Cell::Float(m.integral_estimate),
        Cell::Float(m.standard_error),
        Cell::Float(m.l2norm_sq),
        Cell::Float(m.loglog_sq),
        Cell::Float(m.normalized_ratio),
    ]);
    Ok(t)
}

pub const LIL_HEADER: [&str; 5] = ["seed", "x", "S", "s_sq", "lil_stat"];

fn lambda_of(s: &str, ctx: &Ctx) -> Result<AlphaValue> {
    let lambda = ctx.value(s)?;
    lambda.check_rotation()?;
    Ok(lambda)
}

fn lil_walks(a: &LilArgs, ctx: &Ctx, canon: &mut Canon) -> Result<Table> {
    let lambda = lambda_of(&a.lambda, ctx)?;
    positive("X", a.x_max)?;
    positive("seeds", a.seeds)?;
    check_ratio(a.ratio)?;
    canon.flag("lambda", &lambda).flag("X", a.x_max).flag("seeds", a.seeds).flag("ratio", a.ratio);
    let grid = geometric_grid(1, a.x_max, a.ratio);
    let mut t = Table::new(&LIL_HEADER);
    for i in 0..a.seeds {
        let seed = lil::walk_seed(ctx.seed, i);
        for p in walk(&lambda, a.x_max, seed, &grid)?.points {
            t.push(vec![Cell::Int(seed.into()), Cell::Int(p.x.into()), Cell::Float(p.s), Cell::Float(p.s_sq), p.lil_stat.into()]);
        }
    }
    Ok(t)
}

pub const LOWER_BOUND_HEADER: [&str; 3] = ["seed", "x_star", "witness_value"];

fn lower_bound(a: &LowerBoundArgs, ctx: &Ctx, canon: &mut Canon) -> Result<Table> {
    let lambda = lambda_of(&a.lambda, ctx)?;
    positive("seeds", a.seeds)?;
    if a.x_max < lil::WITNESS_START {
        return Err(Error::OutOfRange { what: "X", detail: format!("witness search needs X >= {}", lil::WITNESS_START) });
    }
    canon.flag("lambda", &lambda).flag("X", a.x_max).flag("seeds", a.seeds);
    let mut t = Table::new(&LOWER_BOUND_HEADER);
    for i in 0..a.seeds {
        let w = lower_bound_witness(&lambda, a.x_max, lil::walk_seed(ctx.seed, i))?;
        t.push(vec![Cell::Int(w.seed.into()), Cell::Int(w.x_star.into()), Cell::Float(w.witness_value)]);
    }
    Ok(t)
}

/// Seed index of the random-sign coefficients, far from the sample streams
/// `0..samples` so the two draws stay independent.
const SIGN_STREAM: u64 = 1 << 40;

pub const CARLESON_HEADER: [&str; 7] = ["Y", "coeffs", "samples", "lhs", "stderr", "rhs", "ratio"];

fn carleson(a: &CarlesonArgs, ctx: &Ctx, canon: &mut Canon) -> Result<Table> {
    positive("Y", a.y as u64)?;
    positive("samples", a.samples as u64)?;
    canon.flag("Y", a.y).flag("coeffs", a.coeffs.name()).flag("samples", a.samples);
    let c = match a.coeffs {
        CoeffKind::Sawtooth => FourierCoefficients::sawtooth(a.y),
        CoeffKind::Signs => FourierCoefficients::random_signs(a.y, beatty_core::rng::derive_seed(ctx.seed, SIGN_STREAM)),
    };
    let e = carleson_hunt_check(&c, a.samples, ctx.seed)?;
    let mut t = Table::new(&CARLESON_HEADER);
    t.push(vec![
        Cell::Int(e.degree as i128),
        Cell::Text(a.coeffs.name().into()),
        Cell::Int(e.n_samples as i128),
        Cell::Float(e.lhs_estimate),
        Cell::Float(e.standard_error),
        Cell::Float(e.rhs),
        Cell::Float(e.lhs_estimate / e.rhs),
    ]);
    Ok(t)
}
