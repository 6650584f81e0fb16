//! Computational toolkit for sums of arithmetic functions over Beatty sets.

pub mod alpha;
pub mod arith;
pub mod cache;
pub mod error;
pub mod grid;
pub mod lil;
pub mod numeric;
pub mod rng;
pub mod sawtooth;
pub mod spectral;

pub use alpha::{
    beatty_enumerate, beatty_member, frac_part, sample_alpha, value_compare, AlphaValue, Angle, BeattyWindow,
    LinearForm, Orbit, Rotation,
};
pub use arith::{
    constant_table, dirichlet_character, growth_ratios, identity_table, rademacher_table, sieve_prime_indicator,
    sieve_tau_k, sieve_totient, zero_table, FunctionSpec, FunctionTable, GrowthRatio, TableKind,
};
pub use error::{Error, Result};
pub use sawtooth::{
    beatty_sum, decomposition_curve, decomposition_report, indicator_alpha, plain_sum, psi, psi_partial_sum,
    sigma_ell_prefix, DecompositionReport,
};
pub use spectral::{
    abs_energy_ratio, c_truncated, carleson_hunt_check, g_coeffs, maximal_sigma, mc_maximal_l2, q_coefficients,
    q_eval, q_l2_quadrature, MaximalEstimate, SpectralEnergy,
};
pub use lil::{increment, lower_bound_witness, s_squared, walk, WalkPoint, WalkTrajectory, Witness};
pub use num_complex::Complex64;
