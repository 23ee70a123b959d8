//! Location estimation from measurements corrupted by positive-support noise.
//!
//! The measurement model is `y = x + e`: an unknown location `x` plus a
//! noise term `e` that (apart from one Gaussian contamination model) can
//! only push upward. Because the noise is one-sided, the smallest
//! measurements carry most of the information about `x`, and estimators
//! built from order statistics can beat the sample mean by a wide margin.
//!
//! The crate provides:
//!
//! * six noise families with densities, moments, and inverse-CDF sampling
//!   ([`noise`]);
//! * order-statistic densities, minimum-law closures, and joint extremes
//!   ([`order`]);
//! * five location estimators, from the mean-based baseline to a rank picker
//!   for Gaussian/uniform mixtures ([`estimators`]);
//! * closed-form bias and MSE for every estimator ([`perf`]);
//! * a deterministic, parallel Monte Carlo harness that checks the closed
//!   forms empirically ([`harness`]), with lossless CSV/JSON serialization
//!   ([`output`]);
//! * supporting numerics: special functions, adaptive quadrature, a
//!   counter-mode seeded RNG, and a Kolmogorov–Smirnov test ([`special`],
//!   [`quad`], [`rng`], [`ks`]).
//!
//! Everything downstream of a master seed is reproducible byte for byte,
//! independent of thread count.

pub mod error;
pub mod estimators;
pub mod harness;
pub mod ks;
pub mod noise;
pub mod order;
pub mod output;
pub mod perf;
pub mod quad;
pub mod rng;
pub mod special;

pub use error::{Error, Result};
pub use estimators::{apply, Estimate, EstimatorId, SampleSet};
pub use harness::{
    ecdf, run_cell, run_sweep, DrawPolicy, ExperimentConfig, FamilySpec, HyperDraw, PerfRecord,
    SkippedCell, SweepOutput,
};
pub use noise::{Family, NoiseModel};
pub use order::{
    joint_extremes_pdf, min_order_pdf, minimum_closure, order_stat_pdf, uniform_order_moments,
    OrderedSample,
};
pub use perf::{analytic_bias, analytic_mse, perf_formula, AnalyticValue, PerfFormula};
