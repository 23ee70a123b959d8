//! Monte Carlo benchmark harness.
//!
//! A *cell* is one (family, estimator, n) combination. For each cell the
//! harness simulates `mc_runs` independent samples `y_i = x + e_i`, applies
//! the estimator, and reports empirical bias / variance / MSE next to the
//! closed forms from [`crate::perf`].
//!
//! Reproducibility is absolute: every replicate owns a counter-mode stream
//! derived from the master seed and the cell coordinates, so results are
//! byte-identical across runs, thread counts, and cell orderings. By default
//! all estimators of a cell see the *same* simulated samples (common random
//! numbers), which cancels simulation noise out of estimator comparisons;
//! [`DrawPolicy::Independent`] gives every estimator its own draws instead.

use crate::error::{Error, Result};
use crate::estimators::{self, EstimatorId};
use crate::noise::{Family, NoiseModel};
use crate::order::OrderedSample;
use crate::perf;
use crate::rng::{derive_stream, StreamRng};
use rayon::prelude::*;

/// Stream-purpose tag for replicate noise generation.
const STREAM_NOISE: u64 = 1;
/// Stream-purpose tag for standalone draws (`ecdf`).
const STREAM_DRAWS: u64 = 2;

/// The built-in sample-size grid (CLI preset `paper`): a coarse ladder from
/// 2 to 2000 plus a fine band around n = 200 where the mixture rank
/// estimator's index jumps.
pub fn reference_grid() -> Vec<usize> {
    let mut grid: Vec<usize> = vec![2, 3, 5, 10, 20, 50, 100, 200, 500, 1000, 2000];
    grid.extend(190..=210);
    grid.sort_unstable();
    grid.dedup();
    grid
}

/// A family with hyperparameters either fixed for the whole sweep or redrawn
/// from [`HyperDraw`] ranges on every replicate.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Fixed(NoiseModel),
    Draw(Family),
}

impl FamilySpec {
    pub fn family(&self) -> Family {
        match self {
            FamilySpec::Fixed(model) => model.family(),
            FamilySpec::Draw(family) => *family,
        }
    }
}

/// Hyperparameter ranges for draw mode, sampled uniformly per replicate.
///
/// Scale parameters without a range (`weibull_beta`, `pareto_beta`) and the
/// mixture's mixing weight stay fixed; the Pareto shape range keeps both
/// mean and variance finite so analytic columns remain comparable.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperDraw {
    pub uniform_beta: (f64, f64),
    pub exponential_beta: (f64, f64),
    pub rayleigh_beta: (f64, f64),
    pub weibull_beta: f64,
    pub weibull_alpha: (f64, f64),
    pub pareto_beta: f64,
    pub pareto_alpha: (f64, f64),
    pub mixture_alpha: f64,
    pub mixture_sigma: (f64, f64),
    pub mixture_beta: (f64, f64),
}

impl Default for HyperDraw {
    fn default() -> Self {
        Self {
            uniform_beta: (6.0, 50.0),
            exponential_beta: (5.0, 14.0),
            rayleigh_beta: (5.0, 12.0),
            weibull_beta: 1.0,
            weibull_alpha: (5.0, 10.0),
            pareto_beta: 6.0,
            pareto_alpha: (2.1, 2.5),
            mixture_alpha: 0.5,
            mixture_sigma: (1.0, 9.0),
            mixture_beta: (1.0, 50.0),
        }
    }
}

fn check_range(name: &str, (lo, hi): (f64, f64)) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || hi < lo {
        return Err(Error::InvalidConfig(format!(
            "{name} range must satisfy 0 < lo <= hi, got [{lo}, {hi}]"
        )));
    }
    Ok(())
}

impl HyperDraw {
    pub fn validate(&self) -> Result<()> {
        check_range("uniform beta", self.uniform_beta)?;
        check_range("exponential beta", self.exponential_beta)?;
        check_range("rayleigh beta", self.rayleigh_beta)?;
        check_range("weibull alpha", self.weibull_alpha)?;
        check_range("pareto alpha", self.pareto_alpha)?;
        check_range("mixture sigma", self.mixture_sigma)?;
        check_range("mixture beta", self.mixture_beta)?;
        if !(self.weibull_beta.is_finite() && self.weibull_beta > 0.0) {
            return Err(Error::InvalidConfig("weibull beta must be positive".into()));
        }
        if !(self.pareto_beta.is_finite() && self.pareto_beta > 0.0) {
            return Err(Error::InvalidConfig("pareto beta must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.mixture_alpha) {
            return Err(Error::InvalidConfig(
                "mixture alpha must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }

    /// Draw one hyperparameter vector for `family` from the configured ranges.
    pub fn draw(&self, family: Family, rng: &mut StreamRng) -> Result<NoiseModel> {
        match family {
            Family::Uniform => {
                NoiseModel::uniform(rng.uniform_in(self.uniform_beta.0, self.uniform_beta.1))
            }
            Family::Exponential => NoiseModel::exponential(
                rng.uniform_in(self.exponential_beta.0, self.exponential_beta.1),
            ),
            Family::Rayleigh => {
                NoiseModel::rayleigh(rng.uniform_in(self.rayleigh_beta.0, self.rayleigh_beta.1))
            }
            Family::Weibull => NoiseModel::weibull(
                self.weibull_beta,
                rng.uniform_in(self.weibull_alpha.0, self.weibull_alpha.1),
            ),
            Family::Pareto => NoiseModel::pareto(
                self.pareto_beta,
                rng.uniform_in(self.pareto_alpha.0, self.pareto_alpha.1),
            ),
            Family::Mixture => {
                let sigma = rng.uniform_in(self.mixture_sigma.0, self.mixture_sigma.1);
                let beta = rng.uniform_in(self.mixture_beta.0, self.mixture_beta.1);
                NoiseModel::mixture(self.mixture_alpha, sigma, beta)
            }
        }
    }
}

/// Whether all estimators of a cell share the same simulated samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DrawPolicy {
    /// Common random numbers: one sample per (family, n, replicate), fed to
    /// every estimator.
    #[default]
    Shared,
    /// A fresh sample per (family, estimator, n, replicate).
    Independent,
}

/// Full description of a benchmark sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub families: Vec<FamilySpec>,
    /// Restrict to these estimators; `None` runs every applicable one.
    pub estimators: Option<Vec<EstimatorId>>,
    pub n_grid: Vec<usize>,
    pub mc_runs: usize,
    pub master_seed: u64,
    /// True location added to every noise draw.
    pub true_x: f64,
    pub hyper: HyperDraw,
    pub draw_policy: DrawPolicy,
}

impl ExperimentConfig {
    /// A sweep over `families` with the default grid, 5000 replicates,
    /// seed 0, true location 0, and shared draws.
    pub fn new(families: Vec<FamilySpec>) -> Self {
        Self {
            families,
            estimators: None,
            n_grid: reference_grid(),
            mc_runs: 5000,
            master_seed: 0,
            true_x: 0.0,
            hyper: HyperDraw::default(),
            draw_policy: DrawPolicy::Shared,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.families.is_empty() {
            return Err(Error::InvalidConfig("at least one family required".into()));
        }
        for spec in &self.families {
            if let FamilySpec::Fixed(model) = spec {
                model.validate()?;
            }
        }
        if let Some(list) = &self.estimators {
            if list.is_empty() {
                return Err(Error::InvalidConfig(
                    "estimator filter must not be empty".into(),
                ));
            }
        }
        if self.n_grid.is_empty() {
            return Err(Error::InvalidConfig("n grid must not be empty".into()));
        }
        for window in self.n_grid.windows(2) {
            if window[1] <= window[0] {
                return Err(Error::InvalidConfig(
                    "n grid must be strictly ascending".into(),
                ));
            }
        }
        let (lo, hi) = (self.n_grid[0], *self.n_grid.last().unwrap());
        if lo < 2 || hi > 2000 {
            return Err(Error::InvalidConfig(
                "n grid values must lie in [2, 2000]".into(),
            ));
        }
        if self.mc_runs < 2 {
            return Err(Error::InvalidConfig("mc_runs must be at least 2".into()));
        }
        if !self.true_x.is_finite() {
            return Err(Error::InvalidConfig("true_x must be finite".into()));
        }
        self.hyper.validate()
    }
}

/// One benchmark row: a cell's empirical moments next to the closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct PerfRecord {
    pub family: Family,
    pub estimator: EstimatorId,
    pub n: usize,
    pub mc_runs: usize,
    pub seed: u64,
    /// Hyperparameters when fixed for the whole cell; `None` in draw mode.
    pub theta: Option<NoiseModel>,
    pub true_x: f64,
    /// Closed-form values; `None` where no finite expression exists. In draw
    /// mode these are averages of the per-replicate closed forms.
    pub analytic_bias: Option<f64>,
    pub analytic_mse: Option<f64>,
    pub emp_bias: f64,
    pub emp_var: f64,
    pub emp_mse: f64,
}

/// A cell the sweep could not run, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCell {
    pub family: Family,
    pub estimator: EstimatorId,
    pub n: usize,
    pub reason: Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub records: Vec<PerfRecord>,
    pub skipped: Vec<SkippedCell>,
}

/// Bias, variance, and MSE of a replicate set around the true location.
///
/// Variance uses the 1/M normalization so that
/// `emp_mse == emp_var + emp_bias²` holds exactly as computed.
pub fn empirical_moments(estimates: &[f64], true_x: f64) -> Result<(f64, f64, f64)> {
    if estimates.len() < 2 {
        return Err(Error::InvalidParameter(
            "empirical moments need at least two replicates".into(),
        ));
    }
    for &v in estimates {
        if !v.is_finite() {
            return Err(Error::NonFiniteSample(v));
        }
    }
    let m = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / m;
    let bias = mean - true_x;
    let var = estimates.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / m;
    Ok((bias, var, var + bias * bias))
}

fn replicate_stream(
    policy: DrawPolicy,
    family: Family,
    est: EstimatorId,
    n: usize,
    rep: usize,
) -> u64 {
    match policy {
        DrawPolicy::Shared => derive_stream(&[STREAM_NOISE, family.code(), n as u64, rep as u64]),
        DrawPolicy::Independent => derive_stream(&[
            STREAM_NOISE,
            family.code(),
            est.code(),
            n as u64,
            rep as u64,
        ]),
    }
}

#[allow(clippy::too_many_arguments)]
fn one_replicate(
    spec: &FamilySpec,
    est: EstimatorId,
    n: usize,
    rep: usize,
    master_seed: u64,
    true_x: f64,
    hyper: &HyperDraw,
    policy: DrawPolicy,
) -> Result<(f64, NoiseModel)> {
    let stream = replicate_stream(policy, spec.family(), est, n, rep);
    let mut rng = StreamRng::new(master_seed, stream);
    let model = match spec {
        FamilySpec::Fixed(model) => *model,
        FamilySpec::Draw(family) => hyper.draw(*family, &mut rng)?,
    };
    let values: Vec<f64> = model
        .sample(n, &mut rng)
        .into_iter()
        .map(|e| true_x + e)
        .collect();
    let ordered = OrderedSample::from_unsorted(&values)?;
    let estimate = estimators::apply(est, &model, &ordered)?;
    Ok((estimate.value, model))
}

/// Replicate estimates for a fixed model under shared draws, in replicate
/// order. This is the raw material behind [`run_cell`], exposed so callers
/// can compute Monte Carlo standard errors of derived statistics.
pub fn cell_estimates(
    model: &NoiseModel,
    est: EstimatorId,
    n: usize,
    mc_runs: usize,
    master_seed: u64,
    true_x: f64,
) -> Result<Vec<f64>> {
    model.validate()?;
    let spec = FamilySpec::Fixed(*model);
    let hyper = HyperDraw::default();
    (0..mc_runs)
        .map(|rep| {
            one_replicate(
                &spec,
                est,
                n,
                rep,
                master_seed,
                true_x,
                &hyper,
                DrawPolicy::Shared,
            )
            .map(|(value, _)| value)
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn run_cell_spec(
    spec: &FamilySpec,
    est: EstimatorId,
    n: usize,
    mc_runs: usize,
    master_seed: u64,
    true_x: f64,
    hyper: &HyperDraw,
    policy: DrawPolicy,
) -> Result<PerfRecord> {
    let mut estimates = Vec::with_capacity(mc_runs);
    let mut bias_sum = 0.0;
    let mut mse_sum = 0.0;
    let mut bias_known = true;
    let mut mse_known = true;
    for rep in 0..mc_runs {
        let (value, model) = one_replicate(spec, est, n, rep, master_seed, true_x, hyper, policy)?;
        estimates.push(value);
        if matches!(spec, FamilySpec::Draw(_)) {
            match perf::analytic_bias(&model, est, n)?.value() {
                Some(b) if bias_known => bias_sum += b,
                _ => bias_known = false,
            }
            match perf::analytic_mse(&model, est, n)?.value() {
                Some(s) if mse_known => mse_sum += s,
                _ => mse_known = false,
            }
        }
    }
    let (emp_bias, emp_var, emp_mse) = empirical_moments(&estimates, true_x)?;
    let (theta, analytic_bias, analytic_mse) = match spec {
        FamilySpec::Fixed(model) => (
            Some(*model),
            perf::analytic_bias(model, est, n)?.value(),
            perf::analytic_mse(model, est, n)?.value(),
        ),
        FamilySpec::Draw(_) => {
            let m = mc_runs as f64;
            (
                None,
                bias_known.then_some(bias_sum / m),
                mse_known.then_some(mse_sum / m),
            )
        }
    };
    Ok(PerfRecord {
        family: spec.family(),
        estimator: est,
        n,
        mc_runs,
        seed: master_seed,
        theta,
        true_x,
        analytic_bias,
        analytic_mse,
        emp_bias,
        emp_var,
        emp_mse,
    })
}

/// Benchmark one fixed-hyperparameter cell with shared draws.
pub fn run_cell(
    model: &NoiseModel,
    est: EstimatorId,
    n: usize,
    mc_runs: usize,
    master_seed: u64,
    true_x: f64,
) -> Result<PerfRecord> {
    model.validate()?;
    if mc_runs < 2 {
        return Err(Error::InvalidConfig("mc_runs must be at least 2".into()));
    }
    run_cell_spec(
        &FamilySpec::Fixed(*model),
        est,
        n,
        mc_runs,
        master_seed,
        true_x,
        &HyperDraw::default(),
        DrawPolicy::Shared,
    )
}

/// Run every cell of the configured sweep, in parallel.
///
/// Records come back sorted by family (config order), then estimator (the
/// family's applicability order, or the config filter's order), then n.
/// Cells that cannot run are reported in `skipped`, never silently dropped.
/// Output is independent of the rayon thread count.
pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepOutput> {
    config.validate()?;
    struct Work<'a> {
        spec: &'a FamilySpec,
        est: EstimatorId,
        n: usize,
    }
    let mut work = Vec::new();
    let mut skipped = Vec::new();
    for spec in &config.families {
        let family = spec.family();
        let ests: Vec<EstimatorId> = match &config.estimators {
            None => EstimatorId::applicable(family).to_vec(),
            Some(filter) => filter.clone(),
        };
        for est in ests {
            if !est.is_applicable(family) {
                for &n in &config.n_grid {
                    skipped.push(SkippedCell {
                        family,
                        estimator: est,
                        n,
                        reason: Error::UnsupportedEstimator {
                            estimator: est,
                            family,
                        },
                    });
                }
                continue;
            }
            for &n in &config.n_grid {
                work.push(Work { spec, est, n });
            }
        }
    }
    let outcomes: Vec<Result<PerfRecord, SkippedCell>> = work
        .par_iter()
        .map(|w| {
            run_cell_spec(
                w.spec,
                w.est,
                w.n,
                config.mc_runs,
                config.master_seed,
                config.true_x,
                &config.hyper,
                config.draw_policy,
            )
            .map_err(|reason| SkippedCell {
                family: w.spec.family(),
                estimator: w.est,
                n: w.n,
                reason,
            })
        })
        .collect();
    let mut records = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        match outcome {
            Ok(record) => records.push(record),
            Err(skip) => skipped.push(skip),
        }
    }
    Ok(SweepOutput { records, skipped })
}

/// Deterministic draws from a noise spec, for empirical CDF output.
///
/// In draw mode the hyperparameters are redrawn before every single draw.
pub fn draw_noise(
    spec: &FamilySpec,
    count: usize,
    master_seed: u64,
    hyper: &HyperDraw,
) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::EmptySample);
    }
    let stream = derive_stream(&[STREAM_DRAWS, spec.family().code()]);
    let mut rng = StreamRng::new(master_seed, stream);
    match spec {
        FamilySpec::Fixed(model) => {
            model.validate()?;
            Ok(model.sample(count, &mut rng))
        }
        FamilySpec::Draw(family) => {
            hyper.validate()?;
            (0..count)
                .map(|_| {
                    let model = hyper.draw(*family, &mut rng)?;
                    Ok(model.sample_one(&mut rng))
                })
                .collect()
        }
    }
}

/// Empirical CDF of `values`: sorted unique values with cumulative
/// probabilities. Duplicates collapse into one step; the last probability is
/// exactly 1.
pub fn ecdf(values: &[f64]) -> Result<Vec<(f64, f64)>> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    for &v in values {
        if !v.is_finite() {
            return Err(Error::NonFiniteSample(v));
        }
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let total = sorted.len() as f64;
    let mut steps = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let v = sorted[i];
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == v {
            j += 1;
        }
        steps.push((v, j as f64 / total));
        i = j;
    }
    Ok(steps)
}
