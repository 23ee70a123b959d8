//! Closed-form bias and MSE of every estimator, used as ground truth for
//! the Monte Carlo harness.
//!
//! Not every cell has a finite closed form: Pareto moments diverge for small
//! shape, the mixture's minimum and rank estimators have no derived
//! expressions, and the unknown-hyperparameter MSEs for the exponential and
//! Rayleigh families are large-sample approximations. These distinctions are
//! carried explicitly by [`AnalyticValue`] instead of being collapsed into a
//! bare float, so consumers can decide whether a value is comparable to a
//! simulation at a given sample size.

use crate::error::{Error, Result};
use crate::estimators::EstimatorId;
use crate::noise::{Family, NoiseModel};
use crate::special::gamma;
use std::f64::consts::PI;
use std::fmt;

/// Why a closed-form value cannot be reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnavailableReason {
    /// No expression is known (mixture minimum and rank estimators).
    NotDerived,
    /// The relevant mean diverges (Pareto with small shape).
    InfiniteMean,
    /// The relevant variance diverges (Pareto with small shape).
    InfiniteVariance,
}

impl fmt::Display for UnavailableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnavailableReason::NotDerived => "no closed form derived",
            UnavailableReason::InfiniteMean => "mean diverges",
            UnavailableReason::InfiniteVariance => "variance diverges",
        })
    }
}

/// A closed-form performance number, or the reason there is none.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticValue {
    /// Exact at every sample size.
    Exact(f64),
    /// Valid as n → ∞ only; compare against simulation at large n.
    Asymptotic(f64),
    Unavailable(UnavailableReason),
}

impl AnalyticValue {
    /// The numeric value, if one exists (exact or asymptotic).
    pub fn value(&self) -> Option<f64> {
        match *self {
            AnalyticValue::Exact(v) | AnalyticValue::Asymptotic(v) => Some(v),
            AnalyticValue::Unavailable(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnalyticValue::Exact(_))
    }

    pub fn is_asymptotic(&self) -> bool {
        matches!(self, AnalyticValue::Asymptotic(_))
    }
}

/// Bias and MSE of one (family, estimator, n) cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerfFormula {
    pub family: Family,
    pub estimator: EstimatorId,
    pub n: usize,
    pub bias: AnalyticValue,
    pub mse: AnalyticValue,
}

impl PerfFormula {
    /// True when any reported value is a large-sample approximation.
    pub fn asymptotic(&self) -> bool {
        self.bias.is_asymptotic() || self.mse.is_asymptotic()
    }
}

fn check_cell(model: &NoiseModel, est: EstimatorId, n: usize) -> Result<()> {
    let family = model.family();
    if !est.is_applicable(family) {
        return Err(Error::UnsupportedEstimator {
            estimator: est,
            family,
        });
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "sample size must be at least 1".into(),
        ));
    }
    if est == EstimatorId::UnbiasedUnknown && n < 2 {
        return Err(Error::NeedsTwoSamples);
    }
    Ok(())
}

/// Closed-form bias of the estimator at sample size `n`.
///
/// Zero for the three unbiased estimators, the mean of the minimum's law for
/// `min`, and unavailable where no expression exists (mixture `min` and
/// `mixture-rank`) or the mean diverges (Pareto small shape).
pub fn analytic_bias(model: &NoiseModel, est: EstimatorId, n: usize) -> Result<AnalyticValue> {
    check_cell(model, est, n)?;
    let nf = n as f64;
    Ok(match est {
        EstimatorId::Blue => match *model {
            NoiseModel::Pareto { alpha, .. } if alpha <= 1.0 => {
                AnalyticValue::Unavailable(UnavailableReason::InfiniteMean)
            }
            _ => AnalyticValue::Exact(0.0),
        },
        EstimatorId::UnbiasedKnown => match *model {
            NoiseModel::Pareto { alpha, .. } if nf * alpha <= 1.0 => {
                AnalyticValue::Unavailable(UnavailableReason::InfiniteMean)
            }
            _ => AnalyticValue::Exact(0.0),
        },
        EstimatorId::UnbiasedUnknown => AnalyticValue::Exact(0.0),
        EstimatorId::MinOrder => match *model {
            NoiseModel::Uniform { beta } => AnalyticValue::Exact(beta / (nf + 1.0)),
            NoiseModel::Exponential { beta } => AnalyticValue::Exact(beta / nf),
            NoiseModel::Rayleigh { beta } => {
                AnalyticValue::Exact((PI / 2.0).sqrt() * beta / nf.sqrt())
            }
            NoiseModel::Weibull { beta, alpha } => {
                AnalyticValue::Exact(beta * nf.powf(-1.0 / alpha) * gamma(1.0 + 1.0 / alpha))
            }
            NoiseModel::Pareto { beta, alpha } => {
                let na = nf * alpha;
                if na <= 1.0 {
                    AnalyticValue::Unavailable(UnavailableReason::InfiniteMean)
                } else {
                    AnalyticValue::Exact(na * beta / (na - 1.0))
                }
            }
            NoiseModel::Mixture { .. } => {
                AnalyticValue::Unavailable(UnavailableReason::NotDerived)
            }
        },
        EstimatorId::MixtureRank => AnalyticValue::Unavailable(UnavailableReason::NotDerived),
    })
}

/// Closed-form mean squared error of the estimator at sample size `n`.
///
/// The exponential and Rayleigh unknown-hyperparameter entries are tagged
/// [`AnalyticValue::Asymptotic`]: they are derived for large `n` and should
/// only be compared to simulation at `n ≥ 50` or so.
pub fn analytic_mse(model: &NoiseModel, est: EstimatorId, n: usize) -> Result<AnalyticValue> {
    check_cell(model, est, n)?;
    let nf = n as f64;
    Ok(match est {
        EstimatorId::Blue => match model.variance() {
            Ok(var) => AnalyticValue::Exact(var / nf),
            Err(_) => AnalyticValue::Unavailable(UnavailableReason::InfiniteVariance),
        },
        EstimatorId::UnbiasedKnown => match *model {
            NoiseModel::Uniform { beta } => {
                AnalyticValue::Exact(beta * beta / (2.0 * nf * (nf + 3.0) + 4.0))
            }
            NoiseModel::Exponential { beta } => AnalyticValue::Exact(beta * beta / (nf * nf)),
            NoiseModel::Rayleigh { beta } => {
                AnalyticValue::Exact((4.0 - PI) * beta * beta / (2.0 * nf))
            }
            NoiseModel::Weibull { beta, alpha } => {
                let g1 = gamma(1.0 + 1.0 / alpha);
                let g2 = gamma(1.0 + 2.0 / alpha);
                AnalyticValue::Exact(beta * beta * nf.powf(-2.0 / alpha) * (g2 - g1 * g1))
            }
            NoiseModel::Pareto { beta, alpha } => {
                let na = nf * alpha;
                if na <= 2.0 {
                    AnalyticValue::Unavailable(UnavailableReason::InfiniteVariance)
                } else {
                    AnalyticValue::Exact(na * beta * beta / ((na - 1.0) * (na - 1.0) * (na - 2.0)))
                }
            }
            NoiseModel::Mixture { .. } => unreachable!("applicability checked"),
        },
        EstimatorId::UnbiasedUnknown => match *model {
            NoiseModel::Uniform { beta } => {
                AnalyticValue::Exact(nf * beta * beta / ((nf + 2.0) * (nf * nf - 1.0)))
            }
            NoiseModel::Exponential { beta } => AnalyticValue::Asymptotic(
                (nf + 1.0) * beta * beta / (nf * (nf - 1.0) * (nf - 1.0)),
            ),
            NoiseModel::Rayleigh { beta } => {
                let s = nf.sqrt() - 1.0;
                AnalyticValue::Asymptotic(
                    (1.0 + nf) * (4.0 - PI) * beta * beta / (2.0 * nf * s * s),
                )
            }
            _ => unreachable!("applicability checked"),
        },
        EstimatorId::MinOrder => match *model {
            NoiseModel::Uniform { beta } => {
                AnalyticValue::Exact(2.0 * beta * beta / ((nf + 1.0) * (nf + 2.0)))
            }
            NoiseModel::Exponential { beta } => {
                AnalyticValue::Exact(2.0 * beta * beta / (nf * nf))
            }
            NoiseModel::Rayleigh { beta } => AnalyticValue::Exact(2.0 * beta * beta / nf),
            NoiseModel::Weibull { beta, alpha } => AnalyticValue::Exact(
                beta * beta * nf.powf(-2.0 / alpha) * gamma(1.0 + 2.0 / alpha),
            ),
            NoiseModel::Pareto { beta, alpha } => {
                let na = nf * alpha;
                if na <= 2.0 {
                    AnalyticValue::Unavailable(UnavailableReason::InfiniteVariance)
                } else {
                    AnalyticValue::Exact(na * beta * beta / (na - 2.0))
                }
            }
            NoiseModel::Mixture { .. } => {
                AnalyticValue::Unavailable(UnavailableReason::NotDerived)
            }
        },
        EstimatorId::MixtureRank => AnalyticValue::Unavailable(UnavailableReason::NotDerived),
    })
}

/// Bias and MSE for one cell in a single call.
pub fn perf_formula(model: &NoiseModel, est: EstimatorId, n: usize) -> Result<PerfFormula> {
    Ok(PerfFormula {
        family: model.family(),
        estimator: est,
        n,
        bias: analytic_bias(model, est, n)?,
        mse: analytic_mse(model, est, n)?,
    })
}
