//! Location estimators built from order statistics.
//!
//! Every estimator receives measurements `y_i = x + e_i` and returns a point
//! estimate of `x`:
//!
//! * **blue** — sample mean minus the known mean noise; the best linear
//!   unbiased estimator when only first/second noise moments are used.
//! * **unbiased-known** — an unbiased combination of order statistics using
//!   the known hyperparameters (minimum variance unbiased for the uniform and
//!   exponential families).
//! * **unbiased-unknown** — trades the unknown scale for a second statistic
//!   of the sample; exists for uniform/exponential/Rayleigh and needs n ≥ 2.
//! * **min** — the raw sample minimum, biased but hyperparameter-free.
//! * **mixture-rank** — for mixture noise only: returns the order statistic
//!   whose rank is the most likely one to sit at the center of the symmetric
//!   noise component.

use crate::error::{Error, Result};
use crate::noise::{Family, NoiseModel};
use crate::order::OrderedSample;
use crate::special::ln_choose;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// The five estimators the harness can benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorId {
    Blue,
    UnbiasedKnown,
    UnbiasedUnknown,
    MinOrder,
    MixtureRank,
}

impl EstimatorId {
    pub const ALL: [EstimatorId; 5] = [
        EstimatorId::Blue,
        EstimatorId::UnbiasedKnown,
        EstimatorId::UnbiasedUnknown,
        EstimatorId::MinOrder,
        EstimatorId::MixtureRank,
    ];

    /// CLI/CSV name.
    pub fn name(self) -> &'static str {
        match self {
            EstimatorId::Blue => "blue",
            EstimatorId::UnbiasedKnown => "unbiased-known",
            EstimatorId::UnbiasedUnknown => "unbiased-unknown",
            EstimatorId::MinOrder => "min",
            EstimatorId::MixtureRank => "mixture-rank",
        }
    }

    /// Stable small integer used when deriving random streams.
    pub(crate) fn code(self) -> u64 {
        match self {
            EstimatorId::Blue => 0,
            EstimatorId::UnbiasedKnown => 1,
            EstimatorId::UnbiasedUnknown => 2,
            EstimatorId::MinOrder => 3,
            EstimatorId::MixtureRank => 4,
        }
    }

    /// Which estimators make sense for a family. The unknown-θ forms exist
    /// only for the single-hyperparameter families; the rank picker only for
    /// the mixture, which has no closed-form unbiased correction.
    pub fn applicable(family: Family) -> &'static [EstimatorId] {
        match family {
            Family::Uniform | Family::Exponential | Family::Rayleigh => &[
                EstimatorId::Blue,
                EstimatorId::UnbiasedKnown,
                EstimatorId::UnbiasedUnknown,
                EstimatorId::MinOrder,
            ],
            Family::Weibull | Family::Pareto => &[
                EstimatorId::Blue,
                EstimatorId::UnbiasedKnown,
                EstimatorId::MinOrder,
            ],
            Family::Mixture => &[
                EstimatorId::Blue,
                EstimatorId::MinOrder,
                EstimatorId::MixtureRank,
            ],
        }
    }

    pub fn is_applicable(self, family: Family) -> bool {
        EstimatorId::applicable(family).contains(&self)
    }
}

impl fmt::Display for EstimatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // `min-order` kept as an accepted alias of the canonical `min`
        if s == "min-order" {
            return Ok(EstimatorId::MinOrder);
        }
        EstimatorId::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown estimator `{s}`")))
    }
}

/// A validated raw measurement sample (finite values, at least one).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
}

impl SampleSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample(bad));
        }
        Ok(SampleSet { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sort into an [`OrderedSample`]; estimators consume the sorted view.
    pub fn order(&self) -> OrderedSample {
        OrderedSample::from_unsorted(&self.values).expect("SampleSet is already validated")
    }
}

/// A point estimate of the location, tagged with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub estimator: EstimatorId,
    pub n: usize,
    /// Noise family assumed by the estimator; `None` for the raw minimum,
    /// which assumes nothing.
    pub family: Option<Family>,
}

fn make_estimate(
    value: f64,
    estimator: EstimatorId,
    n: usize,
    family: Option<Family>,
) -> Estimate {
    debug_assert!(value.is_finite());
    Estimate {
        value,
        estimator,
        n,
        family,
    }
}

/// Sample mean minus the known mean noise.
///
/// Errors when the noise mean diverges (Pareto shape ≤ 1).
pub fn blue(model: &NoiseModel, s: &OrderedSample) -> Result<Estimate> {
    let value = s.mean() - model.mean()?;
    Ok(make_estimate(
        value,
        EstimatorId::Blue,
        s.n(),
        Some(model.family()),
    ))
}

/// The raw sample minimum. Needs no noise model at all.
pub fn min_estimator(s: &OrderedSample) -> Estimate {
    make_estimate(s.min(), EstimatorId::MinOrder, s.n(), None)
}

/// Unbiased estimator with known hyperparameters:
///
/// * uniform: `(y(1) + y(n))/2 − β/2`
/// * exponential: `y(1) − β/n`
/// * Rayleigh: `y(1) − √π·β/√(2n)`
/// * Weibull: `y(1) − β·n^(−1/α)·Γ(1+1/α)`
/// * Pareto: `y(1) − nαβ/(nα−1)` (needs nα > 1)
pub fn unbiased_known(model: &NoiseModel, s: &OrderedSample) -> Result<Estimate> {
    let n = s.n() as f64;
    let y1 = s.min();
    let value = match *model {
        NoiseModel::Uniform { beta } => 0.5 * (y1 + s.max()) - beta / 2.0,
        NoiseModel::Exponential { beta } => y1 - beta / n,
        NoiseModel::Rayleigh { beta } => y1 - (PI / 2.0).sqrt() * beta / n.sqrt(),
        NoiseModel::Weibull { beta, alpha } => {
            y1 - beta * n.powf(-1.0 / alpha) * crate::special::gamma(1.0 + 1.0 / alpha)
        }
        NoiseModel::Pareto { beta, alpha } => {
            let na = n * alpha;
            if na <= 1.0 {
                return Err(Error::BiasUndefined(format!(
                    "the minimum of {n} Pareto draws with shape {alpha} has no finite mean"
                )));
            }
            y1 - na * beta / (na - 1.0)
        }
        NoiseModel::Mixture { .. } => {
            return Err(Error::UnsupportedEstimator {
                estimator: EstimatorId::UnbiasedKnown,
                family: Family::Mixture,
            })
        }
    };
    Ok(make_estimate(
        value,
        EstimatorId::UnbiasedKnown,
        s.n(),
        Some(model.family()),
    ))
}

/// Unbiased estimator with unknown hyperparameters, for the families where
/// a second statistic can stand in for the scale (needs n ≥ 2):
///
/// * uniform: `n/(n−1)·y(1) − y(n)/(n−1)`
/// * exponential: `n/(n−1)·y(1) − ȳ/(n−1)`
/// * Rayleigh: `(√n·y(1) − ȳ)/(√n − 1)`
pub fn unbiased_unknown(family: Family, s: &OrderedSample) -> Result<Estimate> {
    let n = s.n();
    if n < 2 {
        return Err(Error::NeedsTwoSamples);
    }
    let nf = n as f64;
    let y1 = s.min();
    let value = match family {
        Family::Uniform => (nf * y1 - s.max()) / (nf - 1.0),
        Family::Exponential => (nf * y1 - s.mean()) / (nf - 1.0),
        Family::Rayleigh => (nf.sqrt() * y1 - s.mean()) / (nf.sqrt() - 1.0),
        other => {
            return Err(Error::UnsupportedEstimator {
                estimator: EstimatorId::UnbiasedUnknown,
                family: other,
            })
        }
    };
    Ok(make_estimate(
        value,
        EstimatorId::UnbiasedUnknown,
        n,
        Some(family),
    ))
}

/// Rank picked by the mixture estimator: `⌊n·α/2⌋ + 1`, the mode of
/// [`mixture_rank_likelihood`] (with ties resolved toward the larger rank).
pub fn mixture_rank_index(n: usize, alpha: f64) -> Result<usize> {
    if n == 0 {
        return Err(Error::RankOutOfRange { k: 1, n });
    }
    check_mixing(alpha)?;
    let k = (n as f64 * alpha / 2.0).floor() as usize + 1;
    Ok(k.min(n))
}

/// Relative likelihood that rank `k` is the order statistic sitting at the
/// center of the mixture's symmetric component:
/// `C(n−1, k−1)·(α/2)^(k−1)·(1−α/2)^(n−k)` — the pmf of Binomial(n−1, α/2)
/// at k−1, so the values over k sum to one.
///
/// At `α = 0` the `0^0 = 1` convention applies: only `k = 1` has positive
/// likelihood.
pub fn mixture_rank_likelihood(k: usize, n: usize, alpha: f64) -> Result<f64> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::RankOutOfRange { k, n });
    }
    check_mixing(alpha)?;
    let half = alpha / 2.0;
    let mut ln = ln_choose((n - 1) as u64, (k - 1) as u64);
    if k > 1 {
        if half == 0.0 {
            return Ok(0.0);
        }
        ln += (k as f64 - 1.0) * half.ln();
    }
    if k < n {
        // 1 − α/2 ≥ 1/2, so this log is always finite
        ln += (n - k) as f64 * (-half).ln_1p();
    }
    Ok(ln.exp())
}

fn check_mixing(alpha: f64) -> Result<()> {
    if alpha.is_finite() && (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "mixing weight alpha must lie in [0, 1], got {alpha}"
        )))
    }
}

/// Mixture-noise location estimate: the order statistic at the most likely
/// "center" rank. With mixing weight α, about `n·α/2` of the symmetric
/// component's draws land below the location, so that rank's order statistic
/// concentrates near `x`.
pub fn mixture_rank(alpha: f64, s: &OrderedSample) -> Result<Estimate> {
    let k = mixture_rank_index(s.n(), alpha)?;
    Ok(make_estimate(
        s.rank(k)?,
        EstimatorId::MixtureRank,
        s.n(),
        Some(Family::Mixture),
    ))
}

/// Dispatch an estimator by id, enforcing the applicability matrix.
pub fn apply(estimator: EstimatorId, model: &NoiseModel, s: &OrderedSample) -> Result<Estimate> {
    let family = model.family();
    if !estimator.is_applicable(family) {
        return Err(Error::UnsupportedEstimator { estimator, family });
    }
    match estimator {
        EstimatorId::Blue => blue(model, s),
        EstimatorId::UnbiasedKnown => unbiased_known(model, s),
        EstimatorId::UnbiasedUnknown => unbiased_unknown(family, s),
        EstimatorId::MinOrder => Ok(min_estimator(s)),
        EstimatorId::MixtureRank => {
            let NoiseModel::Mixture { alpha, .. } = *model else {
                unreachable!("applicability matrix restricts mixture-rank to the mixture family")
            };
            mixture_rank(alpha, s)
        }
    }
}
