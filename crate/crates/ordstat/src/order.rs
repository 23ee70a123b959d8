//! Order-statistic distributions built on top of [`NoiseModel`].
//!
//! For a sample of `n` i.i.d. noise values, the k-th smallest has density
//!
//! ```text
//! f_(k,n)(e) = n·C(n-1, k-1) · F(e)^(k-1) · (1-F(e))^(n-k) · f(e)
//! ```
//!
//! The heavy-tailed families are closed under taking the minimum: the
//! smallest of `n` exponential/Rayleigh/Weibull/Pareto draws is again a
//! member of the same family with a rescaled hyperparameter, which is what
//! makes the minimum-based estimators analyzable. Uniform minima follow a
//! Beta law on `[0, β]` instead, and the mixture has no closure at all; both
//! report [`Error::NoClosure`].

use crate::error::{Error, Result};
use crate::noise::{Family, NoiseModel};
use crate::special::ln_choose;

/// A measurement sample sorted ascending, with 1-based rank access.
///
/// Sorting once up front lets every estimator read order statistics in O(1),
/// and because even the sample mean is summed in sorted order, everything
/// downstream is exactly permutation invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedSample {
    sorted: Vec<f64>,
}

impl OrderedSample {
    /// Validate (non-empty, all finite) and sort a raw sample.
    pub fn from_unsorted(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample(bad));
        }
        let mut sorted = values.to_vec();
        sorted.sort_unstable_by(f64::total_cmp);
        Ok(OrderedSample { sorted })
    }

    pub fn n(&self) -> usize {
        self.sorted.len()
    }

    /// k-th smallest, 1-based.
    pub fn rank(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.sorted.len() {
            return Err(Error::RankOutOfRange {
                k,
                n: self.sorted.len(),
            });
        }
        Ok(self.sorted[k - 1])
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.sorted.len() - 1]
    }

    /// Sample mean, accumulated in ascending order.
    pub fn mean(&self) -> f64 {
        self.sorted.iter().sum::<f64>() / self.sorted.len() as f64
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.sorted
    }
}

/// Largest `ln C(n-1, k-1)` for which the direct product form of the order
/// density is evaluated; above it (e.g. n = 2000, k = 1000, where the
/// binomial coefficient is near 10^600) everything moves to the log domain
/// so no intermediate factor can overflow.
const LN_CHOOSE_DIRECT_LIMIT: f64 = 700.0;

fn check_rank(k: usize, n: usize) -> Result<()> {
    if n == 0 || k == 0 || k > n {
        Err(Error::RankOutOfRange { k, n })
    } else {
        Ok(())
    }
}

/// Density of the k-th order statistic (1-based rank) of `n` noise draws.
pub fn order_stat_pdf(model: &NoiseModel, k: usize, n: usize, e: f64) -> Result<f64> {
    check_rank(k, n)?;
    let f = model.pdf(e)?;
    if f == 0.0 {
        return Ok(0.0);
    }
    let cdf = model.cdf(e)?;
    let sf = model.sf(e)?;
    let ln_c = ln_choose((n - 1) as u64, (k - 1) as u64);
    if ln_c < LN_CHOOSE_DIRECT_LIMIT {
        Ok(n as f64 * ln_c.exp() * cdf.powi(k as i32 - 1) * sf.powi((n - k) as i32) * f)
    } else {
        // log-domain path; 0^0 terms must contribute ln 1 = 0 rather than
        // 0 · (-inf) = NaN, so zero bases with nonzero exponents short-circuit.
        if (cdf == 0.0 && k > 1) || (sf == 0.0 && k < n) {
            return Ok(0.0);
        }
        let mut ln = (n as f64).ln() + ln_c + f.ln();
        if k > 1 {
            ln += (k as f64 - 1.0) * cdf.ln();
        }
        if k < n {
            ln += (n - k) as f64 * sf.ln();
        }
        Ok(ln.exp())
    }
}

/// Density of the sample minimum: `n·(1-F(e))^(n-1)·f(e)`.
pub fn min_order_pdf(model: &NoiseModel, n: usize, e: f64) -> Result<f64> {
    order_stat_pdf(model, 1, n, e)
}

/// The law of the minimum of `n` draws, for the families closed under minima.
///
/// * exponential(β) → exponential(β/n)
/// * Rayleigh(β) → Rayleigh(β/√n)
/// * Weibull(β, α) → Weibull(β·n^(-1/α), α)
/// * Pareto(β, α) → Pareto(β, n·α)
///
/// Uniform minima follow a Beta law rather than a uniform one, and mixture
/// minima leave the family entirely; both yield [`Error::NoClosure`].
pub fn minimum_closure(model: &NoiseModel, n: usize) -> Result<NoiseModel> {
    if n == 0 {
        return Err(Error::RankOutOfRange { k: 1, n });
    }
    let nf = n as f64;
    match *model {
        NoiseModel::Exponential { beta } => NoiseModel::exponential(beta / nf),
        NoiseModel::Rayleigh { beta } => NoiseModel::rayleigh(beta / nf.sqrt()),
        NoiseModel::Weibull { beta, alpha } => {
            NoiseModel::weibull(beta * nf.powf(-1.0 / alpha), alpha)
        }
        NoiseModel::Pareto { beta, alpha } => NoiseModel::pareto(beta, nf * alpha),
        NoiseModel::Uniform { .. } => Err(Error::NoClosure(Family::Uniform)),
        NoiseModel::Mixture { .. } => Err(Error::NoClosure(Family::Mixture)),
    }
}

/// Mean and variance of the k-th order statistic of `n` uniform `[0, β]`
/// draws: `E = βk/(n+1)`, `Var = k(n-k+1)β² / ((n+1)²(n+2))`.
pub fn uniform_order_moments(k: usize, n: usize, beta: f64) -> Result<(f64, f64)> {
    NoiseModel::uniform(beta)?;
    check_rank(k, n)?;
    let (kf, nf) = (k as f64, n as f64);
    let mean = beta * kf / (nf + 1.0);
    let var = kf * (nf - kf + 1.0) * beta * beta / ((nf + 1.0) * (nf + 1.0) * (nf + 2.0));
    Ok((mean, var))
}

/// Joint density of (minimum, maximum) of `n ≥ 2` draws at `(u, v)`:
/// `n(n-1)·[F(v)-F(u)]^(n-2)·f(u)·f(v)` for `u < v`, zero otherwise.
pub fn joint_extremes_pdf(model: &NoiseModel, u: f64, v: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::RankOutOfRange { k: 2, n });
    }
    if !u.is_finite() {
        return Err(Error::NonFiniteArgument(u));
    }
    if !v.is_finite() {
        return Err(Error::NonFiniteArgument(v));
    }
    if u >= v {
        return Ok(0.0);
    }
    let fu = model.pdf(u)?;
    let fv = model.pdf(v)?;
    if fu == 0.0 || fv == 0.0 {
        return Ok(0.0);
    }
    let span = (model.cdf(v)? - model.cdf(u)?).max(0.0);
    let nf = n as f64;
    Ok(nf * (nf - 1.0) * span.powi(n as i32 - 2) * fu * fv)
}
