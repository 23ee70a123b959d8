//! Measurement-noise models with positive support.
//!
//! A measurement is `y = x + e` where `x` is the unknown location and the
//! noise `e` follows one of six families: uniform on `[0, β]`, exponential,
//! Rayleigh, Weibull, Pareto (all with scale `β`, the latter two with an
//! extra shape `α`), or a two-component mixture `α·N(0, σ²) + (1-α)·U[0, β]`
//! that models an instrument with a mostly one-sided error plus occasional
//! symmetric jitter. The mixture's normal component is deliberately not
//! truncated: small negative noise values are possible there, and only there.
//!
//! Densities, distribution functions, moments, and inverse-transform sampling
//! all live here; everything downstream (order statistics, estimators,
//! analytic performance) is expressed against [`NoiseModel`].

use crate::error::{Error, Result};
use crate::rng::StreamRng;
use crate::special::{inv_normal_cdf, normal_cdf, normal_pdf, normal_sf};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// The six supported noise families, without their hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Uniform,
    Exponential,
    Rayleigh,
    Weibull,
    Pareto,
    Mixture,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Uniform,
        Family::Exponential,
        Family::Rayleigh,
        Family::Weibull,
        Family::Pareto,
        Family::Mixture,
    ];

    /// CLI/CSV name.
    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Exponential => "exponential",
            Family::Rayleigh => "rayleigh",
            Family::Weibull => "weibull",
            Family::Pareto => "pareto",
            Family::Mixture => "mixture",
        }
    }

    /// Stable small integer used when deriving random streams.
    pub(crate) fn code(self) -> u64 {
        match self {
            Family::Uniform => 0,
            Family::Exponential => 1,
            Family::Rayleigh => 2,
            Family::Weibull => 3,
            Family::Pareto => 4,
            Family::Mixture => 5,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown noise family `{s}`")))
    }
}

/// A fully parameterized noise model.
///
/// Use the checked constructors ([`NoiseModel::uniform`] and friends) rather
/// than building variants directly; every operation assumes the
/// hyperparameters have been validated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    /// `U[0, β]`.
    Uniform { beta: f64 },
    /// Scale β (mean β).
    Exponential { beta: f64 },
    /// Scale β; density `(e/β²)·exp(-e²/2β²)`.
    Rayleigh { beta: f64 },
    /// Scale β, shape α.
    Weibull { beta: f64, alpha: f64 },
    /// Support `[β, ∞)`, shape α.
    Pareto { beta: f64, alpha: f64 },
    /// `α·N(0, σ²) + (1-α)·U[0, β]`, mixing weight α.
    Mixture { alpha: f64, sigma: f64, beta: f64 },
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

impl NoiseModel {
    pub fn uniform(beta: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        Ok(NoiseModel::Uniform { beta })
    }

    pub fn exponential(beta: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        Ok(NoiseModel::Exponential { beta })
    }

    pub fn rayleigh(beta: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        Ok(NoiseModel::Rayleigh { beta })
    }

    pub fn weibull(beta: f64, alpha: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        require_positive("alpha", alpha)?;
        Ok(NoiseModel::Weibull { beta, alpha })
    }

    pub fn pareto(beta: f64, alpha: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        require_positive("alpha", alpha)?;
        Ok(NoiseModel::Pareto { beta, alpha })
    }

    pub fn mixture(alpha: f64, sigma: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "mixing weight alpha must lie in [0, 1], got {alpha}"
            )));
        }
        require_positive("sigma", sigma)?;
        require_positive("beta", beta)?;
        Ok(NoiseModel::Mixture { alpha, sigma, beta })
    }

    /// Re-run the constructor checks (useful for deserialized values).
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::Uniform { beta } => NoiseModel::uniform(beta).map(drop),
            NoiseModel::Exponential { beta } => NoiseModel::exponential(beta).map(drop),
            NoiseModel::Rayleigh { beta } => NoiseModel::rayleigh(beta).map(drop),
            NoiseModel::Weibull { beta, alpha } => NoiseModel::weibull(beta, alpha).map(drop),
            NoiseModel::Pareto { beta, alpha } => NoiseModel::pareto(beta, alpha).map(drop),
            NoiseModel::Mixture { alpha, sigma, beta } => {
                NoiseModel::mixture(alpha, sigma, beta).map(drop)
            }
        }
    }

    pub fn family(&self) -> Family {
        match self {
            NoiseModel::Uniform { .. } => Family::Uniform,
            NoiseModel::Exponential { .. } => Family::Exponential,
            NoiseModel::Rayleigh { .. } => Family::Rayleigh,
            NoiseModel::Weibull { .. } => Family::Weibull,
            NoiseModel::Pareto { .. } => Family::Pareto,
            NoiseModel::Mixture { .. } => Family::Mixture,
        }
    }

    /// Density of the noise value `e`. At support edges this is the closed
    /// form's one-sided limit (e.g. `1/β` at both ends of the uniform).
    pub fn pdf(&self, e: f64) -> Result<f64> {
        if !e.is_finite() {
            return Err(Error::NonFiniteArgument(e));
        }
        Ok(match *self {
            NoiseModel::Uniform { beta } => {
                if (0.0..=beta).contains(&e) {
                    1.0 / beta
                } else {
                    0.0
                }
            }
            NoiseModel::Exponential { beta } => {
                if e >= 0.0 {
                    (-e / beta).exp() / beta
                } else {
                    0.0
                }
            }
            NoiseModel::Rayleigh { beta } => {
                if e >= 0.0 {
                    e / (beta * beta) * (-e * e / (2.0 * beta * beta)).exp()
                } else {
                    0.0
                }
            }
            NoiseModel::Weibull { beta, alpha } => {
                if e >= 0.0 {
                    // (0/β)^(α-1) covers the edge: 0 for α>1, 1 for α=1,
                    // +∞ (the true limit) for α<1.
                    let t = e / beta;
                    alpha / beta * t.powf(alpha - 1.0) * (-t.powf(alpha)).exp()
                } else {
                    0.0
                }
            }
            NoiseModel::Pareto { beta, alpha } => {
                if e >= beta {
                    alpha / beta * (beta / e).powf(alpha + 1.0)
                } else {
                    0.0
                }
            }
            NoiseModel::Mixture { alpha, sigma, beta } => {
                let normal_part = alpha * normal_pdf(e / sigma) / sigma;
                let uniform_part = if (0.0..=beta).contains(&e) {
                    (1.0 - alpha) / beta
                } else {
                    0.0
                };
                normal_part + uniform_part
            }
        })
    }

    /// `P(noise ≤ e)`.
    pub fn cdf(&self, e: f64) -> Result<f64> {
        if !e.is_finite() {
            return Err(Error::NonFiniteArgument(e));
        }
        Ok(match *self {
            NoiseModel::Uniform { beta } => (e / beta).clamp(0.0, 1.0),
            NoiseModel::Exponential { beta } => {
                if e <= 0.0 {
                    0.0
                } else {
                    -(-e / beta).exp_m1()
                }
            }
            NoiseModel::Rayleigh { beta } => {
                if e <= 0.0 {
                    0.0
                } else {
                    -(-e * e / (2.0 * beta * beta)).exp_m1()
                }
            }
            NoiseModel::Weibull { beta, alpha } => {
                if e <= 0.0 {
                    0.0
                } else {
                    -(-(e / beta).powf(alpha)).exp_m1()
                }
            }
            NoiseModel::Pareto { beta, alpha } => {
                if e <= beta {
                    0.0
                } else {
                    -(alpha * (beta / e).ln()).exp_m1()
                }
            }
            NoiseModel::Mixture { alpha, sigma, beta } => {
                alpha * normal_cdf(e / sigma) + (1.0 - alpha) * (e / beta).clamp(0.0, 1.0)
            }
        })
    }

    /// Survival function `1 - cdf`, computed without cancellation so the
    /// upper tail keeps full relative accuracy (order statistics raise it to
    /// large powers).
    pub fn sf(&self, e: f64) -> Result<f64> {
        if !e.is_finite() {
            return Err(Error::NonFiniteArgument(e));
        }
        Ok(match *self {
            NoiseModel::Uniform { beta } => (1.0 - e / beta).clamp(0.0, 1.0),
            NoiseModel::Exponential { beta } => {
                if e <= 0.0 {
                    1.0
                } else {
                    (-e / beta).exp()
                }
            }
            NoiseModel::Rayleigh { beta } => {
                if e <= 0.0 {
                    1.0
                } else {
                    (-e * e / (2.0 * beta * beta)).exp()
                }
            }
            NoiseModel::Weibull { beta, alpha } => {
                if e <= 0.0 {
                    1.0
                } else {
                    (-(e / beta).powf(alpha)).exp()
                }
            }
            NoiseModel::Pareto { beta, alpha } => {
                if e <= beta {
                    1.0
                } else {
                    (alpha * (beta / e).ln()).exp()
                }
            }
            NoiseModel::Mixture { alpha, sigma, beta } => {
                alpha * normal_sf(e / sigma) + (1.0 - alpha) * (1.0 - e / beta).clamp(0.0, 1.0)
            }
        })
    }

    /// Mean noise δ(θ) — the offset the BLUE subtracts.
    ///
    /// Errors for Pareto with shape ≤ 1, where the mean diverges.
    pub fn mean(&self) -> Result<f64> {
        Ok(match *self {
            NoiseModel::Uniform { beta } => beta / 2.0,
            NoiseModel::Exponential { beta } => beta,
            NoiseModel::Rayleigh { beta } => (PI / 2.0).sqrt() * beta,
            NoiseModel::Weibull { beta, alpha } => beta * crate::special::gamma(1.0 + 1.0 / alpha),
            NoiseModel::Pareto { beta, alpha } => {
                if alpha <= 1.0 {
                    return Err(Error::InfiniteMean(Family::Pareto));
                }
                alpha * beta / (alpha - 1.0)
            }
            NoiseModel::Mixture { alpha, beta, .. } => (1.0 - alpha) * beta / 2.0,
        })
    }

    /// Noise variance. Errors for Pareto with shape ≤ 2.
    pub fn variance(&self) -> Result<f64> {
        Ok(match *self {
            NoiseModel::Uniform { beta } => beta * beta / 12.0,
            NoiseModel::Exponential { beta } => beta * beta,
            NoiseModel::Rayleigh { beta } => (4.0 - PI) * beta * beta / 2.0,
            NoiseModel::Weibull { beta, alpha } => {
                let g1 = crate::special::gamma(1.0 + 1.0 / alpha);
                let g2 = crate::special::gamma(1.0 + 2.0 / alpha);
                beta * beta * (g2 - g1 * g1)
            }
            NoiseModel::Pareto { beta, alpha } => {
                if alpha <= 2.0 {
                    return Err(Error::InfiniteVariance(Family::Pareto));
                }
                alpha * beta * beta / ((alpha - 1.0) * (alpha - 1.0) * (alpha - 2.0))
            }
            NoiseModel::Mixture { alpha, sigma, beta } => {
                (beta * beta * (1.0 + (2.0 - 3.0 * alpha) * alpha) + 12.0 * alpha * sigma * sigma)
                    / 12.0
            }
        })
    }

    /// Draw `n` noise values by inverse transform. The mixture draws its
    /// component indicator first and then one value from that component, so
    /// every draw consumes exactly two generator outputs.
    pub fn sample(&self, n: usize, rng: &mut StreamRng) -> Vec<f64> {
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(self.sample_one(rng));
        }
        out
    }

    pub(crate) fn sample_one(&self, rng: &mut StreamRng) -> f64 {
        match *self {
            NoiseModel::Uniform { beta } => beta * rng.uniform01(),
            // For the four tail families, u ∈ [0,1) keeps 1-u in (0,1], so the
            // quantile stays finite.
            NoiseModel::Exponential { beta } => -beta * (-rng.uniform01()).ln_1p(),
            NoiseModel::Rayleigh { beta } => beta * (-2.0 * (-rng.uniform01()).ln_1p()).sqrt(),
            NoiseModel::Weibull { beta, alpha } => {
                beta * (-(-rng.uniform01()).ln_1p()).powf(1.0 / alpha)
            }
            NoiseModel::Pareto { beta, alpha } => {
                beta * (1.0 - rng.uniform01()).powf(-1.0 / alpha)
            }
            NoiseModel::Mixture { alpha, sigma, beta } => {
                if rng.uniform01() < alpha {
                    sigma * inv_normal_cdf(rng.open01())
                } else {
                    beta * rng.uniform01()
                }
            }
        }
    }
}
