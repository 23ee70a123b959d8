use crate::estimators::EstimatorId;
use crate::noise::Family;
use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants are deliberately specific: the benchmark harness turns
/// applicability errors into skipped-cell markers and the CLI prints them
/// verbatim, so each message has to stand on its own.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Hyperparameter or argument validation failed.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A density, distribution function, or similar was handed a NaN/infinity.
    #[error("argument must be finite, got {0}")]
    NonFiniteArgument(f64),

    #[error("sample must contain at least one value")]
    EmptySample,

    #[error("sample values must be finite, got {0}")]
    NonFiniteSample(f64),

    /// 1-based rank outside `1..=n`.
    #[error("rank {k} out of range 1..={n}")]
    RankOutOfRange { k: usize, n: usize },

    /// The minimum of this family does not stay in the family.
    #[error("the minimum of {0} noise has no closed-form distribution")]
    NoClosure(Family),

    /// Estimator/family pairing that is not defined.
    #[error("estimator {estimator} is not defined for {family} noise")]
    UnsupportedEstimator {
        estimator: EstimatorId,
        family: Family,
    },

    /// Hyperparameter-free estimators need a spread to work with.
    #[error("the unknown-hyperparameter estimator requires n >= 2")]
    NeedsTwoSamples,

    /// Pareto mean diverges for shape <= 1.
    #[error("{0} noise has infinite mean for this shape")]
    InfiniteMean(Family),

    /// Pareto variance diverges for shape <= 2.
    #[error("{0} noise has infinite variance for this shape")]
    InfiniteVariance(Family),

    /// Shift that would make the estimator unbiased is itself undefined.
    #[error("unbiased shift undefined: {0}")]
    BiasUndefined(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A serialized row did not parse back.
    #[error("malformed row: {0}")]
    ParseRow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
