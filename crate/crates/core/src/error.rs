//! Error type shared by all modules.

use crate::model::SetupParams;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    /// Squeezer variances violate V_sq * V_anti >= 1.
    #[error("unphysical squeezer model: V_sq * V_anti = {product} < 1")]
    UnphysicalModel { product: f64 },

    /// Homodyne conditioning on a quadrature with (near-)zero variance.
    #[error("singular conditioning: projected variance {variance:e} below tolerance")]
    SingularConditioning { variance: f64 },

    /// A matrix block required by a criterion is numerically singular.
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(&'static str),

    /// A steering test fired on a state the entanglement test calls
    /// separable; only reachable through a numerical fault.
    #[error("hierarchy violation: steerable state classified as separable")]
    HierarchyViolation,

    /// Sample statistics cannot be formed (too few or degenerate data).
    #[error("degenerate data: {0}")]
    DegenerateData(&'static str),

    /// A dataset is missing a required measurement setting or holds
    /// non-finite values.
    #[error("invalid dataset: {0}")]
    InvalidDataset(&'static str),

    /// The parameter fit did not reach the residual threshold. Carries the
    /// best parameters found so the caller can inspect how far off they are.
    #[error("fit failed: residual {residual:e} above threshold {threshold:e}")]
    FitFailed {
        residual: f64,
        threshold: f64,
        best: SetupParams,
    },
}
