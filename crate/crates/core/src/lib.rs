//! Gaussian-optics toolbox for one-way EPR-steering experiments.
//!
//! Everything is phrased in terms of quadrature covariance matrices in
//! vacuum units (vacuum variance = 1 per quadrature), with the fixed
//! ordering (x1, p1, x2, p2, ...). The crate covers:
//!
//! - [`state`]: multimode Gaussian states and the symplectic operations
//!   that transform them (beam splitters, losses, phase rotations,
//!   homodyne conditioning),
//! - [`steering`]: Reid conditional-variance products, the Gaussian
//!   steering test, the PPT entanglement test and the resulting state
//!   classification,
//! - [`model`]: the squeezer + beam-splitter + vacuum-admixture pipeline,
//!   vacuum sweeps, steering-loss thresholds and parameter fitting,
//! - [`homodyne`]: seeded synthetic joint homodyne records,
//! - [`stats`]: plug-in conditional-variance estimators and the bootstrap
//!   significance analysis,
//! - [`random`]: seeded generators of random physical states for
//!   property tests.
//!
//! The crate is `no_std`-compatible (`default-features = false`); it only
//! needs `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod homodyne;
pub mod model;
pub mod random;
pub mod state;
pub mod stats;
pub mod steering;

pub use error::{Error, Result};
pub use homodyne::{Dataset, MeasurementSetting, Provenance};
pub use model::{
    FitBounds, FitOutcome, FitTargets, SetupParams, SplitThreshold, SweepRow, ThresholdReport,
};
pub use state::{GaussianState, Quadrature, SqueezerModel, SymplecticForm};
pub use stats::{BootstrapResult, Histogram};
pub use steering::{CriterionResult, Direction, StateClass, SteeringDirection};
