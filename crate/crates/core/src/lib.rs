//! Two-qubit Heisenberg XXZ spins (with DM and KSEA couplings) prepared in a
//! Gibbs state and sent through a hybrid thermal–magnetic–classical channel
//! with static noise.
//!
//! The pipeline is
//!
//! 1. [`spin::thermal_state`] builds `ρ(0, T) = exp(-H/T)/Z` as an [`XState`],
//! 2. [`channel::static_average`] applies the noise-averaged dephasing at time `t`,
//! 3. [`measures`] evaluates negativity, ℓ1 coherence, entropic uncertainty,
//!    entropy and two fidelities,
//! 4. [`sweep`] runs time series over a varied parameter and writes CSV/JSON.

pub mod channel;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod spin;
pub mod sweep;

pub use channel::ChannelParams;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix};
pub use measures::{Measure, MeasureRecord, MeasureSet};
pub use spin::{SpinParams, XState};
pub use sweep::{Dataset, SweepSpec};

pub use num_complex::Complex64;
