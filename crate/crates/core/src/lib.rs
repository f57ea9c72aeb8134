//! Exact Markovian master-equation dynamics for `N` two-level atoms coupled
//! to the vacuum electromagnetic field, including the full position-dependent
//! dipole-dipole shifts and cross-damping rates.
//!
//! The crate provides:
//!
//! * random atomic configurations in spherical containers with a prescribed
//!   dimensionless average interatomic distance `k0R` ([`geometry`]),
//! * the exact coherent (`f_ij`) and dissipative (`gamma_ij`) pair couplings
//!   together with their limiting-regime overrides ([`couplings`]),
//! * the density matrix in excitation-number block form and the vectorized
//!   Liouvillian generator acting on it ([`state`], [`liouvillian`]),
//! * matrix-exponential time propagation ([`propagator`]),
//! * the radiated energy rate `I(t)`, the l1-norm of coherence `C_l1(t)`,
//!   and pulse statistics ([`observables`]),
//! * closed-form reference curves for independent emission and pure
//!   superradiance ([`reference`]),
//! * deterministic Monte Carlo ensemble averaging and `k0R` sweeps
//!   ([`ensemble`]).
//!
//! All quantities are dimensionless: lengths are premultiplied by the
//! radiation wavenumber `k0` and the single-atom decay rate `gamma0` sets the
//! unit of time. Core numerics are generic over the floating-point scalar via
//! the [`Scalar`] trait; concrete `f64` aliases are exported at the crate
//! root.

pub mod basis;
pub mod couplings;
pub mod ensemble;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod liouvillian;
pub mod observables;
pub mod propagator;
pub mod reference;
pub mod scalar;
pub mod state;

pub use error::{Error, Result};
pub use scalar::{Scalar, C};

/// `f64` lane of the main domain types.
pub type AtomConfiguration64 = geometry::AtomConfiguration<f64>;
pub type PairGeometry64 = geometry::PairGeometry<f64>;
pub type CouplingSet64 = couplings::CouplingSet<f64>;
pub type Regime64 = couplings::Regime<f64>;
pub type BlockDensityMatrix64 = state::BlockDensityMatrix<f64>;
pub type LiouvillianMatrix64 = liouvillian::LiouvillianMatrix<f64>;
pub type TimeGrid64 = propagator::TimeGrid<f64>;
pub type TimeSeries64 = observables::TimeSeries<f64>;
pub type PulseStats64 = observables::PulseStats<f64>;
pub type EnsembleSpec64 = ensemble::EnsembleSpec<f64>;
pub type SweepResult64 = ensemble::SweepResult<f64>;

/// `f32` lane, mostly useful for quick exploratory runs.
pub type AtomConfiguration32 = geometry::AtomConfiguration<f32>;
pub type CouplingSet32 = couplings::CouplingSet<f32>;
pub type BlockDensityMatrix32 = state::BlockDensityMatrix<f32>;
pub type LiouvillianMatrix32 = liouvillian::LiouvillianMatrix<f32>;
