//! Simulation library for a single-mode optomechanical cavity driven by a laser.
//!
//! * [`model`]: parameters, unit conventions and radiation-pressure helpers.
//! * [`classical`]: mean-field steady states, bistability and hysteresis,
//!   Routh-Hurwitz stability, linear response and the static potential.
//! * [`quantum`]: drift and diffusion matrices of the linearized quadrature
//!   fluctuations, covariance dynamics and the rotating-wave regime.
//!
//! Rates are dimensionless, in units of the mechanical frequency.

pub mod classical;
pub mod error;
pub mod model;
pub mod ode;
pub mod quantum;

pub use error::{Error, Result};
pub use model::{CavityGeometry, GeometricCoupling, Stability, SteadyState, SystemParams};
pub use num_complex::Complex64;
