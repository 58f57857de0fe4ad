//! Linearized quantum fluctuations around a classical fixed point.

pub mod covariance;
pub mod drift;
pub mod regime;

pub use covariance::{
    integrate_covariance, lyapunov_residual, quadrature_variances, steady_covariance,
    symplectic_form, CovarianceMatrix, CovarianceTrajectory, Quadrature, QuadratureVariances,
};
pub use drift::{diffusion_matrix, drift_matrix, DiffusionMatrix, DriftMatrix};
pub use regime::{rwa_interaction, InteractionKind, RegimeReport};
