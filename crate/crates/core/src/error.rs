use thiserror::Error;

/// Errors raised by the simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field} must be {requirement} (got {value})")]
    InvalidParameter {
        field: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A Hurwitz quantity sits inside the marginal band, so no verdict is returned.
    #[error("stability verdict is marginal: {quantity} = {value:e}")]
    Marginal { quantity: &'static str, value: f64 },

    #[error("cubic solve did not reach the residual tolerance (residual {residual:e}, tolerance {tolerance:e})")]
    DegenerateSolve { residual: f64, tolerance: f64 },

    #[error("occupancy {occupancy} is not a root of the steady-state cubic (residual {residual:e})")]
    NotARoot { occupancy: f64, residual: f64 },

    #[error("step size {dt} exceeds the bound {bound}")]
    StepTooLarge { dt: f64, bound: f64 },

    #[error("trajectory diverged at t = {t} (|alpha| = {magnitude:e})")]
    Divergence { t: f64, magnitude: f64 },

    #[error("drift matrix is unstable; no steady covariance exists")]
    UnstableDrift,

    #[error("linear system is singular")]
    Singular,

    #[error("effective susceptibility has a pole at omega = {omega}")]
    Pole { omega: f64 },

    #[error("covariance matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("resonance windows overlap: tol_res = {tol_res} must be below omega_m = {omega_m}")]
    AmbiguousRegime { tol_res: f64, omega_m: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
