//! Time integration of the classical mean-field equations
//!
//! ```text
//! alpha' = -(kappa/2 - i Delta) alpha + A_l
//! beta'  = -(gamma/2 + i omega_m) beta + i g0 |alpha|^2
//! Delta  = Delta0 + g0 (beta + conj(beta))
//! ```

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::SystemParams;
use crate::ode::{checked_steps, rk4_step};

/// `|alpha|` above which a trajectory is declared divergent.
pub const DIVERGENCE_THRESHOLD: f64 = 1e12;
/// Step bound prefactor: `dt <= STEP_FACTOR / max(kappa, gamma, omega_m, |Delta0|)`.
pub const STEP_FACTOR: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanField {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl Add for MeanField {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            alpha: self.alpha + rhs.alpha,
            beta: self.beta + rhs.beta,
        }
    }
}

impl Mul<f64> for MeanField {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self {
            alpha: self.alpha * rhs,
            beta: self.beta * rhs,
        }
    }
}

impl MeanField {
    /// Euclidean distance in `(alpha, beta)` space.
    pub fn distance(&self, other: &Self) -> f64 {
        ((self.alpha - other.alpha).norm_sqr() + (self.beta - other.beta).norm_sqr()).sqrt()
    }
}

/// Right-hand side of the mean-field equations.
pub fn mean_field_rhs(params: &SystemParams, s: &MeanField) -> MeanField {
    let i = Complex64::i();
    let delta = params.delta0 + 2.0 * params.g0 * s.beta.re;
    MeanField {
        alpha: -Complex64::new(params.kappa / 2.0, -delta) * s.alpha + params.drive,
        beta: -Complex64::new(params.gamma / 2.0, params.omega_m) * s.beta
            + i * params.g0 * s.alpha.norm_sqr(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanFieldTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<MeanField>,
}

impl MeanFieldTrajectory {
    pub fn last(&self) -> &MeanField {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// Largest admissible step for `params`.
pub fn max_step(params: &SystemParams) -> f64 {
    STEP_FACTOR / params.max_rate()
}

/// Fixed-step RK4 integration from `(alpha0, beta0)` up to `t_end`.
///
/// Every `record_every`-th step is stored, plus the initial and final states.
pub fn integrate_mean_field(
    params: &SystemParams,
    alpha0: Complex64,
    beta0: Complex64,
    t_end: f64,
    dt: f64,
    record_every: usize,
) -> Result<MeanFieldTrajectory> {
    let params = params.validate()?;
    let (steps, h) = checked_steps(t_end, dt, max_step(&params))?;
    let record_every = record_every.max(1);
    let rhs = |s: &MeanField| mean_field_rhs(&params, s);

    let mut state = MeanField {
        alpha: alpha0,
        beta: beta0,
    };
    let mut times = vec![0.0];
    let mut states = vec![state];
    for step in 1..=steps {
        state = rk4_step(&rhs, &state, h);
        let t = step as f64 * h;
        let magnitude = state.alpha.norm();
        if !(magnitude <= DIVERGENCE_THRESHOLD) || !state.beta.norm().is_finite() {
            return Err(Error::Divergence { t, magnitude });
        }
        if step % record_every == 0 || step == steps {
            times.push(t);
            states.push(state);
        }
    }
    Ok(MeanFieldTrajectory { times, states })
}
