//! Linear response of the mechanics to an external force: susceptibilities,
//! the optomechanical self-energy, damping and the optical spring.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{SteadyState, SystemParams};
use crate::quantum::regime::is_resolved_sideband;

/// Threshold on `|1/chi_m - Sigma|` below which the response is a pole.
pub const POLE_THRESHOLD: f64 = 1e-14;

/// `chi_o(omega) = 1 / (kappa/2 - i (Delta + omega))`.
pub fn optical_susceptibility(omega: f64, delta: f64, kappa: f64) -> Complex64 {
    Complex64::new(kappa / 2.0, -(delta + omega)).inv()
}

/// `chi_m(omega) = 1 / (m (omega_m^2 - omega^2) - i m gamma omega)`.
pub fn mechanical_susceptibility(omega: f64, params: &SystemParams) -> Complex64 {
    inverse_mechanical(omega, params).inv()
}

fn inverse_mechanical(omega: f64, params: &SystemParams) -> Complex64 {
    let m = params.mass;
    Complex64::new(
        m * (params.omega_m * params.omega_m - omega * omega),
        -m * params.gamma * omega,
    )
}

/// `Sigma(omega) = 2 i m omega_m g_s^2 (chi_o(omega) - conj(chi_o(-omega)))`.
pub fn self_energy(omega: f64, delta: f64, kappa: f64, g_s: f64, mass: f64, omega_m: f64) -> Complex64 {
    let diff = optical_susceptibility(omega, delta, kappa)
        - optical_susceptibility(-omega, delta, kappa).conj();
    Complex64::i() * (2.0 * mass * omega_m * g_s * g_s) * diff
}

/// Mechanical susceptibility dressed by the optomechanical self-energy.
pub fn effective_susceptibility(
    omega: f64,
    params: &SystemParams,
    delta: f64,
    g_s: f64,
) -> Result<Complex64> {
    let sigma = self_energy(omega, delta, params.kappa, g_s, params.mass, params.omega_m);
    let dressed = inverse_mechanical(omega, params) - sigma;
    let stiffness = params.mass * params.omega_m * params.omega_m;
    if !(dressed.norm() >= POLE_THRESHOLD * stiffness) {
        return Err(Error::Pole { omega });
    }
    Ok(dressed.inv())
}

fn lorentzian(kappa: f64, x: f64) -> f64 {
    1.0 / (kappa * kappa / 4.0 + x * x)
}

/// Light-induced mechanical damping at effective detuning `delta`. Positive
/// (cooling) for red detuning, negative (heating) for blue.
pub fn optomechanical_damping(delta: f64, kappa: f64, g_s: f64, omega_m: f64) -> f64 {
    g_s * g_s * kappa * (lorentzian(kappa, omega_m + delta) - lorentzian(kappa, omega_m - delta))
}

/// Light-induced shift of the mechanical frequency (optical spring).
pub fn optical_spring_shift(delta: f64, kappa: f64, g_s: f64, omega_m: f64) -> f64 {
    let plus = omega_m + delta;
    let minus = omega_m - delta;
    g_s * g_s * (plus * lorentzian(kappa, plus) - minus * lorentzian(kappa, minus))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeFlags {
    /// `gamma + gamma_om`.
    pub total_damping: f64,
    /// Net damping negative: `gamma_om < -gamma`.
    pub self_oscillation: bool,
    /// Spring softened past the bare frequency: `delta_omega_m < -omega_m`.
    pub parametric_instability: bool,
    pub resolved_sideband: bool,
}

pub fn classify_regime(gamma_om: f64, delta_omega_m: f64, params: &SystemParams) -> RegimeFlags {
    RegimeFlags {
        total_damping: params.gamma + gamma_om,
        self_oscillation: gamma_om < -params.gamma,
        parametric_instability: delta_omega_m < -params.omega_m,
        resolved_sideband: is_resolved_sideband(params.kappa, params.omega_m),
    }
}

/// All linear-response quantities of a fixed point at probe frequency `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseQuantities {
    pub chi_o: Complex64,
    pub chi_m: Complex64,
    pub chi_eff: Complex64,
    pub sigma: Complex64,
    pub gamma_om: f64,
    pub delta_omega_m: f64,
    pub g_s: f64,
}

pub fn response_quantities(
    omega: f64,
    params: &SystemParams,
    steady: &SteadyState,
) -> Result<ResponseQuantities> {
    let delta = steady.delta_eff;
    let g_s = steady.enhanced_coupling(params.g0);
    Ok(ResponseQuantities {
        chi_o: optical_susceptibility(omega, delta, params.kappa),
        chi_m: mechanical_susceptibility(omega, params),
        chi_eff: effective_susceptibility(omega, params, delta, g_s)?,
        sigma: self_energy(omega, delta, params.kappa, g_s, params.mass, params.omega_m),
        gamma_om: optomechanical_damping(delta, params.kappa, g_s, params.omega_m),
        delta_omega_m: optical_spring_shift(delta, params.kappa, g_s, params.omega_m),
        g_s,
    })
}
