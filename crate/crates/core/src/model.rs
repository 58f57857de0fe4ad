//! Physical parameters, unit conventions and small radiation-pressure helpers.
//!
//! Everything in [`crate::classical`] and [`crate::quantum`] works in
//! dimensionless units: frequencies and rates are measured in units of the
//! mechanical frequency `omega_m` (normally set to 1) and `hbar = 1` is absorbed
//! into the quadrature definitions. SI units appear only in the geometry and
//! thermal-occupancy helpers of this module.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Planck constant, J s.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Dimensionless parameter set of a single-mode driven optomechanical cavity.
///
/// Rates are in units of `omega_m`. `delta0` is the bare laser detuning
/// `omega_laser - omega_cavity`; negative values are red detuned.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct SystemParams {
    #[cfg_attr(feature = "serde", serde(default = "one"))]
    pub omega_m: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub g0: f64,
    #[cfg_attr(feature = "serde", serde(rename = "Delta0"))]
    pub delta0: f64,
    /// Laser drive amplitude `A_l`, taken real with the laser phase fixed.
    #[cfg_attr(feature = "serde", serde(rename = "A_l"))]
    pub drive: f64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub n_th: f64,
    /// Effective mirror mass; only enters the dimensionful susceptibilities.
    #[cfg_attr(feature = "serde", serde(rename = "m", default = "one"))]
    pub mass: f64,
}

#[cfg(feature = "serde")]
fn one() -> f64 {
    1.0
}

impl SystemParams {
    /// Field names as they appear in configuration files.
    pub const FIELD_NAMES: [&'static str; 8] =
        ["omega_m", "kappa", "gamma", "g0", "Delta0", "A_l", "n_th", "m"];

    /// Parameters in units of `omega_m` with unit mass and a cold bath.
    pub fn dimensionless(kappa: f64, gamma: f64, g0: f64, delta0: f64, drive: f64) -> Self {
        Self {
            omega_m: 1.0,
            kappa,
            gamma,
            g0,
            delta0,
            drive,
            n_th: 0.0,
            mass: 1.0,
        }
    }

    pub fn with_g0(self, g0: f64) -> Self {
        Self { g0, ..self }
    }

    pub fn with_delta0(self, delta0: f64) -> Self {
        Self { delta0, ..self }
    }

    pub fn with_drive(self, drive: f64) -> Self {
        Self { drive, ..self }
    }

    pub fn with_n_th(self, n_th: f64) -> Self {
        Self { n_th, ..self }
    }

    /// Checks the parameter invariants and returns the parameters unchanged.
    pub fn validate(self) -> Result<Self> {
        positive("omega_m", self.omega_m)?;
        positive("kappa", self.kappa)?;
        positive("gamma", self.gamma)?;
        positive("m", self.mass)?;
        non_negative("A_l", self.drive)?;
        non_negative("n_th", self.n_th)?;
        non_negative("g0", self.g0)?;
        finite("Delta0", self.delta0)?;
        Ok(self)
    }

    /// Largest rate in the problem, used by the fixed-step integrators.
    pub fn max_rate(&self) -> f64 {
        self.kappa
            .max(self.gamma)
            .max(self.omega_m)
            .max(self.delta0.abs())
    }
}

pub(crate) fn positive(field: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            requirement: "> 0",
            value,
        })
    }
}

pub(crate) fn non_negative(field: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            requirement: ">= 0",
            value,
        })
    }
}

pub(crate) fn finite(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            requirement: "finite",
            value,
        })
    }
}

/// Outcome of a linear stability test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
    /// A Hurwitz quantity is within the marginal band; no verdict.
    Marginal,
}

impl Stability {
    pub fn is_stable(self) -> bool {
        self == Stability::Stable
    }
}

/// One classical fixed point of the mean-field equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub alpha: Complex64,
    pub beta: Complex64,
    /// Mean intracavity photon number `|alpha|^2`.
    pub occupancy: f64,
    /// `Delta0 + 2 g0 Re(beta)`.
    pub delta_eff: f64,
    pub stability: Stability,
}

impl SteadyState {
    pub fn stable(&self) -> bool {
        self.stability.is_stable()
    }

    /// Enhanced coupling `g0 |alpha|`.
    pub fn enhanced_coupling(&self, g0: f64) -> f64 {
        g0 * self.alpha.norm()
    }
}

/// Mean thermal phonon number of a bath at temperature `temperature` (K)
/// for an oscillator of angular frequency `omega_m` (rad/s).
pub fn mean_thermal_occupancy(omega_m: f64, temperature: f64) -> Result<f64> {
    positive("omega_m", omega_m)?;
    non_negative("T", temperature)?;
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = HBAR * omega_m / (BOLTZMANN * temperature);
    Ok(1.0 / x.exp_m1())
}

/// Fabry-Perot cavity with one moveable mirror, in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityGeometry {
    /// Cavity length, m.
    pub length: f64,
    /// Drive wavelength, m.
    pub wavelength: f64,
    /// Effective mirror mass, kg.
    pub effective_mass: f64,
    /// Mechanical angular frequency, rad/s.
    pub omega_m: f64,
}

/// Coupling constants derived from a [`CavityGeometry`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricCoupling {
    /// Cavity resonance `2 pi c / lambda`, rad/s.
    pub omega_cavity: f64,
    /// Frequency pull `G = omega_cavity / L`, rad/(s m).
    pub frequency_pull: f64,
    /// Zero-point fluctuation `sqrt(hbar / (2 m omega_m))`, m.
    pub x_zp: f64,
    /// Single-photon coupling `G x_zp`, rad/s.
    pub g0: f64,
    /// Free spectral range `pi c / L`, rad/s.
    pub free_spectral_range: f64,
}

impl CavityGeometry {
    pub fn validate(self) -> Result<Self> {
        positive("L", self.length)?;
        positive("lambda_l", self.wavelength)?;
        positive("m_eff", self.effective_mass)?;
        positive("omega_m", self.omega_m)?;
        Ok(self)
    }

    pub fn coupling(&self) -> Result<GeometricCoupling> {
        self.validate()?;
        let omega_cavity = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / self.wavelength;
        let frequency_pull = omega_cavity / self.length;
        let x_zp = (HBAR / (2.0 * self.effective_mass * self.omega_m)).sqrt();
        Ok(GeometricCoupling {
            omega_cavity,
            frequency_pull,
            x_zp,
            g0: frequency_pull * x_zp,
            free_spectral_range: std::f64::consts::PI * SPEED_OF_LIGHT / self.length,
        })
    }
}

/// Momentum transferred to a perfect mirror by reflecting one photon of energy `energy` (J).
pub fn photon_momentum_kick(energy: f64) -> Result<f64> {
    non_negative("E_photon", energy)?;
    Ok(2.0 * energy / SPEED_OF_LIGHT)
}

/// Force exerted on a perfect mirror by a reflected beam of power `power` (W).
pub fn beam_radiation_force(power: f64) -> Result<f64> {
    non_negative("P", power)?;
    Ok(2.0 * power / SPEED_OF_LIGHT)
}
