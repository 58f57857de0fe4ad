use crate::error::{Error, Result};

/// Below this ratio `kappa / omega_m` the cavity counts as sideband resolved.
pub const RESOLVED_SIDEBAND_RATIO: f64 = 0.1;

/// Interaction picked out by the rotating-wave approximation at a given detuning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InteractionKind {
    /// `Delta = -omega_m`: exchange of optical and mechanical quanta (cooling).
    BeamSplitter,
    /// `Delta = +omega_m`: pair creation (amplification, heating).
    TwoModeSqueezer,
    OffResonant,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub interaction: InteractionKind,
    pub resolved_sideband: bool,
    pub g_s: f64,
}

pub fn is_resolved_sideband(kappa: f64, omega_m: f64) -> bool {
    kappa < omega_m * RESOLVED_SIDEBAND_RATIO
}

/// Classifies the linearized interaction at effective detuning `delta`.
///
/// `tol_res` is the half-width of each resonance window; `None` uses `kappa / 2`.
pub fn rwa_interaction(
    delta: f64,
    omega_m: f64,
    kappa: f64,
    g_s: f64,
    tol_res: Option<f64>,
) -> Result<RegimeReport> {
    let tol = tol_res.unwrap_or(kappa / 2.0);
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            field: "tol_res",
            requirement: "> 0",
            value: tol,
        });
    }
    let red = (delta + omega_m).abs() <= tol;
    let blue = (delta - omega_m).abs() <= tol;
    let interaction = match (red, blue) {
        (true, true) => {
            return Err(Error::AmbiguousRegime {
                tol_res: tol,
                omega_m,
            })
        }
        (true, false) => InteractionKind::BeamSplitter,
        (false, true) => InteractionKind::TwoModeSqueezer,
        (false, false) => InteractionKind::OffResonant,
    };
    Ok(RegimeReport {
        interaction,
        resolved_sideband: is_resolved_sideband(kappa, omega_m),
        g_s,
    })
}
