use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::classical::routh_hurwitz;
use crate::model::{Stability, SteadyState, SystemParams};

/// Drift matrix of the linearized quadrature dynamics, ordered `(dX, dY, dQ, dP)`:
///
/// ```text
/// dX' = -(kappa/2) dX - Delta dY - 2 g_I dQ
/// dY' =  Delta dX - (kappa/2) dY + 2 g_R dQ
/// dQ' = -(gamma/2) dQ + omega_m dP
/// dP' =  2 g_R dX + 2 g_I dY - omega_m dQ - (gamma/2) dP
/// ```
///
/// where `g = g0 alpha_s = g_R + i g_I` and `Delta` is the effective detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix(Matrix4<f64>);

impl DriftMatrix {
    pub fn new(kappa: f64, gamma: f64, omega_m: f64, delta: f64, coupling: Complex64) -> Self {
        let (gr, gi) = (coupling.re, coupling.im);
        let k = kappa / 2.0;
        let g = gamma / 2.0;
        #[rustfmt::skip]
        let m = Matrix4::new(
            -k,       -delta,   -2.0 * gi, 0.0,
            delta,    -k,       2.0 * gr,  0.0,
            0.0,      0.0,      -g,        omega_m,
            2.0 * gr, 2.0 * gi, -omega_m,  -g,
        );
        Self(m)
    }

    /// Linearization around a classical fixed point, with `g = g0 alpha_s`.
    pub fn from_steady_state(params: &SystemParams, steady: &SteadyState) -> Self {
        Self::new(
            params.kappa,
            params.gamma,
            params.omega_m,
            steady.delta_eff,
            steady.alpha * params.g0,
        )
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn kappa(&self) -> f64 {
        -2.0 * self.0[(0, 0)]
    }

    pub fn gamma(&self) -> f64 {
        -2.0 * self.0[(2, 2)]
    }

    pub fn omega_m(&self) -> f64 {
        self.0[(2, 3)]
    }

    pub fn detuning(&self) -> f64 {
        self.0[(1, 0)]
    }

    /// Largest rate among `kappa`, `gamma`, `omega_m` and `|Delta|`.
    pub fn rate_scale(&self) -> f64 {
        self.kappa()
            .max(self.gamma())
            .max(self.omega_m())
            .max(self.detuning().abs())
    }

    pub fn stability(&self) -> Stability {
        routh_hurwitz::stability(&self.0)
    }

    pub fn apply(&self, u: &Vector4<f64>) -> Vector4<f64> {
        self.0 * u
    }
}

/// `drift_matrix` of the fluctuation dynamics at a classical fixed point.
pub fn drift_matrix(params: &SystemParams, steady: &SteadyState) -> DriftMatrix {
    DriftMatrix::from_steady_state(params, steady)
}

/// Diagonal noise matrix `diag[kappa/2, kappa/2, gamma(n_th + 1/2), gamma(n_th + 1/2)]`
/// for a vacuum optical bath and a thermal mechanical bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionMatrix(Matrix4<f64>);

impl DiffusionMatrix {
    pub fn new(kappa: f64, gamma: f64, n_th: f64) -> Self {
        let mech = gamma * (n_th + 0.5);
        Self(Matrix4::from_diagonal(&Vector4::new(
            kappa / 2.0,
            kappa / 2.0,
            mech,
            mech,
        )))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }
}

pub fn diffusion_matrix(params: &SystemParams) -> DiffusionMatrix {
    DiffusionMatrix::new(params.kappa, params.gamma, params.n_th)
}
