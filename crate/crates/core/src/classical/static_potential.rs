//! Static potential of a mirror held by a spring inside a Fabry-Perot cavity.
//!
//! The radiation force is a comb of Lorentzian resonances spaced by half a
//! wavelength, each with full width `lambda / (2 F)` for finesse `F`:
//!
//! ```text
//! F_RP(x) = sum_j F0 / (1 + (2 (x - x_j) / w)^2)
//! V_RP(x) = -sum_j F0 (w / 2) atan(2 (x - x_j) / w)
//! V_t(x)  = k x^2 / 2 + V_RP(x)
//! ```

use crate::classical::steady::check_sorted;
use crate::error::Result;
use crate::model::{non_negative, positive};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticPotentialModel {
    /// Spring constant of the bare mirror suspension.
    pub k_ho: f64,
    /// Peak radiation force on resonance.
    pub f0: f64,
    pub wavelength: f64,
    pub finesse: f64,
    /// Position of the first force resonance.
    pub first_resonance: f64,
    pub resonance_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equilibrium {
    pub x: f64,
    /// Curvature `V_t''` at the equilibrium.
    pub k_eff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StaticPotential {
    pub x: Vec<f64>,
    pub v_rp: Vec<f64>,
    pub v_ho: Vec<f64>,
    pub v_total: Vec<f64>,
    pub equilibria: Vec<Equilibrium>,
}

impl StaticPotentialModel {
    pub fn validate(self) -> Result<Self> {
        positive("k_HO", self.k_ho)?;
        non_negative("F0", self.f0)?;
        positive("lambda", self.wavelength)?;
        positive("finesse", self.finesse)?;
        Ok(self)
    }

    /// Full width at half maximum of each force resonance, `lambda / (2 F)`.
    pub fn width(&self) -> f64 {
        self.wavelength / (2.0 * self.finesse)
    }

    pub fn resonances(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.resonance_count)
            .map(move |j| self.first_resonance + j as f64 * self.wavelength / 2.0)
    }

    pub fn force(&self, x: f64) -> f64 {
        let w = self.width();
        self.resonances()
            .map(|xj| {
                let u = 2.0 * (x - xj) / w;
                self.f0 / (1.0 + u * u)
            })
            .sum()
    }

    fn force_slope(&self, x: f64) -> f64 {
        let w = self.width();
        self.resonances()
            .map(|xj| {
                let u = 2.0 * (x - xj) / w;
                let d = 1.0 + u * u;
                -self.f0 * 2.0 * u / (d * d) * (2.0 / w)
            })
            .sum()
    }

    pub fn radiation_potential(&self, x: f64) -> f64 {
        let w = self.width();
        self.resonances()
            .map(|xj| -self.f0 * (w / 2.0) * (2.0 * (x - xj) / w).atan())
            .sum()
    }

    pub fn spring_potential(&self, x: f64) -> f64 {
        0.5 * self.k_ho * x * x
    }

    /// `V_t'(x) = k x - F_RP(x)`.
    pub fn potential_slope(&self, x: f64) -> f64 {
        self.k_ho * x - self.force(x)
    }

    /// `V_t''(x) = k - F_RP'(x)`.
    pub fn curvature(&self, x: f64) -> f64 {
        self.k_ho - self.force_slope(x)
    }
}

/// Potentials on `grid` and the stable equilibria inside it.
///
/// Equilibria are bracketed by sign changes of `V_t'` between grid points
/// and refined by bisection to `1e-10 lambda`.
pub fn static_potential(model: &StaticPotentialModel, grid: &[f64]) -> Result<StaticPotential> {
    let model = model.validate()?;
    check_sorted(grid, "x")?;
    let v_rp: Vec<f64> = grid.iter().map(|&x| model.radiation_potential(x)).collect();
    let v_ho: Vec<f64> = grid.iter().map(|&x| model.spring_potential(x)).collect();
    let v_total = v_rp.iter().zip(&v_ho).map(|(a, b)| a + b).collect();

    let tol = 1e-10 * model.wavelength;
    let slope: Vec<f64> = grid.iter().map(|&x| model.potential_slope(x)).collect();
    let mut equilibria = Vec::new();
    for i in 0..grid.len().saturating_sub(1) {
        if !(slope[i] < 0.0 && slope[i + 1] >= 0.0) {
            continue;
        }
        let (mut lo, mut hi) = (grid[i], grid[i + 1]);
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if model.potential_slope(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let x = 0.5 * (lo + hi);
        let k_eff = model.curvature(x);
        if k_eff > 0.0 {
            equilibria.push(Equilibrium { x, k_eff });
        }
    }

    Ok(StaticPotential {
        x: grid.to_vec(),
        v_rp,
        v_ho,
        v_total,
        equilibria,
    })
}
