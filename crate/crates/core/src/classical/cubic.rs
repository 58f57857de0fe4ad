//! Cubic equation for the mean intracavity occupancy.
//!
//! Eliminating the mechanical amplitude from the steady-state equations gives
//!
//! ```text
//! N ((Delta0 + C N)^2 + kappa^2 / 4) = A_l^2
//! 4 C^2 N^3 + 8 C Delta0 N^2 + (4 Delta0^2 + kappa^2) N - 4 A_l^2 = 0
//! ```
//!
//! with the collapse constant `C = 2 g0^2 omega_m / (gamma^2 / 4 + omega_m^2)`.

use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::model::SystemParams;

/// Relative imaginary-part threshold below which an eigenvalue counts as real.
const REAL_TOLERANCE: f64 = 1e-9;
/// Residual tolerance, relative to `max(1, |c0|)`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicProblem {
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
    /// Collapse constant `C`; the effective detuning is `Delta0 + C N`.
    pub collapse: f64,
    delta0: f64,
    kappa: f64,
    drive: f64,
}

/// Builds the occupancy cubic for a parameter set.
pub fn intracavity_cubic(params: &SystemParams) -> CubicProblem {
    let SystemParams {
        omega_m,
        kappa,
        gamma,
        g0,
        delta0,
        drive,
        ..
    } = *params;
    let collapse = 2.0 * g0 * g0 * omega_m / (gamma * gamma / 4.0 + omega_m * omega_m);
    CubicProblem {
        c3: 4.0 * collapse * collapse,
        c2: 8.0 * collapse * delta0,
        c1: 4.0 * delta0 * delta0 + kappa * kappa,
        c0: -4.0 * drive * drive,
        collapse,
        delta0,
        kappa,
        drive,
    }
}

impl CubicProblem {
    pub fn eval(&self, n: f64) -> f64 {
        ((self.c3 * n + self.c2) * n + self.c1) * n + self.c0
    }

    fn derivative(&self, n: f64) -> f64 {
        (3.0 * self.c3 * n + 2.0 * self.c2) * n + self.c1
    }

    pub fn residual_tolerance(&self) -> f64 {
        RESIDUAL_TOLERANCE * self.c0.abs().max(1.0)
    }

    pub fn is_root(&self, n: f64) -> bool {
        self.eval(n).abs() <= self.residual_tolerance()
    }

    /// Effective detuning at occupancy `n`.
    pub fn effective_detuning(&self, n: f64) -> f64 {
        self.delta0 + self.collapse * n
    }

    /// Same problem at a different bare detuning.
    pub fn with_delta0(&self, delta0: f64) -> Self {
        let c = self.collapse;
        Self {
            c2: 8.0 * c * delta0,
            c1: 4.0 * delta0 * delta0 + self.kappa * self.kappa,
            delta0,
            ..*self
        }
    }

    /// Coefficients of the monic cubic in `y = C N`:
    /// `y^3 + 2 Delta0 y^2 + (Delta0^2 + kappa^2/4) y - C A_l^2`.
    fn scaled_monic(&self) -> [f64; 3] {
        let k = self.kappa / 2.0;
        [
            2.0 * self.delta0,
            self.delta0 * self.delta0 + k * k,
            -self.collapse * self.drive * self.drive,
        ]
    }

    /// Sign-faithful discriminant of the cubic, evaluated on the rescaled
    /// monic form. Positive means three distinct real roots, negative one.
    /// Returns `-1` when the problem is linear (`C = 0`).
    pub fn discriminant(&self) -> f64 {
        if self.collapse == 0.0 {
            return -1.0;
        }
        let [b, c, d] = self.scaled_monic();
        18.0 * b * c * d - 4.0 * b.powi(3) * d + b * b * c * c - 4.0 * c.powi(3) - 27.0 * d * d
    }
}

/// Real, non-negative roots of the occupancy cubic in ascending order.
///
/// Roots come from the eigenvalues of the companion matrix of the rescaled
/// cubic and are then polished by Newton iteration on the original one.
pub fn solve_intracavity_occupancy(problem: &CubicProblem) -> Result<Vec<f64>> {
    if problem.collapse == 0.0 || problem.drive == 0.0 {
        // Linear cavity, or an empty one: N = A_l^2 / (Delta0^2 + kappa^2/4).
        let n = -problem.c0 / problem.c1;
        return Ok(vec![n]);
    }

    let [b, c, d] = problem.scaled_monic();
    let companion = Matrix3::new(-b, -c, -d, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0);
    let eigenvalues = companion.complex_eigenvalues();

    let tol = problem.residual_tolerance();
    let mut roots = Vec::with_capacity(3);
    for z in eigenvalues.iter() {
        let re = z.re / problem.collapse;
        let im = z.im / problem.collapse;
        if im.abs() > REAL_TOLERANCE * (1.0 + re.abs()) {
            continue;
        }
        let n = polish(problem, re);
        let residual = problem.eval(n).abs();
        if residual > tol {
            return Err(Error::DegenerateSolve {
                residual,
                tolerance: tol,
            });
        }
        if n < 0.0 {
            continue;
        }
        roots.push(n);
    }
    roots.sort_by(f64::total_cmp);
    if roots.is_empty() {
        // A positive drive always admits one positive root.
        return Err(Error::DegenerateSolve {
            residual: f64::NAN,
            tolerance: tol,
        });
    }
    Ok(roots)
}

fn polish(problem: &CubicProblem, mut n: f64) -> f64 {
    let mut best = (problem.eval(n).abs(), n);
    for _ in 0..60 {
        let f = problem.eval(n);
        let df = problem.derivative(n);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let step = f / df;
        n -= step;
        let r = problem.eval(n).abs();
        if r < best.0 {
            best = (r, n);
        }
        if step.abs() <= 1e-15 * n.abs() {
            break;
        }
    }
    best.1
}
