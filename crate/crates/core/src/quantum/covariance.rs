//! Covariance matrix of the quadrature fluctuations.
//!
//! `V_ij = <u_i u_j + u_j u_i> / 2` evolves as `V' = A V + V A^T + D`. The
//! steady state solves the Lyapunov equation `A V + V A^T + D = 0`, which is
//! vectorized into a 16x16 linear system built from the Kronecker sum of `A`.

use nalgebra::{Complex, Matrix4, SMatrix, SVector, SymmetricEigen};

use super::drift::{DiffusionMatrix, DriftMatrix};
use crate::error::{Error, Result};
use crate::model::Stability;
use crate::ode::{checked_steps, rk4_step};

/// Symmetry tolerance for a covariance matrix.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Smallest eigenvalue of `V + (i/2) Omega` still accepted as physical.
pub const PHYSICALITY_TOLERANCE: f64 = 1e-9;
/// Variance below which a quadrature counts as squeezed, relative to vacuum 1/2.
pub const SQUEEZING_MARGIN: f64 = 1e-9;

/// Symmetric 4x4 covariance matrix over `(X, Y, Q, P)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(Matrix4<f64>);

/// Symplectic form for the pairs `(X, Y)` and `(Q, P)`, with `[X, Y] = i`.
pub fn symplectic_form() -> Matrix4<f64> {
    #[rustfmt::skip]
    let omega = Matrix4::new(
        0.0,  1.0, 0.0, 0.0,
        -1.0, 0.0, 0.0, 0.0,
        0.0,  0.0, 0.0, 1.0,
        0.0,  0.0, -1.0, 0.0,
    );
    omega
}

fn asymmetry(m: &Matrix4<f64>) -> f64 {
    (m - m.transpose()).amax()
}

impl CovarianceMatrix {
    /// Wraps `m`, rejecting matrices that are not symmetric to 1e-12.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        let asym = asymmetry(&m);
        if asym > SYMMETRY_TOLERANCE || m.iter().any(|x| !x.is_finite()) {
            return Err(Error::NotSymmetric { asymmetry: asym });
        }
        Ok(Self(symmetrize(&m)))
    }

    pub fn vacuum() -> Self {
        Self(Matrix4::identity() * 0.5)
    }

    /// Vacuum optics and a thermal mechanical mode with `n_th` phonons.
    pub fn thermal(n_th: f64) -> Self {
        Self::diagonal([0.5, 0.5, n_th + 0.5, n_th + 0.5])
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        Self(Matrix4::from_diagonal(&d.into()))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Smallest eigenvalue of the Hermitian matrix `V + (i/2) Omega`.
    pub fn min_uncertainty_eigenvalue(&self) -> f64 {
        let omega = symplectic_form();
        let h = Matrix4::from_fn(|r, c| Complex::new(self.0[(r, c)], 0.5 * omega[(r, c)]));
        SymmetricEigen::new(h).eigenvalues.min()
    }

    pub fn is_physical(&self) -> bool {
        self.min_uncertainty_eigenvalue() >= -PHYSICALITY_TOLERANCE
    }
}

fn symmetrize(m: &Matrix4<f64>) -> Matrix4<f64> {
    (m + m.transpose()) * 0.5
}

/// `A V + V A^T + D`.
pub fn lyapunov_residual(a: &DriftMatrix, d: &DiffusionMatrix, v: &CovarianceMatrix) -> Matrix4<f64> {
    let a = a.matrix();
    a * v.0 + v.0 * a.transpose() + d.matrix()
}

/// Kronecker sum `I (x) A + A (x) I`, acting on column-major `vec(V)`.
fn kronecker_sum(a: &Matrix4<f64>) -> SMatrix<f64, 16, 16> {
    let id = Matrix4::<f64>::identity();
    let mut k = SMatrix::<f64, 16, 16>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            for p in 0..4 {
                for q in 0..4 {
                    k[(4 * i + p, 4 * j + q)] = id[(i, j)] * a[(p, q)] + a[(i, j)] * id[(p, q)];
                }
            }
        }
    }
    k
}

/// Steady-state covariance: the solution of `A V + V A^T + D = 0`.
///
/// Requires `A` to pass the Routh-Hurwitz test.
pub fn steady_covariance(a: &DriftMatrix, d: &DiffusionMatrix) -> Result<CovarianceMatrix> {
    match a.stability() {
        Stability::Stable => {}
        Stability::Unstable => return Err(Error::UnstableDrift),
        Stability::Marginal => return Err(Error::Singular),
    }
    let system = kronecker_sum(a.matrix());
    let rhs: SVector<f64, 16> = -SVector::<f64, 16>::from_column_slice(d.matrix().as_slice());
    let lu = system.lu();
    let mut x = lu.solve(&rhs).ok_or(Error::Singular)?;
    // One round of iterative refinement.
    let r = rhs - system * x;
    if let Some(dx) = lu.solve(&r) {
        x += dx;
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular);
    }
    let v = Matrix4::from_column_slice(x.as_slice());
    Ok(CovarianceMatrix(symmetrize(&v)))
}

/// Covariance matrices sampled along a fixed-step integration.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<CovarianceMatrix>,
}

impl CovarianceTrajectory {
    pub fn last(&self) -> &CovarianceMatrix {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// Integrates `V' = A V + V A^T + D` with the classical RK4 scheme.
///
/// `dt` may not exceed `0.05 / max(kappa, gamma, omega_m, |Delta|)`. The step is
/// shortened slightly so an integer number of steps lands on `t_end`. Every
/// `record_every`-th state is kept, plus the first and last. `V` is
/// symmetrized after each step.
pub fn integrate_covariance(
    a: &DriftMatrix,
    d: &DiffusionMatrix,
    v0: &CovarianceMatrix,
    t_end: f64,
    dt: f64,
    record_every: usize,
) -> Result<CovarianceTrajectory> {
    let asym = asymmetry(&v0.0);
    if asym > SYMMETRY_TOLERANCE {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    let (steps, h) = checked_steps(t_end, dt, 0.05 / a.rate_scale())?;
    let record_every = record_every.max(1);

    let am = *a.matrix();
    let at = am.transpose();
    let dm = *d.matrix();
    let rhs = |v: &Matrix4<f64>| am * v + v * at + dm;

    let mut times = vec![0.0];
    let mut states = vec![*v0];
    let mut v = v0.0;
    for step in 1..=steps {
        v = symmetrize(&rk4_step(&rhs, &v, h));
        if step % record_every == 0 || step == steps {
            times.push(step as f64 * h);
            states.push(CovarianceMatrix(v));
        }
    }
    Ok(CovarianceTrajectory { times, states })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    X,
    Y,
    Q,
    P,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureVariances {
    pub x: f64,
    pub y: f64,
    pub q: f64,
    pub p: f64,
    /// Quadratures with variance strictly below the vacuum level 1/2.
    pub squeezed: Vec<Quadrature>,
}

pub fn quadrature_variances(v: &CovarianceMatrix) -> QuadratureVariances {
    let diag = v.0.diagonal();
    let squeezed = [Quadrature::X, Quadrature::Y, Quadrature::Q, Quadrature::P]
        .into_iter()
        .zip(diag.iter())
        .filter(|(_, var)| **var < 0.5 - SQUEEZING_MARGIN)
        .map(|(q, _)| q)
        .collect();
    QuadratureVariances {
        x: diag[0],
        y: diag[1],
        q: diag[2],
        p: diag[3],
        squeezed,
    }
}
