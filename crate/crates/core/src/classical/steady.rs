//! Classical fixed points and their organisation over detuning and drive grids.

use num_complex::Complex64;
use rayon::prelude::*;

use super::cubic::{intracavity_cubic, solve_intracavity_occupancy, CubicProblem};
use crate::error::{Error, Result};
use crate::model::{Stability, SteadyState, SystemParams};
use crate::quantum::DriftMatrix;

/// Bisection tolerance on bistable-window edges.
pub const EDGE_TOLERANCE: f64 = 1e-9;

/// Fixed point belonging to the occupancy root `occupancy`.
///
/// The mechanical amplitude is `i g0 N / (gamma/2 + i omega_m)`, the effective
/// detuning `Delta0 + 2 g0 Re(beta)` and the optical amplitude
/// `A_l / (kappa/2 - i Delta)`. Stability comes from the Routh-Hurwitz test of
/// the linearized drift matrix.
pub fn steady_state(params: &SystemParams, occupancy: f64) -> Result<SteadyState> {
    let problem = intracavity_cubic(params);
    let residual = problem.eval(occupancy).abs();
    if residual > problem.residual_tolerance() || !occupancy.is_finite() {
        return Err(Error::NotARoot {
            occupancy,
            residual,
        });
    }
    Ok(fixed_point(params, occupancy))
}

fn fixed_point(params: &SystemParams, occupancy: f64) -> SteadyState {
    let i = Complex64::i();
    let beta = i * params.g0 * occupancy / Complex64::new(params.gamma / 2.0, params.omega_m);
    let delta_eff = params.delta0 + 2.0 * params.g0 * beta.re;
    let alpha = params.drive / Complex64::new(params.kappa / 2.0, -delta_eff);
    let mut steady = SteadyState {
        alpha,
        beta,
        occupancy,
        delta_eff,
        stability: Stability::Marginal,
    };
    steady.stability = DriftMatrix::from_steady_state(params, &steady).stability();
    steady
}

/// Every fixed point of `params`, in ascending occupancy.
pub fn steady_states(params: &SystemParams) -> Result<Vec<SteadyState>> {
    let roots = solve_intracavity_occupancy(&intracavity_cubic(params))?;
    Ok(roots.into_iter().map(|n| fixed_point(params, n)).collect())
}

/// Mean output field `-sqrt(kappa) alpha_s`; the input noise has zero mean.
pub fn mean_output_field(alpha: Complex64, kappa: f64) -> Complex64 {
    -kappa.sqrt() * alpha
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The only root at this detuning.
    Single,
    Lower,
    Middle,
    Upper,
}

fn branch_labels(count: usize) -> Vec<Branch> {
    match count {
        1 => vec![Branch::Single],
        2 => vec![Branch::Lower, Branch::Upper],
        _ => vec![Branch::Lower, Branch::Middle, Branch::Upper],
    }
}

/// Roots and their stability at one grid detuning.
#[derive(Debug, Clone, PartialEq)]
pub struct BistabilityPoint {
    pub delta0: f64,
    pub roots: Vec<f64>,
    pub branches: Vec<Branch>,
    pub stability: Vec<Stability>,
    pub discriminant: f64,
}

impl BistabilityPoint {
    pub fn is_multistable(&self) -> bool {
        self.roots.len() == 3
    }

    pub fn root_on(&self, branch: Branch) -> Option<(f64, Stability)> {
        let i = self.branches.iter().position(|b| *b == branch)?;
        Some((self.roots[i], self.stability[i]))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BistabilitySweep {
    pub points: Vec<BistabilityPoint>,
    /// Detunings where the cubic discriminant changes sign between grid points,
    /// refined by bisection.
    pub edges: Vec<f64>,
}

impl BistabilitySweep {
    pub fn detunings(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.delta0).collect()
    }

    /// Grid indices that hold three real roots.
    pub fn window_indices(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.points[i].is_multistable())
            .collect()
    }
}

pub(crate) fn check_sorted(grid: &[f64], name: &str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid(format!("{name} grid is empty")));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid(format!("{name} grid has non-finite values")));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid(format!("{name} grid is not strictly ascending")));
    }
    Ok(())
}

/// Bisects the discriminant sign change in `[lo, hi]`.
fn refine_edge(problem: &CubicProblem, mut lo: f64, mut hi: f64) -> f64 {
    let positive_lo = problem.with_delta0(lo).discriminant() > 0.0;
    while hi - lo > EDGE_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if (problem.with_delta0(mid).discriminant() > 0.0) == positive_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves the occupancy cubic on every point of an ascending detuning grid.
pub fn sweep_bistability(params: &SystemParams, detunings: &[f64]) -> Result<BistabilitySweep> {
    check_sorted(detunings, "Delta0")?;
    let points = detunings
        .par_iter()
        .map(|&delta0| {
            let p = params.with_delta0(delta0);
            let problem = intracavity_cubic(&p);
            let states = steady_states(&p)?;
            Ok(BistabilityPoint {
                delta0,
                roots: states.iter().map(|s| s.occupancy).collect(),
                branches: branch_labels(states.len()),
                stability: states.iter().map(|s| s.stability).collect(),
                discriminant: problem.discriminant(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let base = intracavity_cubic(params);
    let edges = points
        .windows(2)
        .filter(|w| (w[0].discriminant > 0.0) != (w[1].discriminant > 0.0))
        .map(|w| refine_edge(&base, w[0].delta0, w[1].delta0))
        .collect();
    Ok(BistabilitySweep { points, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepDirection {
    Up,
    Down,
}

/// Occupancy followed by a quasi-static detuning sweep, reported in grid order.
///
/// An upward sweep starts on the lowest root and a downward sweep on the
/// highest. At each later point the root closest to the previously occupied
/// one is taken, which forces a jump once the occupied branch disappears.
pub fn hysteresis_sweep(
    params: &SystemParams,
    detunings: &[f64],
    direction: SweepDirection,
) -> Result<Vec<f64>> {
    check_sorted(detunings, "Delta0")?;
    let roots = detunings
        .par_iter()
        .map(|&d| solve_intracavity_occupancy(&intracavity_cubic(&params.with_delta0(d))))
        .collect::<Result<Vec<_>>>()?;
    Ok(follow_branch(&roots, direction))
}

fn follow_branch(roots: &[Vec<f64>], direction: SweepDirection) -> Vec<f64> {
    let order: Vec<usize> = match direction {
        SweepDirection::Up => (0..roots.len()).collect(),
        SweepDirection::Down => (0..roots.len()).rev().collect(),
    };
    let mut trace = vec![f64::NAN; roots.len()];
    let mut previous: Option<f64> = None;
    for i in order {
        let here = &roots[i];
        let pick = match previous {
            None => match direction {
                SweepDirection::Up => here[0],
                SweepDirection::Down => here[here.len() - 1],
            },
            Some(prev) => here
                .iter()
                .copied()
                .min_by(|a, b| (a - prev).abs().total_cmp(&(b - prev).abs()))
                .expect("at least one root"),
        };
        trace[i] = pick;
        previous = Some(pick);
    }
    trace
}

/// One cell of a detuning x drive stability map.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityCell {
    pub delta0: f64,
    pub drive: f64,
    pub states: Vec<SteadyState>,
    /// Index into `states` of the branch followed by an upward detuning sweep.
    pub occupied: usize,
}

impl StabilityCell {
    pub fn occupied_state(&self) -> &SteadyState {
        &self.states[self.occupied]
    }

    pub fn occupied_stability(&self) -> Stability {
        self.occupied_state().stability
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityMap {
    pub detunings: Vec<f64>,
    pub drives: Vec<f64>,
    /// Row-major over drives: `cells[i_drive * detunings.len() + i_detuning]`.
    pub cells: Vec<StabilityCell>,
}

impl StabilityMap {
    pub fn cell(&self, i_drive: usize, i_detuning: usize) -> &StabilityCell {
        &self.cells[i_drive * self.detunings.len() + i_detuning]
    }
}

/// Routh-Hurwitz verdicts for every fixed point on a detuning x drive grid.
///
/// Within each drive row the occupied branch is the one reached by an upward
/// detuning sweep (see [`hysteresis_sweep`]).
pub fn stability_map(
    params: &SystemParams,
    detunings: &[f64],
    drives: &[f64],
) -> Result<StabilityMap> {
    check_sorted(detunings, "Delta0")?;
    check_sorted(drives, "A_l")?;
    let rows = drives
        .par_iter()
        .map(|&drive| {
            let states = detunings
                .iter()
                .map(|&d| steady_states(&params.with_drive(drive).with_delta0(d)))
                .collect::<Result<Vec<_>>>()?;
            let roots: Vec<Vec<f64>> = states
                .iter()
                .map(|s| s.iter().map(|x| x.occupancy).collect())
                .collect();
            let trace = follow_branch(&roots, SweepDirection::Up);
            Ok(states
                .into_iter()
                .zip(detunings)
                .zip(trace)
                .map(|((states, &delta0), n)| {
                    let occupied = states
                        .iter()
                        .position(|s| s.occupancy == n)
                        .expect("trace picks an existing root");
                    StabilityCell {
                        delta0,
                        drive,
                        states,
                        occupied,
                    }
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilityMap {
        detunings: detunings.to_vec(),
        drives: drives.to_vec(),
        cells: rows.into_iter().flatten().collect(),
    })
}
