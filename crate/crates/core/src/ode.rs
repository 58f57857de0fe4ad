//! Fixed-step classical Runge-Kutta for autonomous systems.

use std::ops::{Add, Mul};

use crate::error::{Error, Result};

/// Relative slack allowed when comparing a step against its bound.
const STEP_SLACK: f64 = 1e-12;

/// One RK4 step of `y' = f(y)`.
pub fn rk4_step<S, F>(f: &F, y: &S, h: f64) -> S
where
    S: Copy + Add<Output = S> + Mul<f64, Output = S>,
    F: Fn(&S) -> S,
{
    let k1 = f(y);
    let k2 = f(&(*y + k1 * (0.5 * h)));
    let k3 = f(&(*y + k2 * (0.5 * h)));
    let k4 = f(&(*y + k3 * h));
    *y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

/// Validates `dt` against `bound` and returns the number of steps to reach
/// `t_end` together with the (possibly shortened) uniform step.
pub(crate) fn checked_steps(t_end: f64, dt: f64, bound: f64) -> Result<(usize, f64)> {
    if !(dt > 0.0) || !dt.is_finite() || dt > bound * (1.0 + STEP_SLACK) {
        return Err(Error::StepTooLarge { dt, bound });
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::InvalidParameter {
            field: "t_end",
            requirement: ">= 0",
            value: t_end,
        });
    }
    let ratio = t_end / dt;
    let steps = if (ratio - ratio.round()).abs() <= 1e-9 * ratio.max(1.0) {
        ratio.round()
    } else {
        ratio.ceil()
    } as usize;
    if steps == 0 {
        return Ok((0, dt));
    }
    Ok((steps, t_end / steps as f64))
}
