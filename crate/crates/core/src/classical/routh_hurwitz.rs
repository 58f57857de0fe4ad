//! Routh-Hurwitz test for 4x4 real matrices.

use nalgebra::Matrix4;

use crate::error::{Error, Result};
use crate::model::Stability;

/// Width of the marginal band, relative to the scale of each Hurwitz quantity.
pub const MARGINAL_BAND: f64 = 1e-10;

/// Coefficients `[a1, a2, a3, a4]` of the monic characteristic polynomial
/// `det(sI - A) = s^4 + a1 s^3 + a2 s^2 + a3 s + a4` (Faddeev-LeVerrier).
pub fn characteristic_polynomial(a: &Matrix4<f64>) -> [f64; 4] {
    let id = Matrix4::<f64>::identity();
    let mut m = Matrix4::<f64>::zeros();
    let mut coeff = 1.0;
    let mut out = [0.0; 4];
    for (k, slot) in out.iter_mut().enumerate() {
        m = a * m + id * coeff;
        coeff = -(a * m).trace() / (k + 1) as f64;
        *slot = coeff;
    }
    out
}

/// `true` iff every eigenvalue of `a` has a negative real part.
///
/// Uses the quartic Hurwitz conditions `a1 > 0`, `a3 > 0`, `a4 > 0` and
/// `a1 a2 a3 > a3^2 + a1^2 a4`. Returns [`Error::Marginal`] when none of
/// these quantities is clearly negative but one lies inside the marginal band
/// around zero.
pub fn routh_hurwitz_stable(a: &Matrix4<f64>) -> Result<bool> {
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::Marginal {
            quantity: "non-finite entry",
            value: f64::NAN,
        });
    }
    let [a1, a2, a3, a4] = characteristic_polynomial(a);
    let norm = a.abs().row_sum().max();
    let band = |power: i32| MARGINAL_BAND * norm.powi(power);

    let terms = [a1 * a2 * a3, a3 * a3, a1 * a1 * a4];
    let hurwitz3 = terms[0] - terms[1] - terms[2];
    let hurwitz3_scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    let checks = [
        ("a1", a1, band(1)),
        ("a3", a3, band(3)),
        ("a4", a4, band(4)),
        ("a1*a2*a3 - a3^2 - a1^2*a4", hurwitz3, MARGINAL_BAND * hurwitz3_scale),
    ];
    // A clearly negative quantity decides instability even if another is marginal.
    if checks.iter().any(|(_, value, tol)| *value < -tol) {
        return Ok(false);
    }
    match checks.iter().find(|(_, value, tol)| value.abs() <= *tol) {
        Some(&(quantity, value, _)) => Err(Error::Marginal { quantity, value }),
        None => Ok(true),
    }
}

/// [`routh_hurwitz_stable`] folded into a [`Stability`] verdict.
pub fn stability(a: &Matrix4<f64>) -> Stability {
    match routh_hurwitz_stable(a) {
        Ok(true) => Stability::Stable,
        Ok(false) => Stability::Unstable,
        Err(_) => Stability::Marginal,
    }
}
