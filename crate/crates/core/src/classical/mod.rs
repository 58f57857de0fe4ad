//! Classical mean-field optomechanics: steady states, bistability, stability
//! and the linear mechanical response.

pub mod cubic;
pub mod mean_field;
pub mod response;
pub mod routh_hurwitz;
pub mod static_potential;
pub mod steady;

pub use cubic::{intracavity_cubic, solve_intracavity_occupancy, CubicProblem};
pub use mean_field::{integrate_mean_field, max_step, mean_field_rhs, MeanField, MeanFieldTrajectory};
pub use response::{
    classify_regime, effective_susceptibility, mechanical_susceptibility, optical_spring_shift,
    optical_susceptibility, optomechanical_damping, response_quantities, self_energy, RegimeFlags,
    ResponseQuantities,
};
pub use routh_hurwitz::{characteristic_polynomial, routh_hurwitz_stable};
pub use static_potential::{static_potential, Equilibrium, StaticPotential, StaticPotentialModel};
pub use steady::{
    hysteresis_sweep, mean_output_field, stability_map, steady_state, steady_states,
    sweep_bistability, BistabilityPoint, BistabilitySweep, Branch, StabilityCell, StabilityMap,
    SweepDirection,
};
