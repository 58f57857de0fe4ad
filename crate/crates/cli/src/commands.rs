//! Dispatch from a [`RunSpec`] to the library.

use optomech_core::classical::{
    hysteresis_sweep, integrate_mean_field, max_step, mean_output_field, optical_spring_shift,
    optomechanical_damping, stability_map, static_potential, steady_states, sweep_bistability,
    StaticPotentialModel, SweepDirection,
};
use optomech_core::quantum::{
    diffusion_matrix, drift_matrix, integrate_covariance, rwa_interaction, steady_covariance,
    CovarianceMatrix, InteractionKind,
};
use optomech_core::{Complex64, Stability, SteadyState, SystemParams};

use crate::config::{Command, RunSpec};
use crate::error::{CliError, Result};
use crate::table::ResultTable;

/// Runs the command and returns its tables, primary table first.
pub fn run_command(spec: &RunSpec) -> Result<Vec<ResultTable>> {
    match spec.command {
        Command::Steady => steady(spec),
        Command::Bistability => bistability(spec),
        Command::Hysteresis => hysteresis(spec),
        Command::StabilityMap => stab_map(spec),
        Command::Damping => damping(spec),
        Command::Spring => spring(spec),
        Command::MeanField => mean_field(spec),
        Command::Covariance => covariance(spec),
        Command::StaticPotential => potential(spec),
        Command::Regime => regime(spec),
    }
}

/// 1 stable, 0 unstable, -1 marginal.
pub fn stability_code(s: Stability) -> f64 {
    match s {
        Stability::Stable => 1.0,
        Stability::Unstable => 0.0,
        Stability::Marginal => -1.0,
    }
}

/// Re-solves each detuning on its own to name the cell behind a sweep failure.
fn locate(params: &SystemParams, detunings: &[f64], drives: Option<&[f64]>, err: optomech_core::Error) -> CliError {
    let drives = drives.map_or_else(|| vec![params.drive], <[f64]>::to_vec);
    for &drive in &drives {
        for &d in detunings {
            if let Err(e) = steady_states(&params.with_drive(drive).with_delta0(d)) {
                return CliError::at(format!("Delta0 = {d}, A_l = {drive}"), e);
            }
        }
    }
    CliError::numerical(err)
}

fn steady(spec: &RunSpec) -> Result<Vec<ResultTable>> {
    let p = &spec.params;
    let states = steady_states(p).map_err(CliError::numerical)?;
    let col = |f: &dyn Fn(&SteadyState) -> f64| states.iter().map(f).collect::<Vec<_>>();
    let out = |s: &SteadyState| mean_output_field(s.alpha, p.kappa);
    Ok(vec![ResultTable::new("steady", spec)
        .with_column("N", col(&|s| s.occupancy))
        .with_column("alpha_re", col(&|s| s.alpha.re))
        .with_column("alpha_im", col(&|s| s.alpha.im))
        .with_column("beta_re", col(&|s| s.beta.re))
        .with_column("beta_im", col(&|s| s.beta.im))
        .with_column("Delta_eff", col(&|s| s.delta_eff))
        .with_column("a_out_re", col(&|s| out(s).re))
        .with_column("a_out_im", col(&|s| out(s).im))
        .with_column("stable", col(&|s| stability_code(s.stability)))])
}

fn bistability(spec: &RunSpec) -> Result<Vec<ResultTable>> {
    let grid = spec.grid("Delta0")?;
    let sweep = sweep_bistability(&spec.params, &grid).map_err(|e| locate(&spec.params, &grid, None, e))?;
    let pts = &sweep.points;
    let root = |k: usize| pts.iter().map(|p| p.roots.get(k).copied().unwrap_or(f64::NAN)).collect();
    let stab = |k: usize| {
        pts.iter()
            .map(|p| p.stability.get(k).map_or(f64::NAN, |s| stability_code(*s)))
            .collect()
    };
    let main = ResultTable::new("bistability", spec)
        .with_column("Delta0", grid.clone())
        .with_column("roots", pts.iter().map(|p| p.roots.len() as f64).collect())
        .with_column("N_1", root(0))
        .with_column("N_2", root(1))
        .with_column("N_3", root(2))
        .with_column("stable_1", stab(0))
        .with_column("stable_2", stab(1))
        .with_column("stable_3", stab(2))
        .with_column("discriminant", pts.iter().map(|p| p.discriminant).collect());
    let edges = ResultTable::new("bistability_edges", spec).with_column("Delta0", sweep.edges);
    Ok(vec![main, edges])
}

fn hysteresis(spec: &RunSpec) -> Result<Vec<ResultTable>> {
    let grid = spec.grid("Delta0")?;
    let sweep = |dir| hysteresis_sweep(&spec.params, &grid, dir).map_err(|e| locate(&spec.params, &grid, None, e));
    let up = sweep(SweepDirection::Up)?;
    let down = sweep(SweepDirection::Down)?;
    Ok(vec![ResultTable::new("hysteresis", spec)
        .with_column("Delta0", grid.clone())
        .with_column("N_up", up)
        .with_column("N_down", down)])
}

fn stab_map(spec: &RunSpec) -> Result<Vec<ResultTable>> {
    let detunings = spec.grid("Delta0")?;
    let drives = spec.grid("A_l")?;
    let map = stability_map(&spec.params, &detunings, &drives)
        .map_err(|e| locate(&spec.params, &detunings, Some(&drives), e))?;
    let cells = &map.cells;
    let unstable = |c: &optomech_core::classical::StabilityCell| {
        c.states.iter().filter(|s| s.stability == Stability::Unstable).count() as f64
    };
    Ok(vec![ResultTable::new("stability_map", spec)
        .with_column("Delta0", cells.iter().map(|c| c.delta0).collect())
        .with_column("A_l", cells.iter().map(|c| c.drive).collect())
        .with_column("roots", cells.iter().map(|c| c.states.len() as f64).collect())
        .with_column("N", cells.iter().map(|c| c.occupied_state().occupancy).collect())
        .with_column("Delta_eff", cells.iter().map(|c| c.occupied_state().delta_eff).collect())
        .with_column("stable", cells.iter().map(|c| stability_code(c.occupied_stability())).collect())
        .with_column("unstable_roots", cells.iter().map(unstable).collect())])
}

fn g_s(spec: &RunSpec) -> Result<f64> {
    let g = spec
        .options
        .g_s
        .ok_or_else(|| CliError::Config(format!("command {} requires options.g_s", spec.command)))?;
    if !(g.is_finite() && g >= 0.0) {
        return Err(CliError::Config(format!("options.g_s must be ≥ 0 (got {g})")));
    }
    Ok(g)
}

fn damping(spec: &RunSpec) -> Result<Vec<ResultTable>> {
    let grid = spec.grid("Delta")?;
    let (g, p) = (g_s(spec)?, &spec.params);
    let values = grid.iter().map(|&d| optomechanical_damping(d, p.kappa, g, p.omega_m)).collect();
    Ok(vec![ResultTable::new("damping", spec)
        .with_column("Delta", grid.clone())
        .with_column("gamma_om", values)])
}

fn spring(spec: &RunSpec) -> Result<Vec<ResultTable>> {
    let grid = spec.grid("Delta")?;
    let (g, p) = (g_s(spec)?, &spec.params);
    let values = grid.iter().map(|&d| optical_spring_shift(d, p.kappa, g, p.omega_m)).collect();
    Ok(vec![ResultTable::new("spring", spec)
        .with_column("Delta", grid.clone())
        .with_column("delta_omega_m", values)])
}

fn regime(spec: &RunSpec) -> Result<Vec<ResultTable>> {
    let grid = spec.grid("Delta")?;
    let (g, p) = (g_s(spec)?, &spec.params);
    let mut codes = Vec::with_capacity(grid.len());
    let mut resolved = Vec::with_capacity(grid.len());
    for &d in &grid {
        let r = rwa_interaction(d, p.omega_m, p.kappa, g, spec.options.tol_res)
            .map_err(|e| CliError::at(format!("Delta = {d}"), e))?;
        codes.push(match r.interaction {
            InteractionKind::OffResonant => 0.0,
            InteractionKind::BeamSplitter => 1.0,
            InteractionKind::TwoModeSqueezer => 2.0,
        });
        resolved.push(if r.resolved_sideband { 1.0 } else { 0.0 });
    }
    Ok(vec![ResultTable::new("regime", spec)
        .with_column("Delta", grid.clone())
        .with_column("interaction", codes)
        .with_column("resolved_sideband", resolved)])
}

/// Integration horizon and step: options, else `30 / min(kappa, gamma)` and the step bound.
fn horizon(spec: &RunSpec, bound: f64) -> (f64, f64, usize) {
    let p = &spec.params;
    let t_end = spec.options.t_end.unwrap_or(30.0 / p.kappa.min(p.gamma));
    let dt = spec.options.dt.unwrap_or(bound);
    let record = spec
        .options
        .record_every
        .unwrap_or_else(|| ((t_end / dt) / 1000.0).ceil().max(1.0) as usize);
    (t_end, dt, record)
}

fn mean_field(spec: &RunSpec) -> Result<Vec<ResultTable>> {
    let p = &spec.params;
    let (t_end, dt, record) = horizon(spec, max_step(p));
    let c = |v: Option<[f64; 2]>| v.map_or(Complex64::new(0.0, 0.0), |[re, im]| Complex64::new(re, im));
    let traj = integrate_mean_field(p, c(spec.options.alpha0), c(spec.options.beta0), t_end, dt, record)
        .map_err(CliError::numerical)?;
    let s = &traj.states;
    Ok(vec![ResultTable::new("mean_field", spec)
        .with_column("t", traj.times.clone())
        .with_column("alpha_re", s.iter().map(|x| x.alpha.re).collect())
        .with_column("alpha_im", s.iter().map(|x| x.alpha.im).collect())
        .with_column("beta_re", s.iter().map(|x| x.beta.re).collect())
        .with_column("beta_im", s.iter().map(|x| x.beta.im).collect())])
}

const COVARIANCE_ENTRIES: [(&str, usize, usize); 10] = [
    ("V_XX", 0, 0),
    ("V_XY", 0, 1),
    ("V_XQ", 0, 2),
    ("V_XP", 0, 3),
    ("V_YY", 1, 1),
    ("V_YQ", 1, 2),
    ("V_YP", 1, 3),
    ("V_QQ", 2, 2),
    ("V_QP", 2, 3),
    ("V_PP", 3, 3),
];

fn covariance_table(name: &str, spec: &RunSpec, times: Option<Vec<f64>>, states: &[CovarianceMatrix]) -> ResultTable {
    let mut t = ResultTable::new(name, spec);
    if let Some(times) = times {
        t = t.with_column("t", times);
    }
    for (label, r, c) in COVARIANCE_ENTRIES {
        t = t.with_column(label, states.iter().map(|v| v.matrix()[(r, c)]).collect());
    }
    t
}

fn covariance(spec: &RunSpec) -> Result<Vec<ResultTable>> {
    let p = &spec.params;
    let states = steady_states(p).map_err(CliError::numerical)?;
    let branch = spec.options.branch.unwrap_or(0);
    let fixed = states.get(branch).ok_or_else(|| {
        CliError::Config(format!(
            "options.branch = {branch} but only {} fixed points exist",
            states.len()
        ))
    })?;
    let a = drift_matrix(p, fixed);
    let d = diffusion_matrix(p);
    let vss = steady_covariance(&a, &d).map_err(|e| CliError::at(format!("branch {branch}"), e))?;
    let v0 = CovarianceMatrix::diagonal(spec.options.v0.unwrap_or([0.5, 0.5, p.n_th + 0.5, p.n_th + 0.5]));
    let (t_end, dt, record) = horizon(spec, 0.05 / a.rate_scale());
    let traj = integrate_covariance(&a, &d, &v0, t_end, dt, record).map_err(CliError::numerical)?;
    Ok(vec![
        covariance_table("covariance", spec, Some(traj.times.clone()), &traj.states),
        covariance_table("covariance_steady", spec, None, &[vss]),
    ])
}

fn potential(spec: &RunSpec) -> Result<Vec<ResultTable>> {
    let o = &spec.options;
    let need = |v: Option<f64>, key: &str| v.ok_or_else(|| CliError::Config(format!("static-potential requires options.{key}")));
    let lambda = need(o.lambda, "lambda")?;
    let grid = spec.grid("x")?;
    let first = o.first_resonance.unwrap_or(0.0);
    // By default cover the grid with resonances.
    let count = o.resonance_count.unwrap_or_else(|| {
        let span = grid[grid.len() - 1] - first;
        (span / (lambda / 2.0)).floor().max(0.0) as usize + 1
    });
    let model = StaticPotentialModel {
        k_ho: need(o.k_ho, "k_HO")?,
        f0: need(o.f0, "F0")?,
        wavelength: lambda,
        finesse: need(o.finesse, "finesse")?,
        first_resonance: first,
        resonance_count: count,
    }
    .validate()
    .map_err(|e| CliError::Config(format!("options: {e}")))?;
    let v = static_potential(&model, &grid).map_err(CliError::numerical)?;
    let eq = &v.equilibria;
    Ok(vec![
        ResultTable::new("static_potential", spec)
            .with_column("x", v.x.clone())
            .with_column("V_RP", v.v_rp.clone())
            .with_column("V_HO", v.v_ho.clone())
            .with_column("V_t", v.v_total.clone()),
        ResultTable::new("equilibria", spec)
            .with_column("x", eq.iter().map(|e| e.x).collect())
            .with_column("K_eff", eq.iter().map(|e| e.k_eff).collect()),
    ])
}
