//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nalgebra::Matrix4;
use optomech_core::classical::{
    hysteresis_sweep, optical_spring_shift, optomechanical_damping, routh_hurwitz_stable,
    self_energy, stability_map, static_potential, steady_states, sweep_bistability,
    StaticPotentialModel, SweepDirection,
};
use optomech_core::model::beam_radiation_force;
use optomech_core::quantum::{
    drift_matrix, integrate_covariance, lyapunov_residual, steady_covariance, CovarianceMatrix,
    DiffusionMatrix, DriftMatrix,
};
use optomech_core::{Complex64, Stability, SystemParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect()
}

fn standard(g0: f64) -> SystemParams {
    SystemParams::dimensionless(0.15, 0.005, g0, 0.0, 5.0)
}

fn spectral_abscissa(a: &Matrix4<f64>) -> f64 {
    a.complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn steady_occupancy() -> Outcome {
    let params = standard(0.0);
    let _ = steady_states(&params);
    let (states, t) = timed(|| steady_states(&params));
    let states = states.map_err(|e| e.to_string())?;
    let oracle = 4.0 * 25.0 / (0.15 * 0.15);
    check(states.len() == 1, || format!("{} roots", states.len()))?;
    let n = states[0].occupancy;
    check((n - oracle).abs() <= 1e-8 * oracle, || format!("N = {n}, oracle {oracle}"))?;
    within(t, Duration::from_millis(1))?;
    Ok(format!("N = {n:.6}, {t:?}"))
}

/// Raw-coefficient discriminant of `4C^2 N^3 + 8 C D N^2 + (4 D^2 + k^2) N - 4 A^2`.
fn raw_discriminant(p: &SystemParams) -> f64 {
    let c = 2.0 * p.g0 * p.g0 * p.omega_m / (p.gamma * p.gamma / 4.0 + p.omega_m * p.omega_m);
    let (a, b) = (4.0 * c * c, 8.0 * c * p.delta0);
    let cc = 4.0 * p.delta0 * p.delta0 + p.kappa * p.kappa;
    let d = -4.0 * p.drive * p.drive;
    18.0 * a * b * cc * d - 4.0 * b.powi(3) * d + b * b * cc * cc - 4.0 * a * cc.powi(3)
        - 27.0 * a * a * d * d
}

fn bistability_structure() -> Outcome {
    let detunings = grid(-2.0, 1.0, 601);
    // Smallest g0 with a window, from the fold condition C A^2 = 8 (kappa/2)^3 / (3 sqrt 3).
    let k = 0.075f64;
    let c = 8.0 * k.powi(3) / (3.0 * 3f64.sqrt()) / 25.0;
    let g_c = (c * (0.005f64.powi(2) / 4.0 + 1.0) / 2.0).sqrt();
    let below = sweep_bistability(&standard(0.95 * g_c), &detunings).map_err(|e| e.to_string())?;
    check(below.window_indices().is_empty(), || "window below threshold".into())?;

    let params = standard(1.6 * g_c);
    let ((sweep, up, down), t) = timed(|| {
        (
            sweep_bistability(&params, &detunings),
            hysteresis_sweep(&params, &detunings, SweepDirection::Up),
            hysteresis_sweep(&params, &detunings, SweepDirection::Down),
        )
    });
    let sweep = sweep.map_err(|e| e.to_string())?;
    let (up, down) = (up.map_err(|e| e.to_string())?, down.map_err(|e| e.to_string())?);
    let window = sweep.window_indices();
    check(!window.is_empty(), || "empty window above threshold".into())?;

    let mut worst: f64 = 0.0;
    let crossings: Vec<(f64, f64)> = detunings
        .windows(2)
        .filter(|w| {
            (raw_discriminant(&params.with_delta0(w[0])) > 0.0)
                != (raw_discriminant(&params.with_delta0(w[1])) > 0.0)
        })
        .map(|w| (w[0], w[1]))
        .collect();
    check(crossings.len() == sweep.edges.len(), || {
        format!("{} edges vs {} crossings", sweep.edges.len(), crossings.len())
    })?;
    for ((mut lo, mut hi), edge) in crossings.into_iter().zip(&sweep.edges) {
        let s = raw_discriminant(&params.with_delta0(lo)) > 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (raw_discriminant(&params.with_delta0(mid)) > 0.0) == s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        worst = worst.max((edge - 0.5 * (lo + hi)).abs());
    }
    check(worst <= 1e-6, || format!("edge error {worst:e}"))?;

    let scale = up.iter().chain(&down).cloned().fold(0.0, f64::max);
    let differs: Vec<usize> = (0..detunings.len())
        .filter(|&i| (up[i] - down[i]).abs() > 1e-6 * scale)
        .collect();
    check(differs == window, || "hysteresis differs off the window".into())?;
    within(t, Duration::from_secs(1))?;
    Ok(format!(
        "g0_c = {g_c:.4e}, window [{:.4}, {:.4}], edge error {worst:.1e}, {t:?}",
        sweep.edges[0], sweep.edges[1]
    ))
}

fn stability_map_agrees() -> Outcome {
    let params = standard(0.005);
    let detunings = grid(-2.0, 2.0, 101);
    let drives = grid(0.0, 5.0, 101);
    let (map, t) = timed(|| stability_map(&params, &detunings, &drives));
    let map = map.map_err(|e| e.to_string())?;
    let (mut checked, mut skipped) = (0, 0);
    for cell in &map.cells {
        let p = params.with_drive(cell.drive).with_delta0(cell.delta0);
        for s in &cell.states {
            let a = drift_matrix(&p, s);
            let oracle = spectral_abscissa(a.matrix());
            if oracle.abs() <= 1e-8 {
                skipped += 1;
                continue;
            }
            let verdict = routh_hurwitz_stable(a.matrix())
                .map_err(|e| format!("{e} at Delta0 = {}, A_l = {}", cell.delta0, cell.drive))?;
            check(verdict == (oracle < 0.0), || {
                format!("disagreement at Delta0 = {}, A_l = {}", cell.delta0, cell.drive)
            })?;
            check((s.stability == Stability::Stable) == verdict, || "map verdict differs".into())?;
            checked += 1;
        }
    }
    let occupied = |st: Stability| map.cells.iter().filter(move |c| c.occupied_stability() == st);
    let stable = occupied(Stability::Stable).count();
    let blue_unstable = occupied(Stability::Unstable).filter(|c| c.delta0 > 0.0).count();
    check(stable > 0 && blue_unstable > 0, || {
        format!("{stable} S cells, {blue_unstable} blue U cells")
    })?;
    within(t, Duration::from_secs(10))?;
    Ok(format!(
        "{checked} fixed points agree, {skipped} marginal, {stable} S / {} U cells ({blue_unstable} blue), {t:?}",
        map.cells.len() - stable
    ))
}

fn damping_and_spring() -> Outcome {
    let (kappa, g_s) = (0.1, 0.05);
    let deltas = grid(-2.0, 2.0, 1001);
    let (curves, t) = timed(|| {
        let g: Vec<f64> = deltas.iter().map(|&d| optomechanical_damping(d, kappa, g_s, 1.0)).collect();
        let s: Vec<f64> = deltas.iter().map(|&d| optical_spring_shift(d, kappa, g_s, 1.0)).collect();
        (g, s)
    });
    let (g, s) = curves;
    check(optomechanical_damping(0.0, kappa, g_s, 1.0) == 0.0, || "gamma_om(0) != 0".into())?;
    check(optical_spring_shift(0.0, kappa, g_s, 1.0) == 0.0, || "delta_omega_m(0) != 0".into())?;
    let n = deltas.len();
    let odd = (0..n)
        .map(|i| (g[i] + g[n - 1 - i]).abs().max((s[i] + s[n - 1 - i]).abs()))
        .fold(0.0, f64::max);
    check(odd <= 1e-12, || format!("oddness violated by {odd:e}"))?;
    let imax = (0..n).max_by(|&a, &b| g[a].total_cmp(&g[b])).unwrap();
    let imin = (0..n).min_by(|&a, &b| g[a].total_cmp(&g[b])).unwrap();
    check((deltas[imax] + 1.0).abs() <= kappa / 2.0, || format!("max at {}", deltas[imax]))?;
    check((deltas[imin] - 1.0).abs() <= kappa / 2.0, || format!("min at {}", deltas[imin]))?;
    for (d, v) in deltas.iter().zip(&g) {
        if *d != 0.0 {
            check(v.signum() == -d.signum(), || format!("sign at Delta = {d}"))?;
        }
    }
    within(t, Duration::from_millis(100))?;
    Ok(format!(
        "extrema at {:+.3} / {:+.3}, oddness {odd:.0e}, {t:?}",
        deltas[imax], deltas[imin]
    ))
}

fn self_energy_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let start = Instant::now();
    let (mut worst_im, mut worst_re): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let delta = rng.gen_range(-3.0..3.0);
        let kappa = rng.gen_range(0.01..2.0);
        let g_s = rng.gen_range(0.0..0.2);
        let mass = rng.gen_range(0.2..5.0);
        let w = rng.gen_range(0.5..2.0);
        let sigma = self_energy(w, delta, kappa, g_s, mass, w);
        worst_im = worst_im.max((sigma.im / (mass * w) - optomechanical_damping(delta, kappa, g_s, w)).abs());
        worst_re = worst_re.max(
            ((sigma.re / (2.0 * mass * w)).abs() - optical_spring_shift(delta, kappa, g_s, w).abs()).abs(),
        );
    }
    let t = start.elapsed();
    check(worst_im <= 1e-9 && worst_re <= 1e-9, || {
        format!("Im error {worst_im:e}, Re error {worst_re:e}")
    })?;
    within(t, Duration::from_millis(100))?;
    Ok(format!("Im error {worst_im:.1e}, |Re| error {worst_re:.1e}, {t:?}"))
}

fn random_stable(rng: &mut ChaCha8Rng) -> (DriftMatrix, DiffusionMatrix) {
    loop {
        let kappa = rng.gen_range(0.05..1.0);
        let gamma = rng.gen_range(0.02..0.3);
        let delta = rng.gen_range(-2.0..2.0);
        let g = Complex64::from_polar(rng.gen_range(0.0..0.15), rng.gen_range(0.0..std::f64::consts::TAU));
        let a = DriftMatrix::new(kappa, gamma, 1.0, delta, g);
        if a.stability() == Stability::Stable && spectral_abscissa(a.matrix()) < -5e-3 {
            return (a, DiffusionMatrix::new(kappa, gamma, rng.gen_range(0.0..20.0)));
        }
    }
}

fn covariance_dynamics() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let start = Instant::now();
    let (mut worst_res, mut worst_long): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let (a, d) = random_stable(&mut rng);
        let v = steady_covariance(&a, &d).map_err(|e| e.to_string())?;
        worst_res = worst_res.max(lyapunov_residual(&a, &d, &v).amax() / d.max_abs());
        // At least 30/min(kappa, gamma), longer when the slowest mode needs it.
        let decay = -spectral_abscissa(a.matrix());
        let t_end = (30.0 / a.kappa().min(a.gamma())).max(12.0 / decay);
        let traj = integrate_covariance(&a, &d, &CovarianceMatrix::vacuum(), t_end, 0.05 / a.rate_scale(), 1000)
            .map_err(|e| e.to_string())?;
        worst_long = worst_long.max((traj.last().matrix() - v.matrix()).amax());
    }
    check(worst_res <= 1e-8, || format!("relative residual {worst_res:e}"))?;
    check(worst_long <= 1e-6, || format!("long-time error {worst_long:e}"))?;
    let n_th = 10.0;
    let a = DriftMatrix::new(0.15, 0.005, 1.0, -0.5, Complex64::new(0.0, 0.0));
    let v = steady_covariance(&a, &DiffusionMatrix::new(0.15, 0.005, n_th)).map_err(|e| e.to_string())?;
    let want = Matrix4::from_diagonal(&[0.5, 0.5, n_th + 0.5, n_th + 0.5].into());
    let g0_err = (v.matrix() - want).amax();
    check(g0_err <= 1e-10, || format!("uncoupled error {g0_err:e}"))?;
    let t = start.elapsed();
    within(t, Duration::from_secs(5))?;
    Ok(format!(
        "residual {worst_res:.1e}|D|, long-time {worst_long:.1e}, uncoupled {g0_err:.0e}, {t:?}"
    ))
}

fn cooling_direction() -> Outcome {
    let (kappa, gamma, n_th, g_s) = (0.15, 0.005, 10.0, 0.05);
    let d = DiffusionMatrix::new(kappa, gamma, n_th);
    let start = Instant::now();
    let red = DriftMatrix::new(kappa, gamma, 1.0, -1.0, Complex64::new(g_s, 0.0));
    let q_red = steady_covariance(&red, &d).map_err(|e| e.to_string())?.matrix()[(2, 2)];
    check(q_red < n_th + 0.5 - 1e-3, || format!("<dQ^2> = {q_red}"))?;
    let blue = DriftMatrix::new(kappa, gamma, 1.0, 1.0, Complex64::new(g_s, 0.0));
    let blue_note = match blue.stability() {
        Stability::Stable => {
            let q_blue = steady_covariance(&blue, &d).map_err(|e| e.to_string())?.matrix()[(2, 2)];
            check(q_blue > q_red + 1e-3, || format!("blue {q_blue} vs red {q_red}"))?;
            format!("blue {q_blue:.4}")
        }
        s => format!("blue side {s:?}, not compared"),
    };
    let t = start.elapsed();
    within(t, Duration::from_secs(1))?;
    Ok(format!("<dQ^2> = {q_red:.4} < {:.1}, {blue_note}, {t:?}", n_th + 0.5))
}

fn potential_model(f0: f64) -> StaticPotentialModel {
    StaticPotentialModel {
        k_ho: 1.0,
        f0,
        wavelength: 1.0,
        finesse: 10.0,
        first_resonance: -2.75,
        resonance_count: 12,
    }
}

/// Local minima of the spring plus arctangent-step potential on `xs`.
fn brute_force_minima(m: &StaticPotentialModel, xs: &[f64]) -> Vec<f64> {
    let w = m.wavelength / (2.0 * m.finesse);
    let v: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let mut v = 0.5 * m.k_ho * x * x;
            for j in 0..m.resonance_count {
                let xj = m.first_resonance + 0.5 * m.wavelength * j as f64;
                v -= m.f0 * w / 2.0 * (2.0 * (x - xj) / w).atan();
            }
            v
        })
        .collect();
    (1..xs.len() - 1)
        .filter(|&i| v[i] < v[i - 1] && v[i] <= v[i + 1])
        .map(|i| xs[i])
        .collect()
}

fn static_potential_wells() -> Outcome {
    let dense = grid(-3.0, 3.0, 100_000);
    let coarse = grid(-3.0, 3.0, 20_001);
    let count = |f0: f64, xs: &[f64]| static_potential(&potential_model(f0), xs).map(|p| p.equilibria.len());
    let start = Instant::now();
    // Threshold for a second well by bisection on F0.
    let (mut lo, mut hi) = (1e-6, 1.0);
    check(count(lo, &coarse) == Ok(1) && count(hi, &coarse).is_ok_and(|n| n >= 2), || {
        "no bracket for the threshold".into()
    })?;
    while hi - lo > 1e-4 {
        let mid = 0.5 * (lo + hi);
        if count(mid, &coarse) == Ok(1) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_search = start.elapsed();
    let mut counts = Vec::new();
    let mut elapsed = Duration::ZERO;
    for f0 in [1e-6, 1.05 * hi, 2.0 * hi] {
        let m = potential_model(f0);
        let (p, t) = timed(|| static_potential(&m, &dense));
        elapsed += t;
        let got = p.map_err(|e| e.to_string())?.equilibria;
        let want = brute_force_minima(&m, &dense);
        check(got.len() == want.len(), || format!("F0 = {f0}: {} vs {} minima", got.len(), want.len()))?;
        for (e, x) in got.iter().zip(&want) {
            check((e.x - x).abs() <= m.width() / 100.0, || format!("F0 = {f0}: {} vs {x}", e.x))?;
        }
        counts.push(got.len());
    }
    check(counts[0] == 1 && counts[1] >= 2 && counts[2] >= 2, || format!("counts {counts:?}"))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "threshold F0 = {hi:.4} (search {t_search:?}), counts {counts:?}, {elapsed:?}"
    ))
}

fn radiation_force_order() -> Outcome {
    let f = beam_radiation_force(1361.0).map_err(|e| e.to_string())?;
    check((5e-6..=5e-5).contains(&f), || format!("{f} N"))?;
    Ok(format!("2P/c = {f:.3e} N"))
}

fn golden_configs() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("configs directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

fn csv_hashes(dir: &Path) -> Vec<(String, String)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let hash = Sha256::digest(std::fs::read(&p).unwrap());
            let hex = hash.iter().map(|b| format!("{b:02x}")).collect();
            (p.file_name().unwrap().to_string_lossy().into_owned(), hex)
        })
        .collect()
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let configs = golden_configs();
    let mut files = 0;
    for config in &configs {
        let stem = config.file_stem().unwrap().to_string_lossy().into_owned();
        let mut hashes = Vec::new();
        for run in ["a", "b"] {
            let out = tmp.path().join(format!("{stem}-{run}"));
            let status = Command::new(env!("CARGO_BIN_EXE_optomech"))
                .arg(config)
                .arg("--output-dir")
                .arg(&out)
                .arg("--quiet")
                .status()
                .map_err(|e| e.to_string())?;
            check(status.success(), || format!("{stem} exited with {status}"))?;
            hashes.push(csv_hashes(&out));
        }
        check(!hashes[0].is_empty() && hashes[0] == hashes[1], || format!("{stem} differs"))?;
        files += hashes[0].len();
    }
    Ok(format!("{} configs, {files} CSV files hash-identical", configs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("steady occupancy at g0 = 0", steady_occupancy),
        ("bistable window and hysteresis", bistability_structure),
        ("stability map against eigenvalues", stability_map_agrees),
        ("damping and spring curves", damping_and_spring),
        ("self-energy cross-identity", self_energy_identity),
        ("covariance dynamics", covariance_dynamics),
        ("cooling direction", cooling_direction),
        ("static potential wells", static_potential_wells),
        ("radiation force order", radiation_force_order),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
