//! Routh-Hurwitz verdicts against eigenvalues.

use nalgebra::{Matrix2, Matrix4};
use optomech_core::classical::{routh_hurwitz_stable, stability_map};
use optomech_core::quantum::DriftMatrix;
use optomech_core::{Error, Stability, SystemParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spectral_abscissa(a: &Matrix4<f64>) -> f64 {
    a.complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn real_part(rng: &mut ChaCha8Rng) -> f64 {
    let magnitude = 10f64.powf(rng.gen_range(-3.0..0.5));
    if rng.gen_bool(0.5) {
        magnitude
    } else {
        -magnitude
    }
}

/// Random matrix `S J S^-1` whose real Jordan form `J` has a prescribed spectrum.
fn placed_matrix(rng: &mut ChaCha8Rng) -> (Matrix4<f64>, f64) {
    let mut j = Matrix4::<f64>::zeros();
    let mut max_re = f64::NEG_INFINITY;
    let mut block = 0;
    while block < 4 {
        let re = real_part(rng);
        max_re = max_re.max(re);
        if block < 3 && rng.gen_bool(0.5) {
            let im = rng.gen_range(0.05..3.0);
            j.fixed_view_mut::<2, 2>(block, block)
                .copy_from(&Matrix2::new(re, im, -im, re));
            block += 2;
        } else {
            j[(block, block)] = re;
            block += 1;
        }
    }
    let s = Matrix4::<f64>::identity() + Matrix4::from_fn(|_, _| rng.gen_range(-0.4..0.4));
    let s_inv = s.try_inverse().expect("near-identity similarity is invertible");
    (s * j * s_inv, max_re)
}

#[test]
fn ten_thousand_random_spectra() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for _ in 0..10_000 {
        let (a, max_re) = placed_matrix(&mut rng);
        let oracle = spectral_abscissa(&a);
        assert!((oracle - max_re).abs() < 1e-6 * max_re.abs().max(1.0));
        if oracle.abs() <= 1e-8 {
            continue;
        }
        let verdict = routh_hurwitz_stable(&a).unwrap_or_else(|e| panic!("{e} for {a}"));
        assert_eq!(verdict, oracle < 0.0, "abscissa {oracle} for {a}");
        checked += 1;
    }
    assert!(checked > 9_900);
}

#[test]
fn drift_matrices_on_the_detuning_axis() {
    // Sweep the linearized system across both sidebands at strong coupling.
    for i in 0..=400 {
        let delta = -2.0 + 4.0 * i as f64 / 400.0;
        let a = DriftMatrix::new(0.15, 0.005, 1.0, delta, 0.04.into());
        let oracle = spectral_abscissa(a.matrix());
        match routh_hurwitz_stable(a.matrix()) {
            Ok(v) => assert_eq!(v, oracle < 0.0, "Delta = {delta}"),
            Err(Error::Marginal { .. }) => assert!(oracle.abs() < 1e-6, "Delta = {delta}"),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn empty_cavity_column_is_stable() {
    let params = SystemParams::dimensionless(0.15, 0.005, 0.005, 0.0, 5.0);
    let detunings: Vec<f64> = (0..41).map(|i| -2.0 + 0.1 * i as f64).collect();
    let map = stability_map(&params, &detunings, &[0.0, 2.5, 5.0]).unwrap();
    for i in 0..detunings.len() {
        assert_eq!(map.cell(0, i).occupied_stability(), Stability::Stable);
    }
}

#[test]
fn uncoupled_stability_ignores_drive() {
    let params = SystemParams::dimensionless(0.15, 0.005, 0.0, 0.0, 5.0);
    let detunings: Vec<f64> = (0..21).map(|i| -1.0 + 0.1 * i as f64).collect();
    let drives: Vec<f64> = (0..11).map(|i| i as f64 * 0.5).collect();
    let map = stability_map(&params, &detunings, &drives).unwrap();
    for i in 0..detunings.len() {
        let first = map.cell(0, i).occupied_stability();
        for k in 0..drives.len() {
            assert_eq!(map.cell(k, i).occupied_stability(), first);
        }
    }
}
