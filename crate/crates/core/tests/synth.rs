use std::fs;

use proptest::prelude::*;
use vibro_core::synth::*;
use vibro_core::VibroError;

fn sdof_exact(t: f64, omega_n: f64, zeta: f64) -> f64 {
    let omega_d = omega_n * (1.0 - zeta * zeta).sqrt();
    (-zeta * omega_n * t).exp() * (omega_d * t).sin() / omega_d
}

fn sdof_max_error(grid: &TimeGrid) -> (f64, f64) {
    // m = 1, c = 0.2, k = 100  =>  ω_n = 10, ζ = 0.01
    let mode = Mode { omega: 10.0, damping: 0.2, gain: 1.0 };
    let w = integrate_response(&[mode], &[Impulse { time: 0.0, amplitude: 1.0 }], grid).unwrap();
    let mut err: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for (n, x) in w.iter().enumerate() {
        let exact = sdof_exact(n as f64 * grid.sample_interval, 10.0, 0.01);
        err = err.max((x - exact).abs());
        peak = peak.max(exact.abs());
    }
    (err, peak)
}

#[test]
fn sdof_impulse_response_matches_closed_form() {
    let (err, peak) = sdof_max_error(&TimeGrid::new(500, 0.005));
    assert!(err / peak <= 1e-4, "relative error {}", err / peak);
}

#[test]
fn rk4_is_fourth_order() {
    let coarse = TimeGrid { samples: 100, sample_interval: 0.05, substeps: 1 };
    let fine = TimeGrid { substeps: 2, ..coarse };
    let ratio = sdof_max_error(&coarse).0 / sdof_max_error(&fine).0;
    assert!((8.0..=32.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn undamped_energy_is_conserved() {
    let mode = Mode { omega: 12.0, damping: 0.0, gain: 1.0 };
    let grid = TimeGrid::new(500, 0.005);
    let states = simulate_mode(&mode, &[Impulse { time: 0.0, amplitude: 1.0 }], &grid, 0).unwrap();
    let energy = |(q, v): (f64, f64)| 0.5 * v * v + 0.5 * mode.omega * mode.omega * q * q;
    let e0 = energy(states[0]);
    assert!((e0 - 0.5).abs() < 1e-12);
    for s in states {
        assert!(((energy(s) - e0) / e0).abs() < 1e-6);
    }
}

#[test]
fn damped_response_decays() {
    let scenario = PlateScenario {
        flexural_rigidity: 300.0,
        membrane_tension: 100.0,
        areal_density: 50.0,
        damping: 60.0,
        impulse_times: vec![0.01, 0.1],
        impulse_amplitudes: vec![1.0, 0.7],
        mode_count: 4,
        modal_wavenumbers: ScenarioDistribution::default().wavenumbers(),
    };
    let grid = TimeGrid::new(500, 0.005);
    let w = scenario_response(&scenario, &grid).unwrap();
    let head = w[..50].iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let tail = w[450..].iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    assert!(tail < head, "tail {tail} head {head}");
}

fn small_config(seed: u64) -> DatasetConfig {
    DatasetConfig { record_count: 10, series_length: 500, channel_count: 2, seed, ..Default::default() }
}

#[test]
fn generation_is_byte_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    generate_dataset(&small_config(7), a.path()).unwrap();
    generate_dataset(&small_config(7), b.path()).unwrap();
    let pa = fs::read(a.path().join("dataset.vibd")).unwrap();
    let pb = fs::read(b.path().join("dataset.vibd")).unwrap();
    assert_eq!(pa, pb);
    assert_eq!(pa.len(), 24 + 10 * (12 + 4 * 500 * 3));
    let c = tempfile::tempdir().unwrap();
    generate_dataset(&small_config(8), c.path()).unwrap();
    assert_ne!(pa, fs::read(c.path().join("dataset.vibd")).unwrap());
}

#[test]
fn round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(7);
    let manifest = generate_dataset(&cfg, dir.path()).unwrap();
    assert_eq!(manifest.record_count, 10);
    let reader = load_dataset(&dir.path().join("dataset.vibd")).unwrap();
    assert_eq!(reader.manifest(), &manifest);
    for (i, loaded) in reader.enumerate() {
        let loaded = loaded.unwrap();
        let fresh = synthesize_record(&cfg, i).unwrap();
        assert_eq!(loaded.clean, fresh.clean);
        assert_eq!(loaded.noisy, fresh.noisy);
        assert_eq!(loaded.seed, fresh.seed);
        assert_eq!(loaded.sigma_eps, fresh.sigma_eps);
    }
}

#[test]
fn truncated_payload_yields_nothing() {
    let dir = tempfile::tempdir().unwrap();
    generate_dataset(&small_config(1), dir.path()).unwrap();
    let path = dir.path().join("dataset.vibd");
    let mut bytes = fs::read(&path).unwrap();
    bytes.pop();
    fs::write(&path, bytes).unwrap();
    match load_dataset(&path) {
        Err(VibroError::Truncated { expected, found }) => assert_eq!(expected, found + 1),
        Err(e) => panic!("wrong error {e}"),
        Ok(_) => panic!("truncated payload accepted"),
    }
}

#[test]
fn version_bump_names_both_versions() {
    let dir = tempfile::tempdir().unwrap();
    generate_dataset(&small_config(1), dir.path()).unwrap();
    let path = dir.path().join("dataset.vibd");
    let mut bytes = fs::read(&path).unwrap();
    bytes[4..8].copy_from_slice(&2u32.to_le_bytes());
    fs::write(&path, bytes).unwrap();
    let err = load_dataset(&path).err().expect("version bump accepted");
    assert!(matches!(err, VibroError::VersionMismatch { found: 2, supported: 1 }));
    let msg = err.to_string();
    assert!(msg.contains('2') && msg.contains('1'), "{msg}");
}

#[test]
fn bad_magic_and_count_mismatch_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    generate_dataset(&small_config(1), dir.path()).unwrap();
    let path = dir.path().join("dataset.vibd");
    let original = fs::read(&path).unwrap();

    let mut bytes = original.clone();
    bytes[0] = b'X';
    fs::write(&path, &bytes).unwrap();
    assert!(matches!(load_dataset(&path), Err(VibroError::BadMagic { .. })));

    fs::write(&path, &original).unwrap();
    let mpath = manifest_path(&path);
    let mut manifest: DatasetManifest = serde_json::from_str(&fs::read_to_string(&mpath).unwrap()).unwrap();
    manifest.record_count = 11;
    fs::write(&mpath, serde_json::to_string(&manifest).unwrap()).unwrap();
    assert!(matches!(load_dataset(&path), Err(VibroError::ManifestMismatch(_))));
}

fn random_scenario() -> impl Strategy<Value = PlateScenario> {
    (
        100.0..500.0f64,
        0.0..200.0f64,
        20.0..80.0f64,
        0.0..60.0f64,
        prop::collection::vec((0.0..2.4f64, 0.2..2.0f64), 1..4),
    )
        .prop_map(|(d, t, rho, k, mut imp)| {
            imp.sort_by(|a, b| a.0.total_cmp(&b.0));
            imp.dedup_by(|a, b| a.0 == b.0);
            PlateScenario {
                flexural_rigidity: d,
                membrane_tension: t,
                areal_density: rho,
                damping: k,
                impulse_times: imp.iter().map(|p| p.0).collect(),
                impulse_amplitudes: imp.iter().map(|p| p.1).collect(),
                mode_count: 4,
                modal_wavenumbers: ScenarioDistribution::default().wavenumbers(),
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn superposition_is_linear(a in random_scenario(), b in random_scenario()) {
        let grid = TimeGrid::new(500, 0.005);
        let wa = scenario_response(&a, &grid).unwrap();
        let wb = scenario_response(&b, &grid).unwrap();
        // Merge both impulse trains on one set of modes per scenario.
        let mut both = integrate_response(&modal_reduction(&a).unwrap(), &scenario_impulses(&a), &grid).unwrap();
        let other = integrate_response(&modal_reduction(&b).unwrap(), &scenario_impulses(&b), &grid).unwrap();
        for (x, y) in both.iter_mut().zip(other) { *x += y; }
        for i in 0..500 {
            prop_assert!((both[i] - (wa[i] + wb[i])).abs() <= 1e-9);
        }
        // Two impulse trains on the same plate superpose too.
        let mut merged = a.clone();
        let mut imps: Vec<(f64, f64)> = a.impulse_times.iter().copied().zip(a.impulse_amplitudes.iter().copied())
            .chain(b.impulse_times.iter().copied().zip(b.impulse_amplitudes.iter().copied())).collect();
        imps.sort_by(|x, y| x.0.total_cmp(&y.0));
        imps.dedup_by(|x, y| x.0 == y.0);
        prop_assume!(imps.len() == a.impulse_times.len() + b.impulse_times.len());
        merged.impulse_times = imps.iter().map(|p| p.0).collect();
        merged.impulse_amplitudes = imps.iter().map(|p| p.1).collect();
        let mut b_on_a = a.clone();
        b_on_a.impulse_times = b.impulse_times.clone();
        b_on_a.impulse_amplitudes = b.impulse_amplitudes.clone();
        let wm = scenario_response(&merged, &grid).unwrap();
        let w1 = scenario_response(&b_on_a, &grid).unwrap();
        for i in 0..500 {
            prop_assert!((wm[i] - (wa[i] + w1[i])).abs() <= 1e-9, "i={} {} vs {}", i, wm[i], wa[i] + w1[i]);
        }
    }
}
