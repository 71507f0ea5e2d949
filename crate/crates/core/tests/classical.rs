use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use vibro_core::classical::*;
use vibro_core::dsp::{WaveletFamily, WaveletSpec};

/// Solves the 3x3 (or smaller) normal equations by Gaussian elimination.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut out = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * out[k]).sum();
        out[row] = (b[row] - s) / a[row][row];
    }
    out
}

#[test]
fn savgol_kernel_matches_normal_equations() {
    let (window, order) = (5usize, 2usize);
    let offsets: Vec<f64> = (0..window).map(|i| i as f64 - 2.0).collect();
    // Kernel weight i is the fitted centre value when x = e_i.
    let mut kernel = Vec::new();
    for i in 0..window {
        let ata: Vec<Vec<f64>> = (0..=order)
            .map(|r| (0..=order).map(|c| offsets.iter().map(|z| z.powi((r + c) as i32)).sum()).collect())
            .collect();
        let atb: Vec<f64> = (0..=order).map(|r| offsets[i].powi(r as i32)).collect();
        kernel.push(solve(ata, atb)[0]);
    }
    let got = savgol_coefficients(window, order).unwrap();
    for (a, b) in got.iter().zip(&kernel) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }
}

#[test]
fn savgol_reproduces_quadratic() {
    let x: Vec<f64> = (0..40).map(|n| 2.0 * (n * n) as f64 - n as f64 + 3.0).collect();
    let y = savgol_denoise(&x, 7, 2).unwrap();
    for n in 3..37 {
        assert!((x[n] - y[n]).abs() <= 1e-10 * x[n].abs().max(1.0));
    }
}

#[test]
fn tv_two_point_matches_grid_search() {
    let x = [0.0, 2.0];
    let lambda = 0.5;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=300 {
        for j in 0..=300 {
            let y = [i as f64 * 0.01 - 0.5, j as f64 * 0.01];
            let obj = tv_objective(&y, &x, lambda);
            if obj < best.0 {
                best = (obj, y[0], y[1]);
            }
        }
    }
    let r = tv_denoise(&x, lambda, TV_MAX_ITER, 1e-12).unwrap();
    assert!((r.signal[0] - best.1).abs() < 1e-9 && (r.signal[1] - best.2).abs() < 1e-9);
    assert!((r.signal[0] - 0.5).abs() < 1e-9 && (r.signal[1] - 1.5).abs() < 1e-9);
}

#[test]
fn tv_collapses_to_best_constant() {
    let x = [0.1, 0.9, -0.3, 0.4, 1.1, 0.0, 0.6];
    let range = 1.1 - -0.3;
    let lambda = range * x.len() as f64;
    // Brute force over constant candidates: the optimum constant is the mean.
    let best_c = (0..=20_000)
        .map(|k| -0.3 + range * k as f64 / 20_000.0)
        .min_by(|a, b| tv_objective(&[*a; 7], &x, lambda).total_cmp(&tv_objective(&[*b; 7], &x, lambda)))
        .unwrap();
    let r = tv_denoise(&x, lambda, 100_000, 1e-13).unwrap();
    for v in &r.signal {
        assert!((v - best_c).abs() < 1e-4);
        assert!((v - x.iter().sum::<f64>() / 7.0).abs() < 1e-6);
    }
}

fn noisy_sine(seed: u64, n: usize, sigma: f64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, sigma).unwrap();
    let clean: Vec<f64> = (0..n).map(|i| (i as f64 * 0.07).sin() * (-(i as f64) / 300.0).exp()).collect();
    let noisy = clean.iter().map(|c| c + normal.sample(&mut rng)).collect();
    (clean, noisy)
}

fn mse(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / a.len() as f64
}

#[test]
fn shrinkage_lowers_error_on_sparse_signal() {
    // Piecewise-constant signal is sparse in db4 details.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let normal = Normal::new(0.0, 0.1).unwrap();
    let clean: Vec<f64> = (0..256).map(|i| if (i / 64) % 2 == 0 { 1.0 } else { -0.5 }).collect();
    let noisy: Vec<f64> = clean.iter().map(|c| c + normal.sample(&mut rng)).collect();
    let spec = WaveletSpec::new(WaveletFamily::Daubechies(4), 3);
    let y = wavelet_shrinkage_denoise(&noisy, &spec, ThresholdRule::Soft, Threshold::Universal).unwrap();
    assert!(mse(&y, &clean) < mse(&noisy, &clean));
}

#[test]
fn shrinkage_zero_threshold_round_trip() {
    let (_, noisy) = noisy_sine(3, 500, 0.1);
    let spec = WaveletSpec::new(WaveletFamily::Daubechies(4), 3);
    let y = wavelet_shrinkage_denoise(&noisy, &spec, ThresholdRule::Soft, Threshold::Fixed(0.0)).unwrap();
    assert!(noisy.iter().zip(&y).all(|(a, b)| (a - b).abs() <= 1e-8));
}

#[test]
fn tv_objective_trace_is_monotone_on_noisy_signal() {
    let (_, noisy) = noisy_sine(9, 500, 0.2);
    for lambda in [0.05, 0.2, 1.0] {
        let r = tv_denoise_traced(&noisy, lambda, TV_MAX_ITER, TV_TOL).unwrap();
        let start = tv_objective(&noisy, &noisy, lambda);
        assert!(r.objective_trace[0] <= start + 1e-12);
        for w in r.objective_trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "lambda {lambda}: {} -> {}", w[0], w[1]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn savgol_exact_on_low_degree(
        coeffs in prop::collection::vec(-2.0..2.0f64, 1..4),
        half in 2usize..8,
    ) {
        let window = 2 * half + 1;
        let order = coeffs.len() - 1;
        let n = 60;
        let x: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 / 10.0;
                coeffs.iter().enumerate().map(|(k, c)| c * t.powi(k as i32)).sum()
            })
            .collect();
        let y = savgol_denoise(&x, window, order.max(1)).unwrap();
        for i in half..n - half {
            prop_assert!((x[i] - y[i]).abs() <= 1e-10 * x[i].abs().max(1.0));
        }
    }

    #[test]
    fn tv_objective_monotone_and_tv_reduced(
        x in prop::collection::vec(-1.0..1.0f64, 2..120),
        lambda in 0.0..1.5f64,
    ) {
        let r = tv_denoise_traced(&x, lambda, 500, 1e-9).unwrap();
        let start = tv_objective(&x, &x, lambda);
        let mut prev = start;
        for &obj in &r.objective_trace {
            prop_assert!(obj <= prev + 1e-12, "{} -> {}", prev, obj);
            prev = obj;
        }
        prop_assert!(tv_objective(&r.signal, &x, lambda) <= start + 1e-12);
        prop_assert!(total_variation(&r.signal) <= total_variation(&x) + 1e-12);
    }

    #[test]
    fn tv_zero_weight_identity(x in prop::collection::vec(-5.0..5.0f64, 1..100)) {
        prop_assert_eq!(tv_denoise(&x, 0.0, 10, 1e-6).unwrap().signal, x);
    }

    #[test]
    fn wiener_zero_noise_identity(x in prop::collection::vec(-5.0..5.0f64, 1..100), half in 1usize..6) {
        prop_assert_eq!(wiener_denoise(&x, 2 * half + 1, Some(0.0)).unwrap(), x);
    }

    #[test]
    fn wiener_shrinks_toward_local_mean(
        x in prop::collection::vec(-5.0..5.0f64, 3..100),
        half in 1usize..6,
        nu2 in 0.0..3.0f64,
    ) {
        let window = 2 * half + 1;
        let y = wiener_denoise(&x, window, Some(nu2)).unwrap();
        let (means, _) = local_moments(&x, window);
        for i in 0..x.len() {
            prop_assert!((y[i] - means[i]).abs() <= (x[i] - means[i]).abs() + 1e-12);
        }
    }

    #[test]
    fn baselines_finite_and_deterministic(x in prop::collection::vec(-3.0..3.0f64, 64..160)) {
        for cfg in [
            BaselineConfig::savgol(),
            BaselineConfig::wiener(),
            BaselineConfig::tv(0.2),
            BaselineConfig::wavelet_shrinkage(),
        ] {
            let a = cfg.apply(&x).unwrap();
            let b = cfg.apply(&x).unwrap();
            prop_assert!(a.iter().all(|v| v.is_finite()));
            prop_assert_eq!(a, b);
        }
    }
}
