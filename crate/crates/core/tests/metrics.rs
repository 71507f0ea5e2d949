use proptest::prelude::*;
use vibro_core::metrics::*;

const Y: [f64; 4] = [1.0, -1.0, 1.0, -1.0];
const YHAT: [f64; 4] = [0.9, -0.9, 0.9, -0.9];

fn db(s: Score) -> f64 {
    s.finite().expect("finite score")
}

#[test]
fn hand_derived_triple() {
    // MSE = 0.01, MAX = 1, signal power 4 vs residual 0.04, abs error 0.4 over 4.
    let mse: f64 = Y.iter().zip(&YHAT).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / 4.0;
    assert!((db(psnr(&YHAT, &Y).unwrap()) - 10.0 * (1.0 / mse).log10()).abs() < 1e-12);
    assert!((db(psnr(&YHAT, &Y).unwrap()) - 20.0).abs() < 1e-12);
    assert!((db(snr(&YHAT, &Y).unwrap()) - 20.0).abs() < 1e-12);
    assert!((wmape(&YHAT, &Y).unwrap() - 10.0).abs() < 1e-12);
}

#[test]
fn perfect_estimate_is_sentinel() {
    assert_eq!(psnr(&Y, &Y).unwrap(), Score::Infinite);
    assert_eq!(snr(&Y, &Y).unwrap(), Score::Infinite);
    assert_eq!(wmape(&Y, &Y).unwrap(), 0.0);
}

#[test]
fn zero_estimate_gives_zero_db_snr() {
    assert_eq!(db(snr(&[0.0; 4], &Y).unwrap()), 0.0);
}

#[test]
fn zero_clean_signal_is_undefined() {
    assert!(snr(&[1.0, 0.0], &[0.0, 0.0]).is_err());
    assert!(wmape(&[1.0, 0.0], &[0.0, 0.0]).is_err());
    assert!(psnr(&[1.0], &[1.0, 2.0]).is_err());
}

#[test]
fn quantiles_of_symmetric_list() {
    let q = error_stats(&[-2.0, -1.0, 0.0, 1.0, 2.0], &[0.0; 5]).unwrap();
    assert_eq!((q.min, q.q1, q.median, q.q3, q.max), (-2.0, -1.0, 0.0, 1.0, 2.0));
    let single = error_stats(&[0.7], &[0.2]).unwrap();
    assert!([single.min, single.q1, single.median, single.q3, single.max].iter().all(|&v| v == 0.7 - 0.2));
    let zero = error_stats(&Y, &Y).unwrap();
    assert_eq!(zero.max - zero.min, 0.0);
}

#[test]
fn quantiles_interpolate_linearly() {
    // Type-7: h = (n - 1) q; for [1, 2, 3, 4], q1 -> h = 0.75 -> 1.75.
    let q = quantiles(&[4.0, 1.0, 3.0, 2.0]).unwrap();
    assert_eq!(q.q1, 1.75);
    assert_eq!(q.median, 2.5);
    assert_eq!(q.q3, 3.25);
}

#[test]
fn csv_header_and_rows() {
    let scores = [score_record(&YHAT, &Y).unwrap(), score_record(&Y, &Y).unwrap()];
    let report = EvalReport {
        rows: vec![
            EvalRow::aggregate("savgol", 0.1, &scores[..1], &[0.1, -0.1]).unwrap(),
            EvalRow::aggregate("noisy", 0.0, &scores[1..], &[0.0]).unwrap(),
        ],
    };
    let mut buf = Vec::new();
    report.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "method,sigma_eps,psnr_mean,psnr_std,snr_mean,snr_std,wmape_mean,wmape_std,n");
    assert!(lines[1].starts_with("savgol,0.1,"));
    assert!(lines[2].starts_with("noisy,0,inf,inf,inf,inf,0,0,1"));
    let json = serde_json::to_string(&report).unwrap();
    assert!(!json.contains("Infinity") && !json.contains("NaN"));
    assert_eq!(serde_json::from_str::<EvalReport>(&json).unwrap(), report);
}

fn pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..64).prop_flat_map(|n| {
        (prop::collection::vec(-3.0..3.0f64, n), prop::collection::vec(-0.5..0.5f64, n))
            .prop_map(|(y, e)| (y.iter().zip(&e).map(|(a, b)| a + b).collect(), y))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psnr_bounds_snr((yhat, y) in pair()) {
        prop_assume!(y.iter().any(|v| v.abs() > 1e-6) && yhat != y);
        let peak = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mean_sq = y.iter().map(|v| v * v).sum::<f64>() / y.len() as f64;
        prop_assert!(peak * peak >= mean_sq);
        prop_assert!(db(psnr(&yhat, &y).unwrap()) >= db(snr(&yhat, &y).unwrap()) - 1e-9);
    }

    #[test]
    fn scale_invariance((yhat, y) in pair(), k in 0.1..50.0f64) {
        prop_assume!(y.iter().any(|v| v.abs() > 1e-6) && yhat != y);
        let ys: Vec<f64> = y.iter().map(|v| v * k).collect();
        let hs: Vec<f64> = yhat.iter().map(|v| v * k).collect();
        prop_assert!((wmape(&hs, &ys).unwrap() - wmape(&yhat, &y).unwrap()).abs() < 1e-9);
        prop_assert!((db(psnr(&hs, &ys).unwrap()) - db(psnr(&yhat, &y).unwrap())).abs() < 1e-9);
    }

    #[test]
    fn permutation_invariance((yhat, y) in pair(), rot in 0usize..64) {
        prop_assume!(y.iter().any(|v| v.abs() > 1e-6) && yhat != y);
        let r = rot % y.len();
        let mut y2 = y.clone();
        let mut h2 = yhat.clone();
        y2.rotate_left(r);
        h2.rotate_left(r);
        y2.reverse();
        h2.reverse();
        prop_assert!((db(psnr(&h2, &y2).unwrap()) - db(psnr(&yhat, &y).unwrap())).abs() < 1e-9);
        prop_assert!((db(snr(&h2, &y2).unwrap()) - db(snr(&yhat, &y).unwrap())).abs() < 1e-9);
        prop_assert!((wmape(&h2, &y2).unwrap() - wmape(&yhat, &y).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn quantiles_are_ordered(v in prop::collection::vec(-10.0..10.0f64, 1..100)) {
        let q = quantiles(&v).unwrap();
        prop_assert!(q.min <= q.q1 && q.q1 <= q.median && q.median <= q.q3 && q.q3 <= q.max);
    }
}
