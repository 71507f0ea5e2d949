use vibro_core::bench::*;
use vibro_core::classical::BaselineConfig;
use vibro_core::metrics::{psnr, Score};
use vibro_core::neural::LossWeights;
use vibro_core::synth::read_all;
use vibro_core::VibroError;

fn tiny(dir: &std::path::Path) -> ExperimentConfig {
    let mut cfg: ExperimentConfig = serde_json::from_value(serde_json::json!({
        "dataset": {"record_count": 30, "series_length": 64},
        "noise_grid": [0.0, 0.1],
        "model": {"series_length": 64, "lstm_hidden_size": 4, "fc_widths": [16, 8]},
        "train": {"batch_size": 8, "max_iterations": 6, "validation_interval": 3},
        "tuning_records": 5
    }))
    .unwrap();
    cfg.output_dir = dir.to_path_buf();
    cfg.set_seed(11);
    cfg
}

#[test]
fn method_tags_parse() {
    assert_eq!(DenoiseMethod::parse("ensemble", None).unwrap(), DenoiseMethod::Ensemble);
    assert_eq!(
        DenoiseMethod::parse("tv", Some(r#"{"weight": 0.0}"#)).unwrap(),
        DenoiseMethod::Baseline(BaselineConfig::tv(0.0))
    );
    assert_eq!(
        DenoiseMethod::parse("savgol", Some(r#"{"window": 9, "polyorder": 2}"#)).unwrap(),
        DenoiseMethod::Baseline(BaselineConfig::Savgol { window: 9, polyorder: 2 })
    );
    for tag in METHODS.iter().skip(1) {
        assert!(matches!(DenoiseMethod::parse(tag, None).unwrap(), DenoiseMethod::Baseline(b) if b.method() == *tag));
    }
    match DenoiseMethod::parse("median", None) {
        Err(VibroError::UnknownMethod { valid, .. }) => assert_eq!(valid, METHODS.join(", ")),
        other => panic!("{other:?}"),
    }
    assert!(DenoiseMethod::parse("savgol", Some(r#"{"window": 4, "polyorder": 2}"#)).unwrap_err().is_validation());
    assert!(DenoiseMethod::parse("tv", Some("[1]")).unwrap_err().is_validation());
    assert!(DenoiseMethod::parse("ensemble", Some("{}")).is_err());
}

#[test]
fn eval_noise_is_keyed_by_level_and_record() {
    let clean: Vec<f64> = (0..50).map(|i| (i as f64 * 0.3).sin()).collect();
    let a = eval_noisy(&clean, 0.1, 2, 4, 7).unwrap();
    assert_eq!(a, eval_noisy(&clean, 0.1, 2, 4, 7).unwrap());
    assert_ne!(a, eval_noisy(&clean, 0.1, 2, 4, 8).unwrap());
    assert_ne!(a[0], a[1]);
    assert_eq!(eval_noisy(&clean, 0.0, 2, 4, 7).unwrap(), vec![clean.clone(), clean]);
}

#[test]
fn empty_weight_grid_trains_once_with_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = tiny(dir.path());
    cmd_generate(&cfg).unwrap();
    let summary = cmd_train(&cfg, &cfg.dataset_file()).unwrap();
    assert_eq!(summary.runs.len(), 1);
    assert_eq!(summary.runs[0].weights, LossWeights::default());
    assert!(summary.checkpoint.exists());
}

#[test]
fn baselines_are_tuned_on_validation_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = tiny(dir.path());
    cmd_generate(&cfg).unwrap();
    cmd_train(&cfg, &cfg.dataset_file()).unwrap();
    let out = cmd_compare(&cfg, &cfg.dataset_file(), &cfg.checkpoint_file()).unwrap();
    assert_eq!(out.report.rows.len(), 10);
    assert_eq!(out.report.methods(), METHODS.to_vec());

    let (_, records) = read_all(&cfg.dataset_file()).unwrap();
    let splits = split_indices(records.len(), cfg.split_ratios, cfg.seed).unwrap();
    let tuning_ids = &splits.validation[..5];
    for entry in out.tuning.iter().filter(|e| e.method == "tv") {
        let grid = &cfg.baselines.tv;
        for (b, got) in grid.iter().zip(&entry.candidate_psnr) {
            let mut sum = 0.0;
            for &i in tuning_ids {
                let noisy = eval_noisy(&records[i].clean, entry.sigma_eps, 2, cfg.seed, i as u64).unwrap();
                sum += psnr(&b.apply(&noisy[0]).unwrap(), &records[i].clean).unwrap().finite().unwrap();
            }
            let want = sum / tuning_ids.len() as f64;
            match got {
                Score::Finite(v) => assert!((v - want).abs() < 1e-9, "{v} vs {want}"),
                Score::Infinite => panic!("tv never reproduces the clean signal exactly"),
            }
        }
        let best = entry.candidate_psnr.iter().filter_map(|s| s.finite()).fold(f64::MIN, f64::max);
        assert_eq!(entry.validation_psnr.finite(), Some(best));
    }
}
