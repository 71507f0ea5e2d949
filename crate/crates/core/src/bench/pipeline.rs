use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::ExperimentConfig;
use super::split::{split_indices, Splits};
use crate::classical::BaselineConfig;
use crate::dsp::{build_feature_bundle, FeatureBundle, WaveletChannelConfig};
use crate::error::{Result, VibroError};
use crate::metrics::{score_record, EvalReport, EvalRow, RecordScores, Score};
use crate::neural::{load_checkpoint, predict, save_checkpoint, train, LossWeights, ModelConfig, ModelParams, TrainingSet};
use crate::seeding::{child_rng, stream};
use crate::synth::{generate_dataset, inject_noise, read_all, DatasetManifest, DatasetWriter, SignalRecord};

/// Method tags in report order.
pub const METHODS: [&str; 5] = ["ensemble", "tv", "wiener", "savgol", "wavelet_shrinkage"];

/// Records per prediction block, bounding feature memory.
const PREDICT_BLOCK: usize = 256;

pub fn file_sha256(path: &Path) -> Result<String> {
    let mut f = std::fs::File::open(path).map_err(|e| VibroError::io(path, e))?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = f.read(&mut buf).map_err(|e| VibroError::io(path, e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| VibroError::io(dir, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|e| VibroError::io(path, e))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerateSummary {
    pub manifest: DatasetManifest,
    pub path: PathBuf,
    pub sha256: String,
}

pub fn cmd_generate(cfg: &ExperimentConfig) -> Result<GenerateSummary> {
    cfg.validate()?;
    create_dir(&cfg.output_dir)?;
    let manifest = generate_dataset(&cfg.dataset, &cfg.output_dir)?;
    let path = cfg.output_dir.join("dataset.vibd");
    let sha256 = file_sha256(&path)?;
    log::info!("generated {} -> {} (sha256 {sha256})", manifest.shape, path.display());
    Ok(GenerateSummary { manifest, path, sha256 })
}

fn load_records(path: &Path, model: &ModelConfig) -> Result<Vec<SignalRecord>> {
    let (manifest, records) = read_all(path)?;
    if manifest.series_length as usize != model.series_length || manifest.channel_count as usize != model.channel_count {
        return Err(VibroError::Shape(format!(
            "dataset is {}x{} but the model expects {}x{}",
            manifest.channel_count, manifest.series_length, model.channel_count, model.series_length
        )));
    }
    Ok(records)
}

fn subset(records: &[SignalRecord], idx: &[usize]) -> (Vec<SignalRecord>, Vec<u64>) {
    (idx.iter().map(|&i| records[i].clone()).collect(), idx.iter().map(|&i| i as u64).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub index: usize,
    pub weights: LossWeights,
    pub best_validation: f64,
    pub best_iteration: usize,
    pub iterations_run: usize,
    pub stopped_early: bool,
    pub history: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainSummary {
    pub runs: Vec<RunSummary>,
    pub selected: usize,
    pub checkpoint: PathBuf,
}

fn write_history(path: &Path, hist: &crate::neural::TrainHistory) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["iteration", "total", "data", "lstm_reg", "cnn_reg", "nn_reg", "pair", "validation"])?;
    for l in &hist.iterations {
        let t = &l.train;
        w.write_record([
            l.iteration.to_string(),
            t.total.to_string(),
            t.data.to_string(),
            t.lstm_reg.to_string(),
            t.cnn_reg.to_string(),
            t.nn_reg.to_string(),
            t.pair.to_string(),
            l.validation.map(|v| v.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| VibroError::io(path, e))
}

/// Trains one model per loss-weight combination and keeps the one with the
/// lowest validation loss.
pub fn cmd_train(cfg: &ExperimentConfig, data: &Path) -> Result<TrainSummary> {
    cfg.validate()?;
    create_dir(&cfg.output_dir)?;
    let records = load_records(data, &cfg.model)?;
    let splits = split_indices(records.len(), cfg.split_ratios, cfg.seed)?;
    let (tr, tr_ids) = subset(&records, &splits.train);
    let (va, va_ids) = subset(&records, &splits.validation);
    drop(records);
    let train_set = TrainingSet::from_records(&tr, &tr_ids, &cfg.features)?;
    let val_set = TrainingSet::from_records(&va, &va_ids, &cfg.features)?;
    drop((tr, va));

    let mut runs = Vec::new();
    let mut best: Option<(f64, ModelParams)> = None;
    let mut selected = 0;
    for (k, weights) in cfg.weight_grid().into_iter().enumerate() {
        let (params, hist) = train(&train_set, &val_set, &cfg.model, &cfg.train, &weights)?;
        let history = cfg.output_dir.join(format!("history_{k}.csv"));
        write_history(&history, &hist)?;
        log::info!("weights {k} {weights:?}: best validation {} at iteration {}", hist.best_validation, hist.best_iteration);
        if best.as_ref().map_or(true, |(v, _)| hist.best_validation < *v) {
            best = Some((hist.best_validation, params));
            selected = k;
        }
        runs.push(RunSummary {
            index: k,
            weights,
            best_validation: hist.best_validation,
            best_iteration: hist.best_iteration,
            iterations_run: hist.iterations.len(),
            stopped_early: hist.stopped_early,
            history,
        });
    }
    let (_, params) = best.expect("weight grid is never empty");
    let run = &runs[selected];
    let checkpoint = cfg.checkpoint_file();
    let metrics = serde_json::json!({
        "features": cfg.features,
        "loss_weights": run.weights,
        "best_validation": run.best_validation,
        "grid_index": selected,
    });
    save_checkpoint(&checkpoint, &params, cfg.train.seed, run.best_iteration, metrics)?;
    log::info!("selected weights {selected} (validation {})", run.best_validation);
    let summary = TrainSummary { runs, selected, checkpoint };
    write_json(&cfg.output_dir.join("selection.json"), &summary)?;
    Ok(summary)
}

/// Either the trained ensemble or one configured baseline.
#[derive(Debug, Clone, PartialEq)]
pub enum DenoiseMethod {
    Ensemble,
    Baseline(BaselineConfig),
}

impl DenoiseMethod {
    /// Parses a method tag. Baseline parameters come from `params` (a JSON
    /// object without the `method` key) or fall back to the defaults.
    pub fn parse(tag: &str, params: Option<&str>) -> Result<Self> {
        if !METHODS.contains(&tag) {
            return Err(VibroError::UnknownMethod { given: tag.to_string(), valid: METHODS.join(", ") });
        }
        if tag == "ensemble" {
            return match params {
                None => Ok(DenoiseMethod::Ensemble),
                Some(_) => Err(VibroError::InvalidArgument("the ensemble takes no parameters".into())),
            };
        }
        let cfg = match params {
            Some(text) => {
                let mut obj: serde_json::Map<String, serde_json::Value> = serde_json::from_str(text)
                    .map_err(|e| VibroError::config("params", format!("expected a JSON object: {e}")))?;
                obj.insert("method".into(), tag.into());
                serde_json::from_value(obj.into()).map_err(|e| VibroError::config("params", e.to_string()))?
            }
            None => match tag {
                "tv" => BaselineConfig::tv(0.2),
                "wiener" => BaselineConfig::wiener(),
                "savgol" => BaselineConfig::savgol(),
                _ => BaselineConfig::wavelet_shrinkage(),
            },
        };
        cfg.validate()?;
        Ok(DenoiseMethod::Baseline(cfg))
    }
}

fn checkpoint_features(metrics: &serde_json::Value) -> Result<WaveletChannelConfig> {
    match metrics.get("features") {
        Some(v) => Ok(serde_json::from_value(v.clone())?),
        None => Ok(WaveletChannelConfig::default()),
    }
}

fn bundles_of(noisy: &[Vec<f64>], features: &WaveletChannelConfig) -> Result<Vec<FeatureBundle>> {
    noisy.iter().map(|ch| build_feature_bundle(ch, features)).collect()
}

/// Ensemble estimates for a list of noisy observations.
fn ensemble_estimates(
    params: &ModelParams,
    features: &WaveletChannelConfig,
    noisy: &[Vec<Vec<f64>>],
    chunk: usize,
) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(noisy.len());
    for block in noisy.chunks(PREDICT_BLOCK) {
        let bundles = block.par_iter().map(|n| bundles_of(n, features)).collect::<Result<Vec<_>>>()?;
        let recs: Vec<&[FeatureBundle]> = bundles.iter().map(Vec::as_slice).collect();
        out.extend(predict(params, &recs, chunk)?);
    }
    Ok(out)
}

/// Writes the dataset with each clean slot replaced by the estimate.
pub fn cmd_denoise(data: &Path, method: &DenoiseMethod, checkpoint: Option<&Path>, out: &Path) -> Result<PathBuf> {
    let (manifest, records) = read_all(data)?;
    let estimates = match method {
        DenoiseMethod::Ensemble => {
            let path = checkpoint.ok_or_else(|| VibroError::InvalidArgument("ensemble needs a checkpoint".into()))?;
            let (params, header) = load_checkpoint(path, None)?;
            let cfg = &params.config;
            if cfg.series_length != manifest.series_length as usize || cfg.channel_count != manifest.channel_count as usize {
                return Err(VibroError::Shape(format!(
                    "checkpoint expects {}x{}, dataset is {}x{}",
                    cfg.channel_count, cfg.series_length, manifest.channel_count, manifest.series_length
                )));
            }
            let noisy: Vec<Vec<Vec<f64>>> = records.iter().map(|r| r.noisy.clone()).collect();
            ensemble_estimates(&params, &checkpoint_features(&header.metrics)?, &noisy, 16)?
        }
        DenoiseMethod::Baseline(b) => records.par_iter().map(|r| b.apply(&r.noisy[0])).collect::<Result<Vec<_>>>()?,
    };
    let mut writer = DatasetWriter::create(
        out,
        manifest.record_count,
        manifest.series_length as usize,
        manifest.channel_count as usize,
    )?;
    for (r, y) in records.into_iter().zip(estimates) {
        writer.write_record(&SignalRecord { clean: y, ..r })?;
    }
    writer.finish(&DatasetManifest::new(manifest.record_count, manifest.series_length, manifest.channel_count, None))?;
    Ok(out.to_path_buf())
}

/// Noisy observations of a fixed clean signal at one evaluation level.
pub fn eval_noisy(clean: &[f64], sigma: f64, channels: usize, seed: u64, record: u64) -> Result<Vec<Vec<f64>>> {
    let mut rng = child_rng(seed, &[stream::EVAL_NOISE, sigma.to_bits(), record]);
    inject_noise(clean, sigma, channels, &mut rng)
}

/// Mean score; the sentinel dominates.
fn mean_score(scores: &[Score]) -> Score {
    let mut sum = 0.0;
    for s in scores {
        match s {
            Score::Finite(v) => sum += v,
            Score::Infinite => return Score::Infinite,
        }
    }
    Score::Finite(sum / scores.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningEntry {
    pub sigma_eps: f64,
    pub method: String,
    pub selected: BaselineConfig,
    /// Mean validation PSNR of the selected configuration.
    pub validation_psnr: Score,
    /// Mean validation PSNR of every candidate, in grid order.
    pub candidate_psnr: Vec<Score>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareOutput {
    pub report: EvalReport,
    pub tuning: Vec<TuningEntry>,
}

struct EvalSet {
    ids: Vec<u64>,
    clean: Vec<Vec<f64>>,
    noisy: Vec<Vec<Vec<f64>>>,
}

fn eval_set(records: &[SignalRecord], idx: &[usize], sigma: f64, cfg: &ExperimentConfig) -> Result<EvalSet> {
    let channels = cfg.model.channel_count;
    let noisy = idx
        .par_iter()
        .map(|&i| eval_noisy(&records[i].clean, sigma, channels, cfg.seed, i as u64))
        .collect::<Result<Vec<_>>>()?;
    Ok(EvalSet {
        ids: idx.iter().map(|&i| i as u64).collect(),
        clean: idx.iter().map(|&i| records[i].clean.clone()).collect(),
        noisy,
    })
}

/// Picks the grid entry with the highest mean validation PSNR; ties keep
/// the earlier entry.
fn tune(method: &str, grid: &[BaselineConfig], set: &EvalSet, sigma: f64) -> Result<TuningEntry> {
    let mut candidate_psnr = Vec::with_capacity(grid.len());
    for b in grid {
        let scores = set
            .noisy
            .par_iter()
            .zip(&set.clean)
            .map(|(n, c)| crate::metrics::psnr(&b.apply(&n[0])?, c))
            .collect::<Result<Vec<_>>>()?;
        candidate_psnr.push(mean_score(&scores));
    }
    let mut best = 0;
    for (i, s) in candidate_psnr.iter().enumerate().skip(1) {
        if s.exceeds(candidate_psnr[best], 0.0) {
            best = i;
        }
    }
    Ok(TuningEntry {
        sigma_eps: sigma,
        method: method.to_string(),
        selected: grid[best].clone(),
        validation_psnr: candidate_psnr[best],
        candidate_psnr,
    })
}

struct ScatterRow {
    sigma: f64,
    record: u64,
    method: &'static str,
    noisy: RecordScores,
    denoised: RecordScores,
}

/// Evaluates the ensemble and the validation-tuned baselines on the test
/// split at every noise level, and writes `report.{csv,json}`,
/// `scatter.csv` and `tuning.json` to the output directory.
pub fn cmd_compare(cfg: &ExperimentConfig, data: &Path, checkpoint: &Path) -> Result<CompareOutput> {
    cfg.validate()?;
    create_dir(&cfg.output_dir)?;
    let records = load_records(data, &cfg.model)?;
    let (params, header) = load_checkpoint(checkpoint, Some(&cfg.model))?;
    let features = checkpoint_features(&header.metrics)?;
    let Splits { validation, test, .. } = split_indices(records.len(), cfg.split_ratios, cfg.seed)?;
    let tuning_idx = &validation[..cfg.tuning_records.unwrap_or(validation.len()).min(validation.len())];

    let mut rows = Vec::new();
    let mut tuning = Vec::new();
    let mut scatter = Vec::new();
    for &sigma in &cfg.noise_grid {
        let val = eval_set(&records, tuning_idx, sigma, cfg)?;
        let picked = cfg
            .baselines
            .methods()
            .iter()
            .map(|(name, grid)| tune(name, grid, &val, sigma))
            .collect::<Result<Vec<_>>>()?;
        drop(val);

        let set = eval_set(&records, &test, sigma, cfg)?;
        let noisy_scores =
            set.noisy.iter().zip(&set.clean).map(|(n, c)| score_record(&n[0], c)).collect::<Result<Vec<_>>>()?;
        let ensemble = ensemble_estimates(&params, &features, &set.noisy, cfg.train.chunk_size)?;
        for method in METHODS {
            let estimates = match method {
                "ensemble" => ensemble.clone(),
                _ => {
                    let b = &picked.iter().find(|t| t.method == method).expect("every baseline is tuned").selected;
                    set.noisy.par_iter().map(|n| b.apply(&n[0])).collect::<Result<Vec<_>>>()?
                }
            };
            let scores =
                estimates.iter().zip(&set.clean).map(|(y, c)| score_record(y, c)).collect::<Result<Vec<_>>>()?;
            let errors: Vec<f64> =
                estimates.iter().zip(&set.clean).flat_map(|(y, c)| y.iter().zip(c).map(|(a, b)| a - b)).collect();
            rows.push(EvalRow::aggregate(method, sigma, &scores, &errors)?);
            for ((id, noisy), denoised) in set.ids.iter().zip(&noisy_scores).zip(scores) {
                scatter.push(ScatterRow { sigma, record: *id, method, noisy: *noisy, denoised });
            }
        }
        let row = |m: &str| rows.iter().rev().find(|r: &&EvalRow| r.method == m).map(|r| r.psnr_mean);
        log::info!(
            "sigma {sigma}: ensemble {} dB, tv {} dB, wiener {} dB, savgol {} dB, shrinkage {} dB",
            row("ensemble").unwrap(),
            row("tv").unwrap(),
            row("wiener").unwrap(),
            row("savgol").unwrap(),
            row("wavelet_shrinkage").unwrap()
        );
        tuning.extend(picked);
    }

    let report = EvalReport { rows };
    report.save(&cfg.output_dir.join("report.csv"), &cfg.output_dir.join("report.json"))?;
    write_scatter(&cfg.output_dir.join("scatter.csv"), &scatter)?;
    write_json(&cfg.output_dir.join("tuning.json"), &tuning)?;
    Ok(CompareOutput { report, tuning })
}

fn write_scatter(path: &Path, rows: &[ScatterRow]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| VibroError::io(path, e))?;
    let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
    w.write_record(["sigma_eps", "record", "method", "noisy_psnr", "noisy_snr", "noisy_wmape", "psnr", "snr", "wmape"])?;
    for r in rows {
        w.write_record([
            r.sigma.to_string(),
            r.record.to_string(),
            r.method.to_string(),
            r.noisy.psnr.to_string(),
            r.noisy.snr.to_string(),
            r.noisy.wmape.to_string(),
            r.denoised.psnr.to_string(),
            r.denoised.snr.to_string(),
            r.denoised.wmape.to_string(),
        ])?;
    }
    let mut inner = w.into_inner().map_err(|e| VibroError::io(path, e.into_error()))?;
    inner.flush().map_err(|e| VibroError::io(path, e))
}
