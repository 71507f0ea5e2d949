use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classical::BaselineGrids;
use crate::dsp::WaveletChannelConfig;
use crate::error::{Result, VibroError};
use crate::neural::{LossWeights, ModelConfig, TrainConfig};
use crate::synth::DatasetConfig;

/// Noise levels 0, 0.025, ..., 0.2.
pub fn default_noise_grid() -> Vec<f64> {
    (0..=8).map(|i| i as f64 / 40.0).collect()
}

/// Everything one experiment needs. The global seed keys the split and the
/// evaluation noise; the dataset and training configs carry their own seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset: DatasetConfig,
    /// Existing payload to use instead of `<output_dir>/dataset.vibd`.
    pub dataset_path: Option<PathBuf>,
    /// Train, validation, test.
    pub split_ratios: [f64; 3],
    pub noise_grid: Vec<f64>,
    pub features: WaveletChannelConfig,
    pub model: ModelConfig,
    pub train: TrainConfig,
    /// Empty means a single run with the default weights.
    pub loss_weight_grid: Vec<LossWeights>,
    pub baselines: BaselineGrids,
    /// Validation records used to tune each baseline; `None` uses all.
    pub tuning_records: Option<usize>,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            dataset: DatasetConfig::default(),
            dataset_path: None,
            split_ratios: [0.6, 0.2, 0.2],
            noise_grid: default_noise_grid(),
            features: WaveletChannelConfig::default(),
            model: ModelConfig::default(),
            train: TrainConfig::default(),
            loss_weight_grid: Vec::new(),
            baselines: BaselineGrids::default(),
            tuning_records: None,
            output_dir: PathBuf::from("out"),
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| VibroError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| VibroError::config("config", format!("{}: {e}", path.display())))
    }

    /// Sets the global, dataset and training seeds together.
    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
        self.dataset.seed = seed;
        self.train.seed = seed;
    }

    pub fn dataset_file(&self) -> PathBuf {
        self.dataset_path.clone().unwrap_or_else(|| self.output_dir.join("dataset.vibd"))
    }

    pub fn checkpoint_file(&self) -> PathBuf {
        self.output_dir.join("model.ckpt")
    }

    pub fn weight_grid(&self) -> Vec<LossWeights> {
        if self.loss_weight_grid.is_empty() {
            vec![LossWeights::default()]
        } else {
            self.loss_weight_grid.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.split_ratios.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
            return Err(VibroError::config("split_ratios", format!("each ratio must be > 0, got {:?}", self.split_ratios)));
        }
        let sum: f64 = self.split_ratios.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(VibroError::config("split_ratios", format!("must sum to 1, got {sum}")));
        }
        if self.noise_grid.is_empty() {
            return Err(VibroError::config("noise_grid", "must not be empty"));
        }
        for (i, s) in self.noise_grid.iter().enumerate() {
            if !(*s >= 0.0) || !s.is_finite() {
                return Err(VibroError::config(format!("noise_grid[{i}]"), format!("must be >= 0, got {s}")));
            }
            if self.noise_grid[..i].contains(s) {
                return Err(VibroError::config(format!("noise_grid[{i}]"), format!("duplicate level {s}")));
            }
        }
        if self.tuning_records == Some(0) {
            return Err(VibroError::config("tuning_records", "must be >= 1"));
        }
        if self.dataset_path.is_none() {
            self.dataset.validate()?;
            if self.dataset.series_length != self.model.series_length {
                return Err(VibroError::config(
                    "model.series_length",
                    format!("{} differs from dataset.series_length {}", self.model.series_length, self.dataset.series_length),
                ));
            }
            if self.dataset.channel_count != self.model.channel_count {
                return Err(VibroError::config(
                    "model.channel_count",
                    format!("{} differs from dataset.channel_count {}", self.model.channel_count, self.dataset.channel_count),
                ));
            }
        }
        self.model.validate()?;
        self.train.validate()?;
        for (i, w) in self.loss_weight_grid.iter().enumerate() {
            w.validate().map_err(|e| VibroError::config(format!("loss_weight_grid[{i}]"), e.to_string()))?;
        }
        self.baselines.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_spans_zero_to_point_two() {
        let g = default_noise_grid();
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], 0.0);
        assert!((g[8] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn default_config_is_valid() {
        ExperimentConfig::default().validate().unwrap();
    }

    #[test]
    fn bad_ratios_name_the_field() {
        let cfg = ExperimentConfig { split_ratios: [0.5, 0.3, 0.3], ..Default::default() };
        match cfg.validate() {
            Err(VibroError::Config { field, .. }) => assert_eq!(field, "split_ratios"),
            other => panic!("{other:?}"),
        }
        let cfg = ExperimentConfig { split_ratios: [1.2, -0.1, -0.1], ..Default::default() };
        assert!(cfg.validate().unwrap_err().is_validation());
    }

    #[test]
    fn empty_json_gives_defaults() {
        let cfg: ExperimentConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(cfg, ExperimentConfig::default());
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"bogus": 1}"#).is_err());
    }
}
