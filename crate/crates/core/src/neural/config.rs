use serde::{Deserialize, Serialize};

use super::ops::pooled_len;
use crate::error::{Result, VibroError};

/// Channels of the LSTM branch input: raw signal and FFT magnitude.
pub const LSTM_INPUTS: usize = 2;
/// Channels of the CNN branch input: the three wavelet channels.
pub const CNN_INPUTS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CnnLayerSpec {
    pub channels: usize,
    pub kernel: usize,
    pub pool: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub series_length: usize,
    pub channel_count: usize,
    pub lstm_hidden_size: usize,
    pub cnn_layers: Vec<CnnLayerSpec>,
    /// Two hidden widths; the output layer always has `series_length` units.
    pub fc_widths: [usize; 2],
    pub dropout_rate: f64,
    /// One set of branch weights shared by all channels.
    pub tie_branches: bool,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            series_length: 500,
            channel_count: 2,
            lstm_hidden_size: 32,
            cnn_layers: vec![
                CnnLayerSpec { channels: 8, kernel: 5, pool: 2 },
                CnnLayerSpec { channels: 16, kernel: 5, pool: 2 },
            ],
            fc_widths: [256, 128],
            dropout_rate: 0.2,
            tie_branches: true,
        }
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, reason: String| Err(VibroError::config(format!("model.{field}"), reason));
        if self.series_length < 8 {
            return bad("series_length", format!("must be >= 8, got {}", self.series_length));
        }
        if self.channel_count == 0 {
            return bad("channel_count", "must be >= 1".into());
        }
        if self.lstm_hidden_size == 0 {
            return bad("lstm_hidden_size", "must be >= 1".into());
        }
        if self.cnn_layers.is_empty() {
            return bad("cnn_layers", "need at least one layer".into());
        }
        for (i, l) in self.cnn_layers.iter().enumerate() {
            if l.channels == 0 || l.pool == 0 || l.kernel % 2 == 0 {
                return bad(
                    &format!("cnn_layers[{i}]"),
                    "channels and pool must be >= 1 and kernel odd".into(),
                );
            }
        }
        if self.fc_widths.contains(&0) {
            return bad("fc_widths", "widths must be >= 1".into());
        }
        if !(0.0..1.0).contains(&self.dropout_rate) {
            return bad("dropout_rate", format!("must lie in [0, 1), got {}", self.dropout_rate));
        }
        Ok(())
    }

    pub fn lstm_embedding(&self) -> usize {
        4 * self.lstm_hidden_size
    }

    /// Length of the sequence after every CNN layer's pooling.
    pub fn cnn_lengths(&self) -> Vec<usize> {
        let mut len = self.series_length;
        let mut out = vec![len];
        for l in &self.cnn_layers {
            len = pooled_len(len, l.pool);
            out.push(len);
        }
        out
    }

    pub fn cnn_embedding(&self) -> usize {
        self.cnn_layers.last().map_or(0, |l| l.channels) * self.cnn_lengths().last().copied().unwrap_or(0)
    }

    /// Width of one channel's slice of the head input.
    pub fn signal_embedding(&self) -> usize {
        self.lstm_embedding() + self.cnn_embedding()
    }

    pub fn head_input(&self) -> usize {
        self.channel_count * self.signal_embedding()
    }

    pub fn branch_copies(&self) -> usize {
        if self.tie_branches {
            1
        } else {
            self.channel_count
        }
    }
}

/// Loss-term weights. All must be non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LossWeights {
    pub lambda_lstm: f64,
    pub lambda_cnn: f64,
    pub lambda_nn: f64,
    pub lambda_pair: f64,
}

impl Default for LossWeights {
    fn default() -> Self {
        LossWeights { lambda_lstm: 1e-4, lambda_cnn: 1e-4, lambda_nn: 1e-4, lambda_pair: 1e-3 }
    }
}

impl LossWeights {
    pub fn zero() -> Self {
        LossWeights { lambda_lstm: 0.0, lambda_cnn: 0.0, lambda_nn: 0.0, lambda_pair: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("lambda_lstm", self.lambda_lstm),
            ("lambda_cnn", self.lambda_cnn),
            ("lambda_nn", self.lambda_nn),
            ("lambda_pair", self.lambda_pair),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(VibroError::config(format!("loss.{name}"), format!("must be >= 0, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    pub batch_size: usize,
    pub max_iterations: usize,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub seed: u64,
    /// Validation passes without improvement before stopping; 0 disables.
    pub patience: usize,
    /// Iterations between validation passes (the last iteration is always
    /// validated).
    pub validation_interval: usize,
    /// Cap on validation records per pass; `None` uses all of them.
    pub validation_records: Option<usize>,
    /// Records per gradient work unit. Fixed so results do not depend on
    /// thread count.
    pub chunk_size: usize,
    /// Redraw the noise of each training record at every use.
    pub augment_noise: bool,
    /// Noise range for augmentation.
    pub augment_sigma: (f64, f64),
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            batch_size: 256,
            max_iterations: 500,
            learning_rate: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            seed: 0,
            patience: 0,
            validation_interval: 10,
            validation_records: None,
            chunk_size: 16,
            augment_noise: false,
            augment_sigma: (0.0, 0.2),
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, reason: String| Err(VibroError::config(format!("train.{field}"), reason));
        if self.batch_size == 0 {
            return bad("batch_size", "must be >= 1".into());
        }
        if self.max_iterations == 0 {
            return bad("max_iterations", "must be >= 1".into());
        }
        if !(self.learning_rate > 0.0) || !self.learning_rate.is_finite() {
            return bad("learning_rate", format!("must be > 0, got {}", self.learning_rate));
        }
        if !(0.0..1.0).contains(&self.beta1) || !(0.0..1.0).contains(&self.beta2) {
            return bad("beta1", "moment decays must lie in [0, 1)".into());
        }
        if !(self.epsilon > 0.0) {
            return bad("epsilon", format!("must be > 0, got {}", self.epsilon));
        }
        if self.validation_interval == 0 {
            return bad("validation_interval", "must be >= 1".into());
        }
        if self.chunk_size == 0 {
            return bad("chunk_size", "must be >= 1".into());
        }
        if self.validation_records == Some(0) {
            return bad("validation_records", "must be >= 1 when set".into());
        }
        let (lo, hi) = self.augment_sigma;
        if !(lo >= 0.0 && lo <= hi && hi.is_finite()) {
            return bad("augment_sigma", format!("need 0 <= lo <= hi, got ({lo}, {hi})"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sizes() {
        let c = ModelConfig::default();
        c.validate().unwrap();
        assert_eq!(c.cnn_lengths(), vec![500, 250, 125]);
        assert_eq!(c.cnn_embedding(), 16 * 125);
        assert_eq!(c.head_input(), 2 * (128 + 2000));
    }

    #[test]
    fn invariants_enforced() {
        let mut t = TrainConfig::default();
        t.max_iterations = 0;
        assert!(t.validate().is_err());
        let mut m = ModelConfig::default();
        m.dropout_rate = 1.0;
        assert!(m.validate().is_err());
        assert!(LossWeights { lambda_pair: -1.0, ..LossWeights::default() }.validate().is_err());
    }
}
