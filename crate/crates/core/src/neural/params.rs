//! Flat parameter storage and its block layout.
//!
//! Block order: for each LSTM branch copy, forward then backward direction
//! (`w_ih`, `w_hh`, `b`); for each CNN branch copy, every layer (`kernel`,
//! `bias`); then the three head layers (`weight`, `bias`). A tied model has
//! one branch copy, an untied one has one per channel.

use std::ops::Range;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::config::{ModelConfig, CNN_INPUTS, LSTM_INPUTS};
use crate::error::{Result, VibroError};
use crate::seeding::{child_rng, stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamGroup {
    Lstm,
    Cnn,
    Nn,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamBlock {
    pub name: String,
    pub group: ParamGroup,
    pub shape: Vec<usize>,
    pub offset: usize,
    /// Fan-in for weight matrices, `None` for biases.
    pub fan_in: Option<usize>,
}

impl ParamBlock {
    pub fn size(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn range(&self) -> Range<usize> {
        self.offset..self.offset + self.size()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct DirOffsets {
    pub wx: usize,
    pub wh: usize,
    pub b: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ConvOffsets {
    pub w: usize,
    pub b: usize,
    pub cin: usize,
    pub cout: usize,
    pub kernel: usize,
    pub pool: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct DenseOffsets {
    pub w: usize,
    pub b: usize,
    pub fin: usize,
    pub fout: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamLayout {
    pub blocks: Vec<ParamBlock>,
    pub total: usize,
    pub(crate) lstm: Vec<[DirOffsets; 2]>,
    pub(crate) cnn: Vec<Vec<ConvOffsets>>,
    pub(crate) head: [DenseOffsets; 3],
    pub(crate) hidden: usize,
}

struct Builder {
    blocks: Vec<ParamBlock>,
    total: usize,
}

impl Builder {
    fn push(&mut self, name: String, group: ParamGroup, shape: Vec<usize>, fan_in: Option<usize>) -> usize {
        let offset = self.total;
        let block = ParamBlock { name, group, shape, offset, fan_in };
        self.total += block.size();
        self.blocks.push(block);
        offset
    }
}

impl ParamLayout {
    pub fn new(cfg: &ModelConfig) -> ParamLayout {
        let h = cfg.lstm_hidden_size;
        let mut b = Builder { blocks: Vec::new(), total: 0 };
        let copies = cfg.branch_copies();
        let mut lstm = Vec::new();
        for copy in 0..copies {
            let mut dirs = Vec::new();
            for dir in ["fwd", "bwd"] {
                let p = format!("lstm{copy}.{dir}");
                let wx = b.push(format!("{p}.w_ih"), ParamGroup::Lstm, vec![4 * h, LSTM_INPUTS], Some(LSTM_INPUTS));
                let wh = b.push(format!("{p}.w_hh"), ParamGroup::Lstm, vec![4 * h, h], Some(h));
                let bias = b.push(format!("{p}.b"), ParamGroup::Lstm, vec![4 * h], None);
                dirs.push(DirOffsets { wx, wh, b: bias });
            }
            lstm.push([dirs[0], dirs[1]]);
        }
        let mut cnn = Vec::new();
        for copy in 0..copies {
            let mut layers = Vec::new();
            let mut cin = CNN_INPUTS;
            for (i, l) in cfg.cnn_layers.iter().enumerate() {
                let p = format!("cnn{copy}.conv{i}");
                let fan = cin * l.kernel;
                let w = b.push(format!("{p}.kernel"), ParamGroup::Cnn, vec![l.channels, cin, l.kernel], Some(fan));
                let bias = b.push(format!("{p}.bias"), ParamGroup::Cnn, vec![l.channels], None);
                layers.push(ConvOffsets { w, b: bias, cin, cout: l.channels, kernel: l.kernel, pool: l.pool });
                cin = l.channels;
            }
            cnn.push(layers);
        }
        let widths = [cfg.head_input(), cfg.fc_widths[0], cfg.fc_widths[1], cfg.series_length];
        let mut head = Vec::new();
        for i in 0..3 {
            let (fin, fout) = (widths[i], widths[i + 1]);
            let w = b.push(format!("fc{i}.weight"), ParamGroup::Nn, vec![fout, fin], Some(fin));
            let bias = b.push(format!("fc{i}.bias"), ParamGroup::Nn, vec![fout], None);
            head.push(DenseOffsets { w, b: bias, fin, fout });
        }
        ParamLayout { blocks: b.blocks, total: b.total, lstm, cnn, head: [head[0], head[1], head[2]], hidden: h }
    }

    pub fn group_size(&self, group: ParamGroup) -> usize {
        self.blocks.iter().filter(|b| b.group == group).map(ParamBlock::size).sum()
    }

    /// LSTM branch copy used by channel `s`.
    pub(crate) fn lstm_for(&self, s: usize) -> [DirOffsets; 2] {
        self.lstm[s.min(self.lstm.len() - 1)]
    }

    pub(crate) fn cnn_for(&self, s: usize) -> &[ConvOffsets] {
        &self.cnn[s.min(self.cnn.len() - 1)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub config: ModelConfig,
    pub layout: ParamLayout,
    pub values: Vec<f64>,
}

impl ModelParams {
    pub fn zeros(config: &ModelConfig) -> Result<Self> {
        config.validate()?;
        let layout = ParamLayout::new(config);
        Ok(ModelParams { config: config.clone(), values: vec![0.0; layout.total], layout })
    }

    /// Weights uniform in `±1/√fan_in`, biases zero.
    pub fn init(config: &ModelConfig, seed: u64) -> Result<Self> {
        let mut p = Self::zeros(config)?;
        let mut rng = child_rng(seed, &[stream::INIT]);
        for block in &p.layout.blocks {
            if let Some(fan) = block.fan_in {
                let bound = 1.0 / (fan as f64).sqrt();
                for v in &mut p.values[block.range()] {
                    *v = rng.gen_range(-bound..=bound);
                }
            }
        }
        Ok(p)
    }

    pub fn from_values(config: &ModelConfig, values: Vec<f64>) -> Result<Self> {
        let mut p = Self::zeros(config)?;
        if values.len() != p.layout.total {
            return Err(VibroError::CheckpointMismatch(format!(
                "config needs {} parameters, payload has {}",
                p.layout.total,
                values.len()
            )));
        }
        p.values = values;
        Ok(p)
    }

    pub fn count(&self) -> usize {
        self.layout.total
    }

    pub fn block(&self, name: &str) -> Option<&[f64]> {
        self.layout.blocks.iter().find(|b| b.name == name).map(|b| &self.values[b.range()])
    }

    pub fn block_mut(&mut self, name: &str) -> Option<&mut [f64]> {
        let r = self.layout.blocks.iter().find(|b| b.name == name)?.range();
        Some(&mut self.values[r])
    }

    pub fn group_values(&self, group: ParamGroup) -> impl Iterator<Item = f64> + '_ {
        self.layout.blocks.iter().filter(move |b| b.group == group).flat_map(|b| self.values[b.range()].iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_depends_only_on_config() {
        let cfg = ModelConfig::default();
        let a = ModelParams::init(&cfg, 1).unwrap();
        let b = ModelParams::init(&cfg, 2).unwrap();
        assert_eq!(a.count(), b.count());
        assert_ne!(a.values, b.values);
        let h = 32;
        let lstm = 2 * (4 * h * 2 + 4 * h * h + 4 * h);
        let cnn = (8 * 3 * 5 + 8) + (16 * 8 * 5 + 16);
        let fc = (4256 * 256 + 256) + (256 * 128 + 128) + (128 * 500 + 500);
        assert_eq!(a.count(), lstm + cnn + fc);
    }

    #[test]
    fn untied_has_per_channel_branches() {
        let cfg = ModelConfig { tie_branches: false, ..ModelConfig::default() };
        let layout = ParamLayout::new(&cfg);
        assert_eq!(layout.lstm.len(), 2);
        assert!(layout.blocks.iter().any(|b| b.name == "cnn1.conv0.kernel"));
        assert_ne!(layout.lstm_for(0), layout.lstm_for(1));
    }

    #[test]
    fn init_bounds() {
        let cfg = ModelConfig::default();
        let p = ModelParams::init(&cfg, 3).unwrap();
        for b in &p.layout.blocks {
            let vals = &p.values[b.range()];
            match b.fan_in {
                Some(f) => assert!(vals.iter().all(|v| v.abs() <= 1.0 / (f as f64).sqrt())),
                None => assert!(vals.iter().all(|&v| v == 0.0)),
            }
        }
    }
}
