//! Experiment configuration and the generate/train/denoise/compare pipeline.

mod config;
mod pipeline;
mod split;

pub use config::{default_noise_grid, ExperimentConfig};
pub use pipeline::{
    cmd_compare, cmd_denoise, cmd_generate, cmd_train, eval_noisy, file_sha256, CompareOutput, DenoiseMethod,
    GenerateSummary, RunSummary, TrainSummary, TuningEntry, METHODS,
};
pub use split::{split_indices, Splits};
