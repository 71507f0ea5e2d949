//! Hybrid BiLSTM/CNN stacking ensemble with hand-derived gradients.

mod adam;
mod checkpoint;
mod config;
mod gradcheck;
mod lstm;
mod model;
mod ops;
mod params;
mod tensor;
mod train;

pub use adam::{adam_step, AdamConfig, AdamState};
pub use checkpoint::{load_checkpoint, save_checkpoint, CheckpointHeader, CHECKPOINT_MAGIC, CHECKPOINT_VERSION};
pub use config::{CnnLayerSpec, LossWeights, ModelConfig, TrainConfig, CNN_INPUTS, LSTM_INPUTS};
pub use gradcheck::{check_params, dense_grad_check, grad_check, BlockError, GradCheckReport, FD_STEP};
pub use lstm::BiLstm;
pub use model::{batch_loss, loss, loss_and_gradient, model_forward, predict, ForwardOutput, LossBreakdown, Mode};
pub use ops::{
    conv1d_same, conv1d_same_backward, dense_backward, dense_forward, maxpool1d, maxpool1d_backward, Activation,
};
pub use params::{ModelParams, ParamBlock, ParamGroup, ParamLayout};
pub use tensor::Tensor;
pub use train::{train, validation_loss, IterationLog, TrainHistory, TrainingSet};
