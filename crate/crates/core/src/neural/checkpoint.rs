//! Model checkpoint file.
//!
//! Layout: magic `VIBM`, `u32` format version, `u64` header length, the
//! JSON header, then every parameter as a little-endian `f64` in block
//! order (see [`ParamLayout`](super::ParamLayout)).

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::ModelConfig;
use super::params::ModelParams;
use crate::error::{Result, VibroError};

pub const CHECKPOINT_MAGIC: &[u8; 4] = b"VIBM";
pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointHeader {
    pub config: ModelConfig,
    pub seed: u64,
    pub iteration: usize,
    pub param_count: usize,
    pub block_order: Vec<String>,
    #[serde(default)]
    pub metrics: serde_json::Value,
}

pub fn save_checkpoint(path: &Path, params: &ModelParams, seed: u64, iteration: usize, metrics: serde_json::Value) -> Result<()> {
    let header = CheckpointHeader {
        config: params.config.clone(),
        seed,
        iteration,
        param_count: params.count(),
        block_order: params.layout.blocks.iter().map(|b| b.name.clone()).collect(),
        metrics,
    };
    let json = serde_json::to_vec(&header)?;
    let mut buf = Vec::with_capacity(16 + json.len() + 8 * params.count());
    buf.extend_from_slice(CHECKPOINT_MAGIC);
    buf.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
    buf.extend_from_slice(&(json.len() as u64).to_le_bytes());
    buf.extend_from_slice(&json);
    for v in &params.values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    let mut f = std::fs::File::create(path).map_err(|e| VibroError::io(path, e))?;
    f.write_all(&buf).map_err(|e| VibroError::io(path, e))?;
    Ok(())
}

/// Loads a checkpoint; when `expected` is given the stored config must match it.
pub fn load_checkpoint(path: &Path, expected: Option<&ModelConfig>) -> Result<(ModelParams, CheckpointHeader)> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| VibroError::io(path, e))?;
    if bytes.len() < 16 || &bytes[..4] != CHECKPOINT_MAGIC {
        return Err(VibroError::BadMagic { path: path.to_path_buf(), expected: "VIBM" });
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != CHECKPOINT_VERSION {
        return Err(VibroError::VersionMismatch { found: version, supported: CHECKPOINT_VERSION });
    }
    let hlen = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as usize;
    if bytes.len() < 16 + hlen {
        return Err(VibroError::Truncated { expected: (16 + hlen) as u64, found: bytes.len() as u64 });
    }
    let header: CheckpointHeader = serde_json::from_slice(&bytes[16..16 + hlen])?;
    if let Some(cfg) = expected {
        if *cfg != header.config {
            return Err(VibroError::CheckpointMismatch("model config differs from the checkpoint's".into()));
        }
    }
    let payload = &bytes[16 + hlen..];
    let want = header.param_count * 8;
    if payload.len() != want {
        return Err(VibroError::CheckpointMismatch(format!(
            "payload holds {} bytes, header declares {} parameters",
            payload.len(),
            header.param_count
        )));
    }
    let values: Vec<f64> = payload.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    let params = ModelParams::from_values(&header.config, values)?;
    let names: Vec<&str> = params.layout.blocks.iter().map(|b| b.name.as_str()).collect();
    if names != header.block_order.iter().map(String::as_str).collect::<Vec<_>>() {
        return Err(VibroError::CheckpointMismatch("block order differs from the config's layout".into()));
    }
    Ok((params, header))
}
