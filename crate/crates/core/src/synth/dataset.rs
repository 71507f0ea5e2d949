//! Records, noise injection and the on-disk dataset format.
//!
//! Payload layout (little-endian):
//!
//! ```text
//! magic "VIBD" | format_version u32 | record_count u64 | T u32 | m u32
//! per record: seed u64 | sigma_eps f32 | clean f32 x T | noisy f32 x (m*T)
//! ```
//!
//! A JSON manifest with the same stem sits next to the payload.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::integrate::{normalize_peak, scenario_response, TimeGrid};
use super::scenario::{sample_scenario, scenario_digest, ScenarioDistribution};
use crate::error::{Result, VibroError};
use crate::seeding::{child_rng, derive_seed, stream};

pub const MAGIC: &[u8; 4] = b"VIBD";
pub const FORMAT_VERSION: u32 = 1;
const HEADER_BYTES: u64 = 4 + 4 + 8 + 4 + 4;
const WRITE_BLOCK: usize = 256;

/// One clean series and its noisy observations.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalRecord {
    pub clean: Vec<f64>,
    pub noisy: Vec<Vec<f64>>,
    pub sigma_eps: f64,
    pub seed: u64,
    /// Digest of the contributing scenarios; not persisted in the payload.
    pub scenario_digest: Option<u64>,
}

impl SignalRecord {
    pub fn len(&self) -> usize {
        self.clean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clean.is_empty()
    }

    pub fn channel_count(&self) -> usize {
        self.noisy.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DatasetConfig {
    pub record_count: usize,
    pub series_length: usize,
    pub channel_count: usize,
    /// Per-record noise std is drawn uniformly from this inclusive range.
    pub sigma_eps_range: (f64, f64),
    pub seed: u64,
    pub sample_rate_hz: f64,
    pub rk4_substeps: usize,
    pub distribution: ScenarioDistribution,
}

impl Default for DatasetConfig {
    fn default() -> Self {
        Self {
            record_count: 2000,
            series_length: 500,
            channel_count: 2,
            sigma_eps_range: (0.0, 0.2),
            seed: 0,
            sample_rate_hz: 200.0,
            rk4_substeps: 4,
            distribution: ScenarioDistribution::default(),
        }
    }
}

impl DatasetConfig {
    /// The full-size corpus: 100,000 series of 500 samples.
    pub fn paper_scale() -> Self {
        Self { record_count: 100_000, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.record_count == 0 {
            return Err(VibroError::config("dataset.record_count", "must be >= 1"));
        }
        if self.series_length < 8 || self.series_length > u32::MAX as usize {
            return Err(VibroError::config("dataset.series_length", "must be in [8, 2^32)"));
        }
        if self.channel_count == 0 || self.channel_count > u32::MAX as usize {
            return Err(VibroError::config("dataset.channel_count", "must be >= 1"));
        }
        let (lo, hi) = self.sigma_eps_range;
        if !(lo >= 0.0 && lo <= hi && hi.is_finite()) {
            return Err(VibroError::config("dataset.sigma_eps_range", "need 0 <= low <= high"));
        }
        if !(self.sample_rate_hz > 0.0 && self.sample_rate_hz.is_finite()) {
            return Err(VibroError::config("dataset.sample_rate_hz", "must be > 0"));
        }
        if self.rk4_substeps == 0 {
            return Err(VibroError::config("dataset.rk4_substeps", "must be >= 1"));
        }
        self.distribution.validate()
    }

    pub fn grid(&self) -> TimeGrid {
        TimeGrid { samples: self.series_length, sample_interval: 1.0 / self.sample_rate_hz, substeps: self.rk4_substeps }
    }

    pub fn record_seed(&self, index: usize) -> u64 {
        derive_seed(self.seed, &[stream::RECORD, index as u64])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub record_count: u64,
    pub series_length: u32,
    pub channel_count: u32,
    pub sigma_eps_range: (f64, f64),
    pub global_seed: u64,
    pub format_version: u32,
    /// Shape of the clean corpus, e.g. `R^{100000x500}`.
    pub shape: String,
    pub config: Option<DatasetConfig>,
}

impl DatasetManifest {
    pub fn new(record_count: u64, series_length: u32, channel_count: u32, config: Option<DatasetConfig>) -> Self {
        let (sigma_eps_range, global_seed) =
            config.as_ref().map(|c| (c.sigma_eps_range, c.seed)).unwrap_or(((0.0, 0.0), 0));
        Self {
            record_count,
            series_length,
            channel_count,
            sigma_eps_range,
            global_seed,
            format_version: FORMAT_VERSION,
            shape: format!("R^{{{record_count}x{series_length}}}"),
            config,
        }
    }

    pub fn from_config(config: &DatasetConfig) -> Self {
        Self::new(
            config.record_count as u64,
            config.series_length as u32,
            config.channel_count as u32,
            Some(config.clone()),
        )
    }
}

/// Rounds through f32 so in-memory records match what the payload stores.
fn quantize(x: f64) -> f64 {
    x as f32 as f64
}

/// Adds i.i.d. N(0, σ²) noise to `clean`, one independent draw per channel
/// and sample.
pub fn inject_noise<R: Rng + ?Sized>(clean: &[f64], sigma_eps: f64, channels: usize, rng: &mut R) -> Result<Vec<Vec<f64>>> {
    if !(sigma_eps >= 0.0) || !sigma_eps.is_finite() {
        return Err(VibroError::InvalidArgument(format!("sigma_eps must be >= 0, got {sigma_eps}")));
    }
    if channels == 0 {
        return Err(VibroError::InvalidArgument("channel count must be >= 1".into()));
    }
    if sigma_eps == 0.0 {
        return Ok(vec![clean.to_vec(); channels]);
    }
    Ok((0..channels)
        .map(|_| {
            clean
                .iter()
                .map(|&w| {
                    let e: f64 = rng.sample(StandardNormal);
                    w + sigma_eps * e
                })
                .collect()
        })
        .collect())
}

/// Normalized clean series for a record seed.
pub fn synthesize_clean(config: &DatasetConfig, record_seed: u64) -> Result<(Vec<f64>, u64)> {
    let grid = config.grid();
    let duration = grid.duration();
    let dist = &config.distribution;
    let mut rng = child_rng(record_seed, &[stream::SCENARIO]);
    let count = rng.gen_range(dist.scenario_count.0..=dist.scenario_count.1);
    let scenarios = (0..count)
        .map(|_| sample_scenario(dist, duration, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    let mut clean = vec![0.0; grid.samples];
    for s in &scenarios {
        for (acc, x) in clean.iter_mut().zip(scenario_response(s, &grid)?) {
            *acc += x;
        }
    }
    normalize_peak(&mut clean);
    Ok((clean, scenario_digest(&scenarios)))
}

/// Builds record `index` of the dataset described by `config`.
pub fn synthesize_record(config: &DatasetConfig, index: usize) -> Result<SignalRecord> {
    let seed = config.record_seed(index);
    let (clean, digest) = synthesize_clean(config, seed)?;
    let clean: Vec<f64> = clean.into_iter().map(quantize).collect();
    let (lo, hi) = config.sigma_eps_range;
    let sigma = if lo == hi { lo } else { child_rng(seed, &[stream::SIGMA]).gen_range(lo..=hi) };
    let sigma_eps = quantize(sigma);
    let mut noise_rng = child_rng(seed, &[stream::NOISE]);
    let noisy = inject_noise(&clean, sigma_eps, config.channel_count, &mut noise_rng)?
        .into_iter()
        .map(|ch| ch.into_iter().map(quantize).collect())
        .collect();
    Ok(SignalRecord { clean, noisy, sigma_eps, seed, scenario_digest: Some(digest) })
}

pub fn manifest_path(payload: &Path) -> PathBuf {
    payload.with_extension("json")
}

/// Sequential payload writer.
pub struct DatasetWriter {
    path: PathBuf,
    out: BufWriter<File>,
    expected: u64,
    written: u64,
    series_length: usize,
    channel_count: usize,
}

impl DatasetWriter {
    pub fn create(path: &Path, record_count: u64, series_length: usize, channel_count: usize) -> Result<Self> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| VibroError::io(dir, e))?;
        }
        let file = File::create(path).map_err(|e| VibroError::io(path, e))?;
        let mut out = BufWriter::new(file);
        let mut header = Vec::with_capacity(HEADER_BYTES as usize);
        header.extend_from_slice(MAGIC);
        header.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        header.extend_from_slice(&record_count.to_le_bytes());
        header.extend_from_slice(&(series_length as u32).to_le_bytes());
        header.extend_from_slice(&(channel_count as u32).to_le_bytes());
        out.write_all(&header).map_err(|e| VibroError::io(path, e))?;
        Ok(Self { path: path.to_path_buf(), out, expected: record_count, written: 0, series_length, channel_count })
    }

    pub fn write_record(&mut self, record: &SignalRecord) -> Result<()> {
        if record.clean.len() != self.series_length
            || record.noisy.len() != self.channel_count
            || record.noisy.iter().any(|c| c.len() != self.series_length)
        {
            return Err(VibroError::Shape(format!(
                "record does not match {}x{} layout",
                self.channel_count, self.series_length
            )));
        }
        if self.written == self.expected {
            return Err(VibroError::ManifestMismatch("more records than declared".into()));
        }
        let mut buf = Vec::with_capacity(12 + 4 * self.series_length * (1 + self.channel_count));
        buf.extend_from_slice(&record.seed.to_le_bytes());
        buf.extend_from_slice(&(record.sigma_eps as f32).to_le_bytes());
        for x in record.clean.iter().chain(record.noisy.iter().flatten()) {
            buf.extend_from_slice(&(*x as f32).to_le_bytes());
        }
        self.out.write_all(&buf).map_err(|e| VibroError::io(&self.path, e))?;
        self.written += 1;
        Ok(())
    }

    /// Flushes the payload and writes the manifest sidecar.
    pub fn finish(mut self, manifest: &DatasetManifest) -> Result<()> {
        if self.written != self.expected || manifest.record_count != self.written {
            return Err(VibroError::ManifestMismatch(format!(
                "declared {} records, wrote {}, manifest says {}",
                self.expected, self.written, manifest.record_count
            )));
        }
        self.out.flush().map_err(|e| VibroError::io(&self.path, e))?;
        let mpath = manifest_path(&self.path);
        let json = serde_json::to_string_pretty(manifest)?;
        std::fs::write(&mpath, json + "\n").map_err(|e| VibroError::io(&mpath, e))
    }
}

/// Generates the dataset described by `config` into `out_dir`.
///
/// Records are synthesized in parallel blocks and written in index order,
/// so the bytes do not depend on the worker count.
pub fn generate_dataset(config: &DatasetConfig, out_dir: &Path) -> Result<DatasetManifest> {
    config.validate()?;
    let path = out_dir.join("dataset.vibd");
    let mut writer = DatasetWriter::create(&path, config.record_count as u64, config.series_length, config.channel_count)?;
    let mut start = 0;
    while start < config.record_count {
        let end = (start + WRITE_BLOCK).min(config.record_count);
        let block: Vec<SignalRecord> =
            (start..end).into_par_iter().map(|i| synthesize_record(config, i)).collect::<Result<_>>()?;
        for r in &block {
            writer.write_record(r)?;
        }
        start = end;
    }
    let manifest = DatasetManifest::from_config(config);
    writer.finish(&manifest)?;
    Ok(manifest)
}

/// Streaming reader over a payload; yields one record at a time.
pub struct DatasetReader {
    path: PathBuf,
    input: BufReader<File>,
    manifest: DatasetManifest,
    remaining: u64,
    failed: bool,
}

impl DatasetReader {
    pub fn manifest(&self) -> &DatasetManifest {
        &self.manifest
    }

    pub fn series_length(&self) -> usize {
        self.manifest.series_length as usize
    }

    pub fn channel_count(&self) -> usize {
        self.manifest.channel_count as usize
    }

    fn read_record(&mut self) -> Result<SignalRecord> {
        let t = self.series_length();
        let m = self.channel_count();
        let mut buf = vec![0u8; record_bytes(t, m) as usize];
        self.input.read_exact(&mut buf).map_err(|e| {
            if e.kind() == std::io::ErrorKind::UnexpectedEof {
                VibroError::Truncated { expected: record_bytes(t, m), found: 0 }
            } else {
                VibroError::io(&self.path, e)
            }
        })?;
        let seed = u64::from_le_bytes(buf[0..8].try_into().expect("8 bytes"));
        let sigma_eps = f32::from_le_bytes(buf[8..12].try_into().expect("4 bytes")) as f64;
        let mut values = buf[12..].chunks_exact(4).map(|c| f32::from_le_bytes(c.try_into().expect("4 bytes")) as f64);
        let clean: Vec<f64> = values.by_ref().take(t).collect();
        let noisy = (0..m).map(|_| values.by_ref().take(t).collect()).collect();
        Ok(SignalRecord { clean, noisy, sigma_eps, seed, scenario_digest: None })
    }
}

impl Iterator for DatasetReader {
    type Item = Result<SignalRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 || self.failed {
            return None;
        }
        let r = self.read_record();
        if r.is_err() {
            self.failed = true;
        } else {
            self.remaining -= 1;
        }
        Some(r)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = if self.failed { 0 } else { self.remaining as usize };
        (n, Some(n))
    }
}

fn record_bytes(t: usize, m: usize) -> u64 {
    12 + 4 * (t as u64) * (1 + m as u64)
}

/// Opens a payload (or a directory holding `dataset.vibd`) for streaming.
///
/// Header, manifest and file size are all checked before the first record
/// is produced, so a corrupt file never yields a partial record.
pub fn load_dataset(path: &Path) -> Result<DatasetReader> {
    let path = if path.is_dir() { path.join("dataset.vibd") } else { path.to_path_buf() };
    let file = File::open(&path).map_err(|e| VibroError::io(&path, e))?;
    let actual_len = file.metadata().map_err(|e| VibroError::io(&path, e))?.len();
    let mut input = BufReader::new(file);
    let mut header = [0u8; HEADER_BYTES as usize];
    if actual_len < HEADER_BYTES {
        return Err(VibroError::Truncated { expected: HEADER_BYTES, found: actual_len });
    }
    input.read_exact(&mut header).map_err(|e| VibroError::io(&path, e))?;
    if &header[0..4] != MAGIC {
        return Err(VibroError::BadMagic { path: path.clone(), expected: "VIBD" });
    }
    let version = u32::from_le_bytes(header[4..8].try_into().expect("4 bytes"));
    if version != FORMAT_VERSION {
        return Err(VibroError::VersionMismatch { found: version, supported: FORMAT_VERSION });
    }
    let count = u64::from_le_bytes(header[8..16].try_into().expect("8 bytes"));
    let t = u32::from_le_bytes(header[16..20].try_into().expect("4 bytes"));
    let m = u32::from_le_bytes(header[20..24].try_into().expect("4 bytes"));

    let mpath = manifest_path(&path);
    let text = std::fs::read_to_string(&mpath).map_err(|e| VibroError::io(&mpath, e))?;
    let manifest: DatasetManifest = serde_json::from_str(&text)?;
    if manifest.format_version != FORMAT_VERSION {
        return Err(VibroError::VersionMismatch { found: manifest.format_version, supported: FORMAT_VERSION });
    }
    if manifest.record_count != count || manifest.series_length != t || manifest.channel_count != m {
        return Err(VibroError::ManifestMismatch(format!(
            "manifest declares {}x{}x{}, payload header {}x{}x{}",
            manifest.record_count, manifest.series_length, manifest.channel_count, count, t, m
        )));
    }
    let expected = HEADER_BYTES + count * record_bytes(t as usize, m as usize);
    if actual_len < expected {
        return Err(VibroError::Truncated { expected, found: actual_len });
    }
    if actual_len > expected {
        return Err(VibroError::ManifestMismatch(format!(
            "{} trailing bytes after {count} records",
            actual_len - expected
        )));
    }
    Ok(DatasetReader { path, input, manifest, remaining: count, failed: false })
}

/// Reads every record into memory.
pub fn read_all(path: &Path) -> Result<(DatasetManifest, Vec<SignalRecord>)> {
    let reader = load_dataset(path)?;
    let manifest = reader.manifest().clone();
    let records = reader.collect::<Result<Vec<_>>>()?;
    Ok((manifest, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::rng_from;

    #[test]
    fn zero_sigma_channels_equal_clean() {
        let clean: Vec<f64> = (0..64).map(|i| (i as f64 * 0.3).sin()).collect();
        let noisy = inject_noise(&clean, 0.0, 3, &mut rng_from(9)).unwrap();
        assert_eq!(noisy.len(), 3);
        for ch in noisy {
            assert_eq!(ch, clean);
        }
    }

    #[test]
    fn noise_std_matches_sigma() {
        let clean = vec![0.25; 100_000];
        let noisy = inject_noise(&clean, 0.2, 2, &mut rng_from(11)).unwrap();
        for ch in &noisy {
            let n = ch.len() as f64;
            let diffs: Vec<f64> = ch.iter().zip(&clean).map(|(a, b)| a - b).collect();
            let mean = diffs.iter().sum::<f64>() / n;
            let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0);
            let std = var.sqrt();
            assert!((0.198..=0.202).contains(&std), "std {std}");
        }
        assert_ne!(noisy[0], noisy[1]);
    }

    #[test]
    fn noise_is_seeded() {
        let clean = vec![0.0; 32];
        let a = inject_noise(&clean, 0.1, 2, &mut rng_from(5)).unwrap();
        let b = inject_noise(&clean, 0.1, 2, &mut rng_from(5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn negative_sigma_rejected() {
        assert!(inject_noise(&[0.0], -0.1, 1, &mut rng_from(0)).is_err());
        assert!(inject_noise(&[0.0], 0.1, 0, &mut rng_from(0)).is_err());
    }

    #[test]
    fn empty_dataset_rejected() {
        let cfg = DatasetConfig { record_count: 0, ..Default::default() };
        assert!(matches!(cfg.validate(), Err(VibroError::Config { ref field, .. }) if field == "dataset.record_count"));
    }

    #[test]
    fn paper_scale_manifest_shape() {
        let m = DatasetManifest::from_config(&DatasetConfig::paper_scale());
        assert_eq!(m.record_count, 100_000);
        assert_eq!(m.series_length, 500);
        assert_eq!(m.shape, "R^{100000x500}");
    }

    #[test]
    fn records_are_peak_normalized() {
        let cfg = DatasetConfig { record_count: 3, ..Default::default() };
        for i in 0..3 {
            let r = synthesize_record(&cfg, i).unwrap();
            let peak = r.clean.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
            assert!((peak - 1.0).abs() < 1e-6);
            assert!(r.sigma_eps >= 0.0 && r.sigma_eps <= 0.2);
        }
    }
}
