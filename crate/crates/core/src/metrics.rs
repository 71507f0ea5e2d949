//! Signal-quality metrics and report aggregation.
//!
//! PSNR uses the clean record's peak `max|y|` as MAX. Zero-error cases
//! produce [`Score::Infinite`] rather than a float infinity so reports stay
//! valid JSON and CSV.

use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, VibroError};

/// A decibel value that may be the perfect-score sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Score {
    Finite(f64),
    Infinite,
}

impl Score {
    pub fn finite(self) -> Option<f64> {
        match self {
            Score::Finite(v) => Some(v),
            Score::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Score::Infinite)
    }

    /// Ordering with the sentinel above every finite value.
    pub fn exceeds(self, other: Score, margin: f64) -> bool {
        match (self, other) {
            (Score::Infinite, Score::Finite(_)) => true,
            (Score::Finite(a), Score::Finite(b)) => a > b + margin,
            _ => false,
        }
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Finite(v) => write!(f, "{v}"),
            Score::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Score::Finite(v) => s.serialize_f64(*v),
            Score::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Score {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Score::Finite(v)),
            Raw::Text(t) if t == "inf" => Ok(Score::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {t:?}"))),
        }
    }
}

fn check_pair(estimate: &[f64], clean: &[f64]) -> Result<()> {
    if estimate.len() != clean.len() || clean.is_empty() {
        return Err(VibroError::Shape(format!(
            "metric inputs must have equal non-zero length, got {} and {}",
            estimate.len(),
            clean.len()
        )));
    }
    Ok(())
}

fn squared_error(estimate: &[f64], clean: &[f64]) -> f64 {
    estimate.iter().zip(clean).map(|(a, b)| (a - b) * (a - b)).sum()
}

pub fn psnr(estimate: &[f64], clean: &[f64]) -> Result<Score> {
    check_pair(estimate, clean)?;
    let mse = squared_error(estimate, clean) / clean.len() as f64;
    if mse == 0.0 {
        return Ok(Score::Infinite);
    }
    let peak = clean.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Err(VibroError::UndefinedMetric("psnr of an all-zero clean signal"));
    }
    Ok(Score::Finite(10.0 * (peak * peak / mse).log10()))
}

pub fn snr(estimate: &[f64], clean: &[f64]) -> Result<Score> {
    check_pair(estimate, clean)?;
    let power: f64 = clean.iter().map(|v| v * v).sum();
    if power == 0.0 {
        return Err(VibroError::UndefinedMetric("snr of an all-zero clean signal"));
    }
    let residual = squared_error(estimate, clean);
    if residual == 0.0 {
        return Ok(Score::Infinite);
    }
    Ok(Score::Finite(10.0 * (power / residual).log10()))
}

/// Weighted mean absolute percentage error, in percent.
pub fn wmape(estimate: &[f64], clean: &[f64]) -> Result<f64> {
    check_pair(estimate, clean)?;
    let weight: f64 = clean.iter().map(|v| v.abs()).sum();
    if weight == 0.0 {
        return Err(VibroError::UndefinedMetric("wmape of an all-zero clean signal"));
    }
    let abs_err: f64 = estimate.iter().zip(clean).map(|(a, b)| (a - b).abs()).sum();
    Ok(100.0 * abs_err / weight)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn quantiles(values: &[f64]) -> Result<Quantiles> {
    if values.is_empty() {
        return Err(VibroError::Shape("quantiles of an empty sample".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(Quantiles {
        min: sorted[0],
        q1: quantile_sorted(&sorted, 0.25),
        median: quantile_sorted(&sorted, 0.5),
        q3: quantile_sorted(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
    })
}

/// Quantile summary of the pointwise error `estimate - clean`.
pub fn error_stats(estimate: &[f64], clean: &[f64]) -> Result<Quantiles> {
    check_pair(estimate, clean)?;
    let errors: Vec<f64> = estimate.iter().zip(clean).map(|(a, b)| a - b).collect();
    quantiles(&errors)
}

/// Metrics of one record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecordScores {
    pub psnr: Score,
    pub snr: Score,
    pub wmape: f64,
}

pub fn score_record(estimate: &[f64], clean: &[f64]) -> Result<RecordScores> {
    Ok(RecordScores { psnr: psnr(estimate, clean)?, snr: snr(estimate, clean)?, wmape: wmape(estimate, clean)? })
}

/// Mean and sample standard deviation (n - 1, zero for a single value) in
/// index order.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// Mean/std of scores; any sentinel makes both the sentinel.
fn score_mean_std(values: impl Iterator<Item = Score>) -> (Score, Score) {
    let mut finite = Vec::new();
    for v in values {
        match v {
            Score::Finite(x) => finite.push(x),
            Score::Infinite => return (Score::Infinite, Score::Infinite),
        }
    }
    let (m, s) = mean_std(&finite);
    (Score::Finite(m), Score::Finite(s))
}

/// One method at one noise level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub method: String,
    pub sigma_eps: f64,
    pub psnr_mean: Score,
    pub psnr_std: Score,
    pub snr_mean: Score,
    pub snr_std: Score,
    pub wmape_mean: f64,
    pub wmape_std: f64,
    pub n: usize,
    pub error_quantiles: Quantiles,
}

impl EvalRow {
    /// Aggregates per-record scores and pooled pointwise errors.
    pub fn aggregate(method: &str, sigma_eps: f64, scores: &[RecordScores], errors: &[f64]) -> Result<EvalRow> {
        if scores.is_empty() {
            return Err(VibroError::Shape(format!("no records to aggregate for {method}")));
        }
        let (psnr_mean, psnr_std) = score_mean_std(scores.iter().map(|s| s.psnr));
        let (snr_mean, snr_std) = score_mean_std(scores.iter().map(|s| s.snr));
        let (wmape_mean, wmape_std) = mean_std(&scores.iter().map(|s| s.wmape).collect::<Vec<_>>());
        Ok(EvalRow {
            method: method.to_string(),
            sigma_eps,
            psnr_mean,
            psnr_std,
            snr_mean,
            snr_std,
            wmape_mean,
            wmape_std,
            n: scores.len(),
            error_quantiles: quantiles(errors)?,
        })
    }
}

pub const CSV_COLUMNS: [&str; 9] =
    ["method", "sigma_eps", "psnr_mean", "psnr_std", "snr_mean", "snr_std", "wmape_mean", "wmape_std", "n"];

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub rows: Vec<EvalRow>,
}

impl EvalReport {
    pub fn row(&self, method: &str, sigma_eps: f64) -> Option<&EvalRow> {
        self.rows.iter().find(|r| r.method == method && (r.sigma_eps - sigma_eps).abs() < 1e-12)
    }

    pub fn methods(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.method.as_str()) {
                out.push(&r.method);
            }
        }
        out
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_COLUMNS)?;
        for r in &self.rows {
            w.write_record([
                r.method.clone(),
                r.sigma_eps.to_string(),
                r.psnr_mean.to_string(),
                r.psnr_std.to_string(),
                r.snr_mean.to_string(),
                r.snr_std.to_string(),
                r.wmape_mean.to_string(),
                r.wmape_std.to_string(),
                r.n.to_string(),
            ])?;
        }
        w.flush().map_err(|e| VibroError::io("<csv>", e))?;
        Ok(())
    }

    pub fn save(&self, csv_path: &Path, json_path: &Path) -> Result<()> {
        let file = std::fs::File::create(csv_path).map_err(|e| VibroError::io(csv_path, e))?;
        self.write_csv(std::io::BufWriter::new(file))?;
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(json_path, text + "\n").map_err(|e| VibroError::io(json_path, e))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinel_serializes_as_text() {
        assert_eq!(serde_json::to_string(&Score::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<Score>("\"inf\"").unwrap(), Score::Infinite);
        assert_eq!(serde_json::from_str::<Score>("12.5").unwrap(), Score::Finite(12.5));
        assert!(serde_json::from_str::<Score>("\"nan\"").is_err());
    }

    #[test]
    fn mean_std_small_cases() {
        assert_eq!(mean_std(&[3.0]), (3.0, 0.0));
        let (m, s) = mean_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn infinite_scores_dominate_aggregate() {
        let a = RecordScores { psnr: Score::Infinite, snr: Score::Infinite, wmape: 0.0 };
        let b = RecordScores { psnr: Score::Finite(20.0), snr: Score::Finite(19.0), wmape: 1.0 };
        let row = EvalRow::aggregate("noisy", 0.0, &[a, b], &[0.0, 0.1]).unwrap();
        assert_eq!(row.psnr_mean, Score::Infinite);
        assert_eq!(row.n, 2);
    }

    #[test]
    fn exceeds_ordering() {
        assert!(Score::Infinite.exceeds(Score::Finite(100.0), 1.0));
        assert!(!Score::Finite(1.0).exceeds(Score::Infinite, 0.0));
        assert!(Score::Finite(3.0).exceeds(Score::Finite(1.5), 1.0));
        assert!(!Score::Finite(2.0).exceeds(Score::Finite(1.5), 1.0));
    }
}
