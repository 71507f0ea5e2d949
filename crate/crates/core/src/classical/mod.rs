//! Classical baseline denoisers.

mod savgol;
mod shrinkage;
mod tv;
mod wiener;

use serde::{Deserialize, Serialize};

pub use savgol::{savgol_coefficients, savgol_denoise};
pub use shrinkage::{
    hard_threshold, mad_sigma, soft_threshold, universal_threshold, wavelet_shrinkage_denoise, Threshold, ThresholdRule,
};
pub use tv::{total_variation, tv_denoise, tv_denoise_traced, tv_objective, TvResult};
pub use wiener::{local_moments, wiener_denoise};

use crate::dsp::{WaveletFamily, WaveletSpec};
use crate::error::{Result, VibroError};

pub const TV_MAX_ITER: usize = 2000;
pub const TV_TOL: f64 = 1e-6;

fn default_tv_iter() -> usize {
    TV_MAX_ITER
}

fn default_tv_tol() -> f64 {
    TV_TOL
}

/// One baseline method with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaselineConfig {
    Savgol {
        window: usize,
        polyorder: usize,
    },
    Wiener {
        window: usize,
        #[serde(default)]
        noise_var: Option<f64>,
    },
    Tv {
        weight: f64,
        #[serde(default = "default_tv_iter")]
        max_iter: usize,
        #[serde(default = "default_tv_tol")]
        tol: f64,
    },
    WaveletShrinkage {
        wavelet: WaveletSpec,
        rule: ThresholdRule,
        threshold: Threshold,
    },
}

impl BaselineConfig {
    pub fn savgol() -> Self {
        BaselineConfig::Savgol { window: 11, polyorder: 3 }
    }

    pub fn wiener() -> Self {
        BaselineConfig::Wiener { window: 11, noise_var: None }
    }

    pub fn tv(weight: f64) -> Self {
        BaselineConfig::Tv { weight, max_iter: TV_MAX_ITER, tol: TV_TOL }
    }

    pub fn wavelet_shrinkage() -> Self {
        BaselineConfig::WaveletShrinkage {
            wavelet: WaveletSpec::new(WaveletFamily::Daubechies(4), 3),
            rule: ThresholdRule::Soft,
            threshold: Threshold::Universal,
        }
    }

    /// Method tag as used in reports and on the command line.
    pub fn method(&self) -> &'static str {
        match self {
            BaselineConfig::Savgol { .. } => "savgol",
            BaselineConfig::Wiener { .. } => "wiener",
            BaselineConfig::Tv { .. } => "tv",
            BaselineConfig::WaveletShrinkage { .. } => "wavelet_shrinkage",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, reason: String| Err(VibroError::config(field, reason));
        match *self {
            BaselineConfig::Savgol { window, polyorder } => {
                if window % 2 == 0 || window <= polyorder {
                    return bad("savgol.window", format!("must be odd and > polyorder {polyorder}, got {window}"));
                }
            }
            BaselineConfig::Wiener { window, noise_var } => {
                if window < 3 || window % 2 == 0 {
                    return bad("wiener.window", format!("must be odd and >= 3, got {window}"));
                }
                if let Some(v) = noise_var {
                    if !(v >= 0.0) || !v.is_finite() {
                        return bad("wiener.noise_var", format!("must be >= 0, got {v}"));
                    }
                }
            }
            BaselineConfig::Tv { weight, max_iter, tol } => {
                if !(weight >= 0.0) || !weight.is_finite() {
                    return bad("tv.weight", format!("must be >= 0, got {weight}"));
                }
                if max_iter == 0 {
                    return bad("tv.max_iter", "must be >= 1".into());
                }
                if !(tol > 0.0) {
                    return bad("tv.tol", format!("must be > 0, got {tol}"));
                }
            }
            BaselineConfig::WaveletShrinkage { wavelet, threshold, .. } => {
                if wavelet.levels == 0 {
                    return bad("wavelet_shrinkage.wavelet.levels", "must be >= 1".into());
                }
                if let Threshold::Fixed(t) = threshold {
                    if !(t >= 0.0) {
                        return bad("wavelet_shrinkage.threshold", format!("must be >= 0, got {t}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        match *self {
            BaselineConfig::Savgol { window, polyorder } => savgol_denoise(x, window, polyorder),
            BaselineConfig::Wiener { window, noise_var } => wiener_denoise(x, window, noise_var),
            BaselineConfig::Tv { weight, max_iter, tol } => {
                let r = tv_denoise(x, weight, max_iter, tol)?;
                if !r.converged {
                    log::debug!("tv stopped at max_iter={max_iter} (lambda {weight})");
                }
                Ok(r.signal)
            }
            BaselineConfig::WaveletShrinkage { wavelet, rule, threshold } => {
                wavelet_shrinkage_denoise(x, &wavelet, rule, threshold)
            }
        }
    }
}

/// Candidate configurations swept per method on the validation split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaselineGrids {
    pub savgol: Vec<BaselineConfig>,
    pub wiener: Vec<BaselineConfig>,
    pub tv: Vec<BaselineConfig>,
    pub wavelet_shrinkage: Vec<BaselineConfig>,
}

impl Default for BaselineGrids {
    fn default() -> Self {
        let savgol = [5, 7, 11, 15, 21, 31]
            .into_iter()
            .flat_map(|window| [2, 3].map(|polyorder| BaselineConfig::Savgol { window, polyorder }))
            .collect();
        let wiener = [3, 5, 7, 11, 15, 21]
            .into_iter()
            .map(|window| BaselineConfig::Wiener { window, noise_var: None })
            .collect();
        let tv = [0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0].into_iter().map(BaselineConfig::tv).collect();
        let mut wavelet_shrinkage = Vec::new();
        for family in [WaveletFamily::Daubechies(4), WaveletFamily::Daubechies(8), WaveletFamily::Biorthogonal(2, 2)] {
            for levels in [3, 4, 5] {
                for rule in [ThresholdRule::Soft, ThresholdRule::Hard] {
                    wavelet_shrinkage.push(BaselineConfig::WaveletShrinkage {
                        wavelet: WaveletSpec::new(family, levels),
                        rule,
                        threshold: Threshold::Universal,
                    });
                }
            }
        }
        BaselineGrids { savgol, wiener, tv, wavelet_shrinkage }
    }
}

impl BaselineGrids {
    pub fn methods(&self) -> [(&'static str, &[BaselineConfig]); 4] {
        [
            ("tv", &self.tv),
            ("wiener", &self.wiener),
            ("savgol", &self.savgol),
            ("wavelet_shrinkage", &self.wavelet_shrinkage),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for (name, grid) in self.methods() {
            if grid.is_empty() {
                return Err(VibroError::config(format!("baselines.{name}"), "grid must not be empty"));
            }
            for cfg in grid {
                if cfg.method() != name {
                    return Err(VibroError::config(
                        format!("baselines.{name}"),
                        format!("contains a {} entry", cfg.method()),
                    ));
                }
                cfg.validate()?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_json_round_trip() {
        for cfg in [
            BaselineConfig::savgol(),
            BaselineConfig::wiener(),
            BaselineConfig::tv(0.3),
            BaselineConfig::wavelet_shrinkage(),
        ] {
            let text = serde_json::to_string(&cfg).unwrap();
            assert_eq!(serde_json::from_str::<BaselineConfig>(&text).unwrap(), cfg);
        }
        let parsed: BaselineConfig = serde_json::from_str(r#"{"method":"tv","weight":0.5}"#).unwrap();
        assert_eq!(parsed, BaselineConfig::tv(0.5));
    }

    #[test]
    fn invalid_configs_rejected() {
        assert!(BaselineConfig::Savgol { window: 5, polyorder: 5 }.validate().is_err());
        assert!(BaselineConfig::Tv { weight: -0.1, max_iter: 10, tol: 1e-6 }.validate().is_err());
        assert!(BaselineConfig::Tv { weight: 0.1, max_iter: 0, tol: 1e-6 }.validate().is_err());
        assert!(BaselineGrids::default().validate().is_ok());
    }

    #[test]
    fn defaults_apply() {
        let x: Vec<f64> = (0..64).map(|i| (i as f64 * 0.3).sin()).collect();
        for cfg in [
            BaselineConfig::savgol(),
            BaselineConfig::wiener(),
            BaselineConfig::tv(0.1),
            BaselineConfig::wavelet_shrinkage(),
        ] {
            let y = cfg.apply(&x).unwrap();
            assert_eq!(y.len(), x.len());
            assert!(y.iter().all(|v| v.is_finite()));
        }
    }
}
