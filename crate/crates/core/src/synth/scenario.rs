//! Plate scenarios and their parameter distributions.

use rand::Rng;
use rand_distr::{Distribution, Normal, Uniform};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, VibroError};

const MAX_REJECTION_DRAWS: usize = 1000;

/// One sampled structure plus the impulse train that excites it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlateScenario {
    /// Flexural rigidity D, N·m.
    pub flexural_rigidity: f64,
    /// Membrane tension T, N/m.
    pub membrane_tension: f64,
    /// Areal density ρh, kg/m².
    pub areal_density: f64,
    /// Viscous damping K, N·s/m³.
    pub damping: f64,
    /// Impulse instants in seconds, strictly increasing.
    pub impulse_times: Vec<f64>,
    /// Impulse strengths in N·s, one per instant.
    pub impulse_amplitudes: Vec<f64>,
    pub mode_count: usize,
    /// Wavenumbers k_n in 1/m, one per mode.
    pub modal_wavenumbers: Vec<f64>,
}

impl PlateScenario {
    /// Checks the physical invariants against a window of `duration` seconds.
    pub fn validate(&self, duration: f64) -> Result<()> {
        let bad = |msg: String| Err(VibroError::InvalidScenario(msg));
        if !(self.flexural_rigidity > 0.0) {
            return bad(format!("flexural rigidity must be > 0, got {}", self.flexural_rigidity));
        }
        if !(self.areal_density > 0.0) {
            return bad(format!("areal density must be > 0, got {}", self.areal_density));
        }
        if !(self.damping >= 0.0) {
            return bad(format!("damping must be >= 0, got {}", self.damping));
        }
        if !(self.membrane_tension >= 0.0) {
            return bad(format!("membrane tension must be >= 0, got {}", self.membrane_tension));
        }
        if self.mode_count == 0 || self.modal_wavenumbers.len() != self.mode_count {
            return bad(format!(
                "mode_count {} must be >= 1 and match {} wavenumbers",
                self.mode_count,
                self.modal_wavenumbers.len()
            ));
        }
        if self.impulse_times.len() != self.impulse_amplitudes.len() {
            return bad("impulse times and amplitudes differ in length".into());
        }
        for (i, &t) in self.impulse_times.iter().enumerate() {
            if !(t >= 0.0 && t < duration) {
                return bad(format!("impulse time {t} outside [0, {duration})"));
            }
            if i > 0 && t <= self.impulse_times[i - 1] {
                return bad("impulse times must be strictly increasing".into());
            }
        }
        Ok(())
    }

    /// Stable 64-bit digest of all parameters.
    pub fn digest_into(&self, hasher: &mut Sha256) {
        for v in [self.flexural_rigidity, self.membrane_tension, self.areal_density, self.damping] {
            hasher.update(v.to_le_bytes());
        }
        for v in self.impulse_times.iter().chain(&self.impulse_amplitudes).chain(&self.modal_wavenumbers) {
            hasher.update(v.to_le_bytes());
        }
        hasher.update((self.mode_count as u64).to_le_bytes());
    }
}

/// Digest of a set of scenarios, truncated to 64 bits.
pub fn scenario_digest(scenarios: &[PlateScenario]) -> u64 {
    let mut hasher = Sha256::new();
    for s in scenarios {
        s.digest_into(&mut hasher);
    }
    let bytes = hasher.finalize();
    u64::from_le_bytes(bytes[..8].try_into().expect("sha256 output has 32 bytes"))
}

/// Sampling law for plate scenarios.
///
/// D, T and ρh are Normal, K is Uniform on `[k_low, k_high]`. Normal draws
/// that come out non-physical are redrawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioDistribution {
    pub mu_d: f64,
    pub sigma_d: f64,
    pub mu_t: f64,
    pub sigma_t: f64,
    pub mu_rho_h: f64,
    pub sigma_rho_h: f64,
    pub k_low: f64,
    pub k_high: f64,
    /// Inclusive range for the number of superposed scenarios per record.
    pub scenario_count: (usize, usize),
    /// Inclusive range for the number of impulses per scenario.
    pub impulse_count: (usize, usize),
    /// Uniform range of impulse strengths, N·s.
    pub impulse_amplitude: (f64, f64),
    /// Impulses land in this fraction of the window.
    pub impulse_window: (f64, f64),
    /// Nominal plate span L in metres; k_n = nπ/L.
    pub span_m: f64,
    pub mode_count: usize,
}

impl Default for ScenarioDistribution {
    fn default() -> Self {
        Self {
            mu_d: 300.0,
            sigma_d: 30.0,
            mu_t: 100.0,
            sigma_t: 10.0,
            mu_rho_h: 50.0,
            sigma_rho_h: 5.0,
            k_low: 10.0,
            k_high: 60.0,
            scenario_count: (1, 3),
            impulse_count: (1, 3),
            impulse_amplitude: (0.5, 1.5),
            impulse_window: (0.0, 0.75),
            span_m: 0.8,
            mode_count: 4,
        }
    }
}

impl ScenarioDistribution {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("mu_d", self.mu_d),
            ("sigma_d", self.sigma_d),
            ("mu_t", self.mu_t),
            ("sigma_t", self.sigma_t),
            ("mu_rho_h", self.mu_rho_h),
            ("sigma_rho_h", self.sigma_rho_h),
            ("k_low", self.k_low),
            ("k_high", self.k_high),
            ("span_m", self.span_m),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(VibroError::config(format!("distribution.{name}"), "must be finite"));
            }
        }
        for (name, v) in [("sigma_d", self.sigma_d), ("sigma_t", self.sigma_t), ("sigma_rho_h", self.sigma_rho_h)] {
            if v < 0.0 {
                return Err(VibroError::config(format!("distribution.{name}"), "must be >= 0"));
            }
        }
        if self.k_low > self.k_high {
            return Err(VibroError::config("distribution.k_low", "must be <= k_high"));
        }
        if self.k_low < 0.0 {
            return Err(VibroError::config("distribution.k_low", "damping must be >= 0"));
        }
        if !(self.span_m > 0.0) {
            return Err(VibroError::config("distribution.span_m", "must be > 0"));
        }
        if self.mode_count == 0 {
            return Err(VibroError::config("distribution.mode_count", "must be >= 1"));
        }
        let ranges = [("scenario_count", self.scenario_count), ("impulse_count", self.impulse_count)];
        for (name, (lo, hi)) in ranges {
            if lo == 0 || lo > hi {
                return Err(VibroError::config(format!("distribution.{name}"), "need 1 <= low <= high"));
            }
        }
        let (alo, ahi) = self.impulse_amplitude;
        if !(alo > 0.0 && alo <= ahi && ahi.is_finite()) {
            return Err(VibroError::config("distribution.impulse_amplitude", "need 0 < low <= high"));
        }
        let (wlo, whi) = self.impulse_window;
        if !(0.0 <= wlo && wlo < whi && whi <= 1.0) {
            return Err(VibroError::config("distribution.impulse_window", "need 0 <= low < high <= 1"));
        }
        Ok(())
    }

    pub fn wavenumbers(&self) -> Vec<f64> {
        (1..=self.mode_count).map(|n| n as f64 * std::f64::consts::PI / self.span_m).collect()
    }
}

fn positive_normal<R: Rng + ?Sized>(rng: &mut R, mu: f64, sigma: f64, parameter: &'static str) -> Result<f64> {
    if sigma == 0.0 {
        return if mu > 0.0 {
            Ok(mu)
        } else {
            Err(VibroError::DegenerateDistribution { parameter, attempts: MAX_REJECTION_DRAWS })
        };
    }
    let normal = Normal::new(mu, sigma).map_err(|e| VibroError::config(parameter, e.to_string()))?;
    for _ in 0..MAX_REJECTION_DRAWS {
        let v = normal.sample(rng);
        if v > 0.0 {
            return Ok(v);
        }
    }
    Err(VibroError::DegenerateDistribution { parameter, attempts: MAX_REJECTION_DRAWS })
}

/// Draws one scenario whose impulses fall inside a `duration`-second window.
pub fn sample_scenario<R: Rng + ?Sized>(
    dist: &ScenarioDistribution,
    duration: f64,
    rng: &mut R,
) -> Result<PlateScenario> {
    dist.validate()?;
    let flexural_rigidity = positive_normal(rng, dist.mu_d, dist.sigma_d, "flexural_rigidity")?;
    // Tension may be zero, so only strictly negative draws are rejected.
    let membrane_tension = if dist.sigma_t == 0.0 {
        if dist.mu_t < 0.0 {
            return Err(VibroError::DegenerateDistribution { parameter: "membrane_tension", attempts: 0 });
        }
        dist.mu_t
    } else {
        let normal = Normal::new(dist.mu_t, dist.sigma_t).map_err(|e| VibroError::config("mu_t", e.to_string()))?;
        let mut value = None;
        for _ in 0..MAX_REJECTION_DRAWS {
            let v = normal.sample(rng);
            if v >= 0.0 {
                value = Some(v);
                break;
            }
        }
        value.ok_or(VibroError::DegenerateDistribution {
            parameter: "membrane_tension",
            attempts: MAX_REJECTION_DRAWS,
        })?
    };
    let areal_density = positive_normal(rng, dist.mu_rho_h, dist.sigma_rho_h, "areal_density")?;
    let damping = if dist.k_low == dist.k_high {
        dist.k_low
    } else {
        Uniform::new_inclusive(dist.k_low, dist.k_high).sample(rng)
    };

    let impulses = rng.gen_range(dist.impulse_count.0..=dist.impulse_count.1);
    let window = Uniform::new(dist.impulse_window.0 * duration, dist.impulse_window.1 * duration);
    let mut impulse_times: Vec<f64> = Vec::with_capacity(impulses);
    while impulse_times.len() < impulses {
        let t = window.sample(rng);
        if t < duration && !impulse_times.contains(&t) {
            impulse_times.push(t);
        }
    }
    impulse_times.sort_by(f64::total_cmp);
    let (alo, ahi) = dist.impulse_amplitude;
    let impulse_amplitudes = (0..impulses)
        .map(|_| if alo == ahi { alo } else { rng.gen_range(alo..=ahi) })
        .collect();

    let scenario = PlateScenario {
        flexural_rigidity,
        membrane_tension,
        areal_density,
        damping,
        impulse_times,
        impulse_amplitudes,
        mode_count: dist.mode_count,
        modal_wavenumbers: dist.wavenumbers(),
    };
    scenario.validate(duration)?;
    Ok(scenario)
}
