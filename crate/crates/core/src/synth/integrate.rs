//! Modal reduction of the plate equation and fixed-step RK4 integration.
//!
//! Each spatial mode k_n turns the plate equation into an independent
//! damped oscillator
//!
//! ```text
//! q'' + (K/ρh) q' + ((D k⁴ + T k²)/ρh) q = (gain/ρh) Σ a_j δ(t - t_j)
//! ```
//!
//! The delta forcing is applied as an exact velocity jump at each impulse
//! instant, so the impulse energy does not depend on the step size.

use serde::{Deserialize, Serialize};

use super::scenario::PlateScenario;
use crate::error::{Result, VibroError};

/// One reduced oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    /// Undamped natural frequency, rad/s.
    pub omega: f64,
    /// Viscous damping per unit mass, 1/s.
    pub damping: f64,
    /// Velocity jump per unit impulse, 1/kg·m².
    pub gain: f64,
}

impl Mode {
    pub fn damping_ratio(&self) -> f64 {
        self.damping / (2.0 * self.omega)
    }
}

/// An impulse of strength `amplitude` N·s at `time` seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Impulse {
    pub time: f64,
    pub amplitude: f64,
}

/// Participation of mode `n` (1-based) at the sensor.
pub fn modal_participation(n: usize) -> f64 {
    1.0 / n as f64
}

/// Reduces a scenario to one oscillator per wavenumber.
pub fn modal_reduction(s: &PlateScenario) -> Result<Vec<Mode>> {
    if !(s.areal_density > 0.0) {
        return Err(VibroError::InvalidScenario(format!("areal density must be > 0, got {}", s.areal_density)));
    }
    if s.modal_wavenumbers.is_empty() {
        return Err(VibroError::InvalidScenario("no modal wavenumbers".into()));
    }
    s.modal_wavenumbers
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let k2 = k * k;
            let stiffness = (s.flexural_rigidity * k2 * k2 + s.membrane_tension * k2) / s.areal_density;
            if !(stiffness > 0.0) || !stiffness.is_finite() {
                return Err(VibroError::InvalidScenario(format!(
                    "mode {} has non-positive stiffness {stiffness}",
                    i + 1
                )));
            }
            Ok(Mode {
                omega: stiffness.sqrt(),
                damping: s.damping / s.areal_density,
                gain: modal_participation(i + 1) / s.areal_density,
            })
        })
        .collect()
}

pub fn scenario_impulses(s: &PlateScenario) -> Vec<Impulse> {
    s.impulse_times
        .iter()
        .zip(&s.impulse_amplitudes)
        .map(|(&time, &amplitude)| Impulse { time, amplitude })
        .collect()
}

/// Sampling grid for the integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    /// Output length.
    pub samples: usize,
    /// Output sample interval, seconds.
    pub sample_interval: f64,
    /// RK4 steps per output sample.
    pub substeps: usize,
}

impl TimeGrid {
    pub fn new(samples: usize, sample_interval: f64) -> Self {
        Self { samples, sample_interval, substeps: 4 }
    }

    pub fn duration(&self) -> f64 {
        self.samples as f64 * self.sample_interval
    }

    fn validate(&self) -> Result<()> {
        if !(self.sample_interval > 0.0) || !self.sample_interval.is_finite() {
            return Err(VibroError::InvalidArgument(format!("dt must be > 0, got {}", self.sample_interval)));
        }
        if self.substeps == 0 {
            return Err(VibroError::InvalidArgument("substeps must be >= 1".into()));
        }
        Ok(())
    }
}

#[inline]
fn rk4_step(mode: &Mode, q: f64, v: f64, h: f64) -> (f64, f64) {
    let w2 = mode.omega * mode.omega;
    let c = mode.damping;
    let acc = |q: f64, v: f64| -c * v - w2 * q;
    let (k1q, k1v) = (v, acc(q, v));
    let (k2q, k2v) = (v + 0.5 * h * k1v, acc(q + 0.5 * h * k1q, v + 0.5 * h * k1v));
    let (k3q, k3v) = (v + 0.5 * h * k2v, acc(q + 0.5 * h * k2q, v + 0.5 * h * k2v));
    let (k4q, k4v) = (v + h * k3v, acc(q + h * k3q, v + h * k3v));
    (
        q + h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q),
        v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    )
}

/// Integrates one mode and returns `(displacement, velocity)` at every
/// output sample. Impulses must be sorted by time.
///
/// The RK4 step grid is fixed. An impulse landing inside a step contributes
/// the RK4-propagated free response of its velocity jump over the remainder
/// of that step, which keeps the whole map linear in the impulse train.
pub fn simulate_mode(mode: &Mode, impulses: &[Impulse], grid: &TimeGrid, mode_index: usize) -> Result<Vec<(f64, f64)>> {
    grid.validate()?;
    let h = grid.sample_interval / grid.substeps as f64;
    let mut out = Vec::with_capacity(grid.samples);
    let (mut q, mut v) = (0.0_f64, 0.0_f64);
    let mut next = 0;
    let total_steps = grid.samples.saturating_sub(1) * grid.substeps;

    for s in 0..=total_steps {
        let t_a = s as f64 * h;
        while next < impulses.len() && impulses[next].time <= t_a {
            v += mode.gain * impulses[next].amplitude;
            next += 1;
        }
        if s % grid.substeps == 0 {
            if !q.is_finite() || !v.is_finite() {
                return Err(VibroError::Integration { mode: mode_index, step: s });
            }
            out.push((q, v));
        }
        if s == total_steps {
            break;
        }
        let t_b = (s + 1) as f64 * h;
        let (mut nq, mut nv) = rk4_step(mode, q, v, h);
        while next < impulses.len() && impulses[next].time < t_b {
            let imp = impulses[next];
            let (jq, jv) = rk4_step(mode, 0.0, mode.gain * imp.amplitude, t_b - imp.time);
            nq += jq;
            nv += jv;
            next += 1;
        }
        q = nq;
        v = nv;
    }
    Ok(out)
}

/// Superposes the impulse responses of all modes, unnormalized.
pub fn integrate_response(modes: &[Mode], impulses: &[Impulse], grid: &TimeGrid) -> Result<Vec<f64>> {
    if modes.is_empty() {
        return Err(VibroError::InvalidArgument("at least one mode is required".into()));
    }
    let duration = grid.duration();
    if let Some(bad) = impulses.iter().find(|i| !(i.time >= 0.0 && i.time < duration)) {
        return Err(VibroError::InvalidArgument(format!("impulse at {} outside [0, {duration})", bad.time)));
    }
    let mut sorted = impulses.to_vec();
    sorted.sort_by(|a, b| a.time.total_cmp(&b.time));
    let mut w = vec![0.0; grid.samples];
    for (i, mode) in modes.iter().enumerate() {
        let states = simulate_mode(mode, &sorted, grid, i)?;
        for (acc, (q, _)) in w.iter_mut().zip(states) {
            *acc += q;
        }
    }
    Ok(w)
}

/// Clean displacement for one scenario, unnormalized.
pub fn scenario_response(s: &PlateScenario, grid: &TimeGrid) -> Result<Vec<f64>> {
    s.validate(grid.duration())?;
    integrate_response(&modal_reduction(s)?, &scenario_impulses(s), grid)
}

/// Scales to unit peak magnitude; all-zero input is returned unchanged.
pub fn normalize_peak(w: &mut [f64]) {
    let peak = w.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if peak > 0.0 {
        w.iter_mut().for_each(|x| *x /= peak);
    }
}
