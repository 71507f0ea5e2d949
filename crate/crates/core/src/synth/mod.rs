//! Synthetic footstep-induced plate vibrations.
//!
//! A record superposes a few randomly drawn plate scenarios, each reduced
//! to a handful of damped modal oscillators and driven by an impulse train,
//! then adds independent Gaussian noise per sensor channel.

mod dataset;
mod integrate;
mod scenario;

pub use dataset::{
    generate_dataset, inject_noise, load_dataset, manifest_path, read_all, synthesize_clean, synthesize_record,
    DatasetConfig, DatasetManifest, DatasetReader, DatasetWriter, SignalRecord, FORMAT_VERSION, MAGIC,
};
pub use integrate::{
    integrate_response, modal_participation, modal_reduction, normalize_peak, scenario_impulses, scenario_response,
    simulate_mode, Impulse, Mode, TimeGrid,
};
pub use scenario::{sample_scenario, scenario_digest, PlateScenario, ScenarioDistribution};
