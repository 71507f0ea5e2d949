use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vibro_core::bench::{cmd_compare, cmd_denoise, cmd_generate, cmd_train, DenoiseMethod, ExperimentConfig};
use vibro_core::VibroError;

#[derive(Parser)]
#[command(name = "vibro", version, about = "Structural-vibration denoising benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment config (JSON); defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory, overriding the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Global seed; also sets the dataset and training seeds.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize the dataset.
    Generate {
        #[command(flatten)]
        common: Common,
    },
    /// Train the ensemble over the loss-weight grid.
    Train {
        #[command(flatten)]
        common: Common,
        /// Dataset payload (default: <out>/dataset.vibd).
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Denoise every record of a dataset with one method.
    Denoise {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        data: Option<PathBuf>,
        /// Model checkpoint (default: <out>/model.ckpt).
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// ensemble, tv, wiener, savgol or wavelet_shrinkage.
        #[arg(long)]
        method: String,
        /// Baseline parameters as a JSON object, e.g. '{"weight": 0.3}'.
        #[arg(long)]
        params: Option<String>,
    },
    /// Evaluate all methods on the test split at every noise level.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
}

fn load_config(common: &Common) -> Result<ExperimentConfig, VibroError> {
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(out) = &common.out {
        cfg.output_dir = out.clone();
    }
    if let Some(seed) = common.seed {
        cfg.set_seed(seed);
    }
    Ok(cfg)
}

fn init_threads() -> Result<(), VibroError> {
    let Ok(value) = std::env::var("VIBRO_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| VibroError::config("VIBRO_THREADS", format!("expected a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| VibroError::InvalidArgument(e.to_string()))
}

fn run(cli: Cli) -> Result<(), VibroError> {
    init_threads()?;
    match cli.command {
        Command::Generate { common } => {
            let cfg = load_config(&common)?;
            let s = cmd_generate(&cfg)?;
            println!(
                "generated {} records x {} samples x {} channels ({}) -> {}",
                s.manifest.record_count,
                s.manifest.series_length,
                s.manifest.channel_count,
                s.manifest.shape,
                s.path.display()
            );
            println!("sha256 {}", s.sha256);
        }
        Command::Train { common, data } => {
            let cfg = load_config(&common)?;
            let data = data.unwrap_or_else(|| cfg.dataset_file());
            let s = cmd_train(&cfg, &data)?;
            for r in &s.runs {
                let mark = if r.index == s.selected { "*" } else { " " };
                println!("{mark} weights {}: validation {:.6e} at iteration {}", r.index, r.best_validation, r.best_iteration);
            }
            println!("checkpoint {}", s.checkpoint.display());
        }
        Command::Denoise { common, data, checkpoint, method, params } => {
            let cfg = load_config(&common)?;
            let method = DenoiseMethod::parse(&method, params.as_deref())?;
            let data = data.unwrap_or_else(|| cfg.dataset_file());
            let checkpoint = checkpoint.unwrap_or_else(|| cfg.checkpoint_file());
            let tag = match &method {
                DenoiseMethod::Ensemble => "ensemble",
                DenoiseMethod::Baseline(b) => b.method(),
            };
            std::fs::create_dir_all(&cfg.output_dir).map_err(|e| VibroError::io(&cfg.output_dir, e))?;
            let out = cfg.output_dir.join(format!("denoised_{tag}.vibd"));
            let path = cmd_denoise(&data, &method, Some(&checkpoint), &out)?;
            println!("wrote {}", path.display());
        }
        Command::Compare { common, data, checkpoint } => {
            let cfg = load_config(&common)?;
            let data = data.unwrap_or_else(|| cfg.dataset_file());
            let checkpoint = checkpoint.unwrap_or_else(|| cfg.checkpoint_file());
            let out = cmd_compare(&cfg, &data, &checkpoint)?;
            out.report.write_csv(std::io::stdout().lock())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 3 })
        }
    }
}
