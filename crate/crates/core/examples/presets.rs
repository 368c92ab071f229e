//! Runs each benchmark preset for a handful of seeds and prints the best
//! validation accuracy per seed.
//!
//! ```text
//! cargo run --release -p pinvnet --example presets -- [preset] [seeds] [wbc-file]
//! ```

use std::path::PathBuf;
use std::time::Instant;

use pinvnet::presets::ExperimentPreset;
use pinvnet::{datasets, trainer};

fn main() -> pinvnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let which = args.next();
    let seeds: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let wbc = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data/breast-cancer-wisconsin.data"));

    let presets: Vec<ExperimentPreset> = match which.as_deref() {
        None | Some("all") => ExperimentPreset::ALL.to_vec(),
        Some(name) => vec![name.parse()?],
    };
    for preset in presets {
        for seed in 0..seeds {
            let start = Instant::now();
            let data = preset.dataset(seed, Some(&wbc))?;
            let config = preset.config(seed);
            let split = datasets::split(&data, config.validation_fraction, seed)?;
            let run = trainer::train(&split, &config)?;
            let best = trainer::best_epoch(&run.history)?;
            let last = run.history.last().expect("non-empty");
            println!(
                "{preset:8} seed {seed}: best val_acc {:.4} @ epoch {:4}, final val_acc {:.4} train_mse {:.4e} ({:.1?})",
                best.val_accuracy,
                best.epoch,
                last.val_accuracy,
                last.train_mse,
                start.elapsed()
            );
        }
    }
    Ok(())
}
