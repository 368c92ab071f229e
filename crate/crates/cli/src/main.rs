//! `pinvnet` command-line interface.

mod commands;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "pinvnet", version, about = "Pseudoinverse-trained feedforward networks")]
struct Cli {
    /// Seed for data generation, splitting, initialization and shuffling.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output path (file for generate/plot, directory for train).
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic dataset as `x0,...,label` CSV.
    Generate {
        /// One of: spirals, circles, xor.
        dataset: String,
        /// Points per class (spirals, circles) or total points (xor).
        #[arg(long)]
        count: Option<usize>,
        /// Gaussian noise std added to every coordinate (spirals, circles).
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        /// Inner circle radius (circles).
        #[arg(long, default_value_t = pinvnet::datasets::CIRCLE_INNER_FACTOR)]
        inner_factor: f64,
    },
    /// Train a preset (spirals, circles, xor, wbc) or a JSON config file.
    Train {
        preset_or_config: String,
        /// Dataset file: UCI breast-cancer file for `wbc`, or any supported
        /// dataset file for a JSON config.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Trainer: pinv (pseudoinverse) or gd (gradient descent).
        #[arg(long)]
        trainer: Option<String>,
        #[arg(long)]
        activation: Option<String>,
        #[arg(long)]
        epochs: Option<usize>,
        #[arg(long)]
        learning_rate: Option<f64>,
    },
    /// Print MSE and accuracy of a model on a dataset as JSON.
    Eval { model: PathBuf, dataset: PathBuf },
    /// Render an SVG scatter plus a decision-grid CSV for a 2-D dataset.
    Plot {
        model: PathBuf,
        dataset: PathBuf,
        #[arg(long, default_value_t = 200)]
        grid_steps: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate {
            dataset,
            count,
            noise,
            inner_factor,
        } => commands::generate(&dataset, cli.out, cli.seed.unwrap_or(0), count, noise, inner_factor),
        Command::Train {
            preset_or_config,
            data,
            trainer,
            activation,
            epochs,
            learning_rate,
        } => commands::train(commands::TrainArgs {
            target: preset_or_config,
            data,
            seed: cli.seed,
            out_dir: cli.out,
            trainer,
            activation,
            epochs,
            learning_rate,
        }),
        Command::Eval { model, dataset } => commands::eval(&model, &dataset),
        Command::Plot {
            model,
            dataset,
            grid_steps,
        } => commands::plot(&model, &dataset, cli.out, grid_steps),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
